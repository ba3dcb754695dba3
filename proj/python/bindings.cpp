// Python bindings for the main operations: field arithmetic, subspace
// algebra, network queries, dissemination runs, topology inference,
// adversary localization, and overlay sessions. Rich structures cross the
// boundary as JSON-compatible dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncsim/byzantine.hpp"
#include "ncsim/counting.hpp"
#include "ncsim/inference.hpp"
#include "ncsim/lemmas.hpp"
#include "ncsim/overlay.hpp"
#include "ncsim/serialize.hpp"
#include "ncsim/transfer.hpp"

namespace py = pybind11;
using namespace ncsim;

namespace {

Mat mat_from_rows(const Field& f, const std::vector<std::vector<felem>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Mat m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw BadConfig("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<felem>> rows_of(const Mat& m) {
  std::vector<std::vector<felem>> rows(m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) rows[r].assign(m.row(r).begin(), m.row(r).end());
  return rows;
}

Network net_from_json_str(const std::string& s, bool check_rates) {
  return Network::from_json(nlohmann::json::parse(s), {.check_rates = check_rates});
}

RunConfig make_run_config(const std::string& net_json, int n, std::uint32_t q,
                          std::uint64_t seed, int horizon, const std::string& policy,
                          int waiting_dimension) {
  RunConfig cfg;
  cfg.net = net_from_json_str(net_json, false);
  cfg.n = n;
  cfg.field = Field::make(q);
  cfg.seed = seed;
  cfg.horizon = horizon;
  cfg.waiting_dimension = waiting_dimension;
  if (policy == "paper_default")
    cfg.policy = WaitingPolicy::PaperDefault;
  else if (policy == "fixed_dimension")
    cfg.policy = WaitingPolicy::FixedDimension;
  else if (policy == "none")
    cfg.policy = WaitingPolicy::None;
  else
    throw BadConfig("unknown waiting policy: " + policy);
  return cfg;
}

py::dict steady_dict(const SteadyState& ss) {
  py::dict d;
  d["attained"] = ss.attained;
  d["t_s"] = ss.t_s;
  d["t_full"] = ss.t_full;
  d["at_rate_fraction"] = ss.at_rate_fraction();
  return d;
}

}  // namespace

PYBIND11_MODULE(_ncsim, m) {
  m.doc() = "randomized network coding subspace toolkit";

  py::register_exception<SimError>(m, "SimError");

  py::class_<Field>(m, "Field")
      .def(py::init([](std::uint32_t q, std::uint32_t poly) { return Field::make(q, poly); }),
           py::arg("q"), py::arg("reduction_poly") = 0)
      .def_property_readonly("q", &Field::q)
      .def_property_readonly("characteristic", &Field::characteristic)
      .def_property_readonly("reduction_poly", &Field::reduction_poly)
      .def("add", &Field::add)
      .def("sub", &Field::sub)
      .def("mul", &Field::mul)
      .def("div", &Field::div)
      .def("inv", &Field::inv)
      .def("pow", &Field::pow)
      .def("sample", [](const Field& f, std::uint64_t seed, int count) {
        Rng rng(seed);
        std::vector<felem> out;
        for (int i = 0; i < count; ++i) out.push_back(f.sample(rng));
        return out;
      });

  py::class_<RowSpace>(m, "RowSpace")
      .def(py::init([](const Field& f, std::size_t ambient) { return RowSpace(f, ambient); }))
      .def_static("span",
                  [](const Field& f, const std::vector<std::vector<felem>>& rows) {
                    return RowSpace::span(mat_from_rows(f, rows));
                  })
      .def_property_readonly("dim", [](const RowSpace& s) { return s.dim(); })
      .def_property_readonly("ambient", [](const RowSpace& s) { return s.ambient(); })
      .def_property_readonly("basis", [](const RowSpace& s) { return rows_of(s.basis()); })
      .def("contains_vector",
           [](const RowSpace& s, const std::vector<felem>& v) { return s.contains(v); })
      .def("is_subspace_of", [](const RowSpace& a, const RowSpace& b) { return b.contains(a); })
      .def("sum", &RowSpace::sum)
      .def("intersect", &RowSpace::intersect)
      .def("sample",
           [](const RowSpace& s, std::size_t count, std::uint64_t seed) {
             Rng rng(seed);
             return rows_of(s.sample(count, rng));
           })
      .def("__eq__", [](const RowSpace& a, const RowSpace& b) { return a == b; });

  m.def("distance", &subspace_distance, "subspace distance d_S");
  m.def("set_distance", [](const std::vector<RowSpace>& a, const std::vector<RowSpace>& b) {
    return set_distance(a, b).value();
  });
  m.def("gaussian_binomial", [](unsigned n, unsigned i, std::uint32_t q) {
    return py::cast(gaussian_binomial(n, i, q).get_str());
  });
  m.def("subspace_bits", &subspace_bits);

  py::class_<Network>(m, "Network")
      .def_static("from_json",
                  [](const std::string& j, bool check_rates) {
                    return net_from_json_str(j, check_rates);
                  },
                  py::arg("json"), py::arg("check_rates") = true)
      .def_property_readonly("nodes", &Network::node_count)
      .def_property_readonly("source", &Network::source)
      .def("to_json", [](const Network& n) { return n.to_json().dump(); })
      .def("min_cut", [](const Network& n, int v) { return n.min_cut(v); })
      .def("longest_path", &Network::longest_path)
      .def("levels", &Network::levels)
      .def("ancestors_at", &Network::ancestors_at)
      .def("identifiability_holds",
           [](const Network& n) { return n.identifiability_check().all_hold; });

  m.def("make_line", &make_line, py::arg("nodes"), py::arg("rate") = 1);
  m.def("make_random_tree", [](int depth, int branching, int rate, std::uint64_t seed) {
    Rng rng(seed);
    return make_random_tree(depth, branching, rate, rng);
  });
  m.def("make_random_dag", [](int nodes, double density, int max_rate, std::uint64_t seed) {
    Rng rng(seed);
    return make_random_dag(nodes, density, max_rate, rng);
  });

  py::class_<Trace>(m, "Trace")
      .def_property_readonly("slots", &Trace::slots)
      .def_property_readonly("complete", &Trace::complete)
      .def("dim", &Trace::dim)
      .def("innovation", &Trace::innovation)
      .def("waiting_time", &Trace::waiting_time)
      .def("snapshot_json", [](const Trace& t, int slot) { return t.snapshot(slot).to_json().dump(); })
      .def("steady_state", [](const Trace& t) { return steady_dict(steady_state(t)); });

  m.def("run",
        [](const std::string& net_json, int n, std::uint32_t q, std::uint64_t seed, int horizon,
           const std::string& policy, int waiting_dimension) {
          return run(make_run_config(net_json, n, q, seed, horizon, policy, waiting_dimension));
        },
        py::arg("net_json"), py::arg("n"), py::arg("q") = 256, py::arg("seed") = 1,
        py::arg("horizon") = 400, py::arg("policy") = "paper_default",
        py::arg("waiting_dimension") = 2);

  m.def("transfer_rank",
        [](const Trace& tr, int v, int t) {
          TransferOracle oracle(tr);
          return int(RowSpace::span(oracle.stacked(v, t)).dim());
        },
        "rank of the stacked transfer matrices H_Sv(1..t)");

  m.def("infer_tree_json", [](const std::string& snapshot_json) {
    const SnapshotSet s = SnapshotSet::from_json(nlohmann::json::parse(snapshot_json));
    return infer_tree(TreeInput::from_snapshot(s)).to_graph_json().dump();
  });
  m.def("infer_general_json",
        [](const std::string& snap_t, const std::string& snap_t1) {
          const SnapshotSet a = SnapshotSet::from_json(nlohmann::json::parse(snap_t));
          const SnapshotSet b = SnapshotSet::from_json(nlohmann::json::parse(snap_t1));
          return infer_general(a, b).to_graph_json().dump();
        });
  m.def("communication_cost",
        [](const std::string& net_json, int n, std::uint32_t q) {
          const CostReport r = communication_cost(net_from_json_str(net_json, false), n, q);
          py::dict d;
          d["bits_total"] = r.bits_total;
          d["bits_per_node"] = r.bits_per_node;
          d["kilobytes_per_node"] = r.kilobytes_per_node;
          return d;
        });

  m.def("locate_single_adversary",
        [](const std::string& net_json, int attacker, int delta, const std::string& strategy,
           int n, std::uint32_t q, std::uint64_t seed) {
          const Network net = net_from_json_str(net_json, false);
          Attacker atk;
          atk.node = attacker;
          atk.delta = delta;
          atk.corrupted_edges = net.out_edges(attacker);
          if (strategy == "truthful")
            atk.strategy = ReportStrategy::Truthful;
          else if (strategy == "blame_one_incoming") {
            atk.strategy = ReportStrategy::BlameOneIncoming;
            atk.blame_parent = net.parents(attacker).front();
          } else if (strategy == "claim_clean")
            atk.strategy = ReportStrategy::ClaimClean;
          else if (strategy == "corrupt_one_outgoing") {
            atk.strategy = ReportStrategy::CorruptOneOutgoing;
            atk.corrupted_edges = {net.out_edges(attacker).front()};
          } else
            throw BadConfig("unknown strategy: " + strategy);
          AdversaryConfig adv;
          adv.attackers.push_back(atk);
          RunConfig cfg;
          cfg.net = net;
          cfg.n = n;
          cfg.field = Field::make(q);
          cfg.seed = seed;
          cfg.horizon = n + 2 * net.longest_path() + 8;
          const Trace tr = run_adversarial(cfg, adv);
          const RowSpace pi_s = source_space(cfg.field, n, n + delta);
          const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
          const auto verdict = locate_single(net, split_edges(net, rep, pi_s));
          return verdict.sets.empty() ? std::vector<int>{} : verdict.sets[0].nodes;
        },
        py::arg("net_json"), py::arg("attacker"), py::arg("delta") = 1,
        py::arg("strategy") = "truthful", py::arg("n") = 12, py::arg("q") = 256,
        py::arg("seed") = 1);

  py::class_<SessionMetrics>(m, "SessionMetrics")
      .def_property_readonly("terminated", [](const SessionMetrics& s) { return s.terminated; })
      .def_property_readonly("slots", [](const SessionMetrics& s) { return s.slots; })
      .def_property_readonly("avg_collection_time",
                             [](const SessionMetrics& s) { return s.avg_collection_time; })
      .def_property_readonly("total_rewirings",
                             [](const SessionMetrics& s) { return s.total_rewirings; })
      .def("to_json", [](const SessionMetrics& s) { return s.to_json().dump(); });

  m.def("run_session",
        [](const std::vector<int>& cluster_sizes, const std::string& algo, int n,
           std::uint32_t q, std::uint64_t seed) {
          SessionConfig cfg;
          cfg.topo.cluster_sizes = cluster_sizes;
          cfg.n = n;
          cfg.q = q;
          cfg.seed = seed;
          if (algo == "random")
            cfg.algo = RewireAlgo::Random;
          else if (algo == "algo1")
            cfg.algo = RewireAlgo::Algo1;
          else if (algo == "algo2")
            cfg.algo = RewireAlgo::Algo2;
          else if (algo == "algo3")
            cfg.algo = RewireAlgo::Algo3;
          else
            throw BadConfig("unknown algorithm: " + algo);
          return run_session(cfg);
        },
        py::arg("cluster_sizes"), py::arg("algo") = "random", py::arg("n") = 30,
        py::arg("q") = 256, py::arg("seed") = 1);

  m.def("verify_suites", [](std::uint32_t q, int trials, std::uint64_t seed) {
    py::list out;
    for (const auto& r : run_all_suites(q, trials, seed)) {
      py::dict d;
      d["name"] = r.name;
      d["trials"] = r.trials;
      d["observed"] = r.observed;
      d["bound"] = r.bound;
      d["pass"] = r.pass;
      out.append(std::move(d));
    }
    return out;
  });
}
