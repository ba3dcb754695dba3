// ncsim: randomized network coding subspace toolkit.
//
// Subcommands: disseminate, infer-topology, locate-adversary, p2p-sim,
// verify-lemmas, cost-report. All outputs are a pure function of the config
// and the master seed. Exit codes: 0 success, 1 validation/config error,
// 2 experiment assertion failure.

#include <filesystem>
#include <future>
#include <iostream>
#include <cmath>
#include <optional>

#include "CLI11.hpp"
#include "ncsim/byzantine.hpp"
#include "ncsim/inference.hpp"
#include "ncsim/lemmas.hpp"
#include "ncsim/overlay.hpp"
#include "ncsim/report.hpp"
#include "ncsim/serialize.hpp"
#include "ncsim/transfer.hpp"

using namespace ncsim;
namespace fs = std::filesystem;

namespace {

nlohmann::json load_json(const std::string& path) {
  return nlohmann::json::parse(read_file(path));
}

Network load_network(const std::string& path, bool check_rates = true) {
  return Network::from_json(load_json(path), {.check_rates = check_rates});
}

Network generate_network(const std::string& kind, std::uint64_t seed, int size, int depth,
                         int branching, double density, int rate) {
  Rng rng(Rng::derive_seed(seed, 0x47454Eull));
  if (kind == "line") return make_line(size, rate);
  if (kind == "random_tree") return make_random_tree(depth, branching, rate, rng);
  if (kind == "random_dag") return make_random_dag(size, density, rate, rng);
  throw BadConfig("unknown generator kind: " + kind);
}

struct OutPaths {
  fs::path dir;
  explicit OutPaths(const std::string& out) : dir(out) { fs::create_directories(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

// Parallel map over trial indices with deterministic result order.
template <typename F>
auto run_trials(int trials, int parallel, F&& fn) {
  using R = decltype(fn(0));
  std::vector<R> results(trials);
  if (parallel <= 1) {
    for (int i = 0; i < trials; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= trials) return;
      results[i] = fn(i);
    }
  };
  std::vector<std::future<void>> futs;
  for (int w = 0; w < parallel; ++w) futs.push_back(std::async(std::launch::async, worker));
  for (auto& f : futs) f.get();
  return results;
}

int cmd_disseminate(const std::string& config_path, const std::string& net_path,
                    const std::string& generate, std::uint64_t seed, int n, std::uint32_t q,
                    int horizon, const std::string& policy, int waiting_dim,
                    std::vector<int> snapshots, const std::string& out, bool binary_snapshots,
                    int gen_size) {
  std::string net_file = net_path, policy_name = policy;
  if (!config_path.empty()) {
    const nlohmann::json jc = load_json(config_path);
    n = jc.value("n", n);
    q = jc.value("q", q);
    seed = jc.value("seed", seed);
    horizon = jc.value("horizon", horizon);
    policy_name = jc.value("policy", policy_name);
    waiting_dim = jc.value("waiting_dimension", waiting_dim);
    if (jc.contains("snapshots")) snapshots = jc["snapshots"].get<std::vector<int>>();
    if (jc.contains("net_file")) net_file = jc["net_file"].get<std::string>();
  }
  RunConfig cfg;
  if (!config_path.empty() && load_json(config_path).contains("net"))
    cfg.net = Network::from_json(load_json(config_path)["net"], {.check_rates = false});
  else
    cfg.net = net_file.empty() ? generate_network(generate.empty() ? "line" : generate, seed,
                                                  gen_size, 3, 2, 0.35, 1)
                               : load_network(net_file, false);
  cfg.n = n;
  cfg.field = Field::make(q);
  cfg.seed = seed;
  cfg.horizon = horizon;
  cfg.waiting_dimension = waiting_dim;
  if (policy_name == "paper_default")
    cfg.policy = WaitingPolicy::PaperDefault;
  else if (policy_name == "fixed_dimension")
    cfg.policy = WaitingPolicy::FixedDimension;
  else if (policy_name == "none")
    cfg.policy = WaitingPolicy::None;
  else
    throw BadConfig("unknown waiting policy: " + policy_name);

  const Trace tr = run(cfg);
  const OutPaths paths(out);

  nlohmann::json meta = tr.dims_json();
  meta["net"] = cfg.net.to_json();
  meta["n"] = cfg.n;
  meta["q"] = q;
  meta["seed"] = seed;
  const SteadyState ss = steady_state(tr);
  meta["steady_state"] = {{"attained", ss.attained},
                          {"t_s", ss.t_s},
                          {"t_full", ss.t_full},
                          {"at_rate_fraction", ss.at_rate_fraction()}};
  write_file(paths.file("trace.json"), meta.dump(2) + "\n");

  CsvReport csv({"node", "slot", "dim", "innovation"});
  for (int v = 0; v < cfg.net.node_count(); ++v)
    for (int t = 0; t <= tr.slots(); ++t)
      csv.add_row({CsvReport::fmt(v), CsvReport::fmt(t), CsvReport::fmt(tr.dim(v, t)),
                   CsvReport::fmt(tr.innovation(v, t))});
  csv.write(paths.file("dims.csv"), paths.file("dims.json"));

  for (int t : snapshots) {
    const SnapshotSet snap = tr.snapshot(t);
    write_file(paths.file("snapshot_t" + std::to_string(t) + ".json"),
               snap.to_json().dump(2) + "\n");
    if (binary_snapshots) {
      const auto bytes = snapshot_to_binary(snap, cfg.field);
      write_file(paths.file("snapshot_t" + std::to_string(t) + ".bin"),
                 std::string(bytes.begin(), bytes.end()));
    }
  }
  std::cout << "disseminate: slots=" << tr.slots() << " complete=" << tr.complete()
            << " out=" << out << "\n";
  return 0;
}

int cmd_infer(const std::string& net_path, const std::string& snapshot_path,
              const std::string& snapshot_next_path, const std::string& ground_truth,
              std::uint64_t seed, std::uint32_t q, const std::string& mode,
              const std::string& out) {
  const OutPaths paths(out);
  std::optional<SnapshotSet> at_t, at_t1;
  Network truth;
  bool have_truth = false;

  if (!snapshot_path.empty()) {
    at_t = SnapshotSet::from_json(load_json(snapshot_path));
    if (!snapshot_next_path.empty())
      at_t1 = SnapshotSet::from_json(load_json(snapshot_next_path));
  } else if (!net_path.empty()) {
    // end-to-end: run a dissemination on the given network first
    truth = load_network(net_path, false);
    have_truth = true;
    RunConfig cfg;
    cfg.net = truth;
    const int D = truth.longest_path();
    cfg.n = 2 * D + 3;
    cfg.field = Field::make(q);
    cfg.seed = seed;
    cfg.horizon = 300;
    const Trace tr = run(cfg);
    at_t = tr.snapshot(2 * D);
    at_t1 = tr.snapshot(2 * D + 1);
  } else {
    throw BadConfig("need --snapshot or --net");
  }
  if (!ground_truth.empty()) {
    truth = load_network(ground_truth, false);
    have_truth = true;
  }

  TopologyEstimate est;
  nlohmann::json result;
  try {
    if (mode == "tree")
      est = infer_tree(TreeInput::from_snapshot(*at_t));
    else if (mode == "general") {
      if (!at_t1) throw BadConfig("general inference needs two consecutive snapshots");
      est = infer_general(*at_t, *at_t1);
    } else
      throw BadConfig("unknown inference mode: " + mode);
  } catch (const DistinctnessViolated& e) {
    result["verdict"] = "distinctness_violated";
    result["pairs"] = nlohmann::json::array();
    for (auto [u, v] : e.pairs) result["pairs"].push_back({u, v});
    write_file(paths.file("estimate.json"), result.dump(2) + "\n");
    std::cout << "infer-topology: distinctness violated on " << e.pairs.size() << " pair(s)\n";
    return 2;
  }

  result["verdict"] = est.all_unique() ? "unique" : "ambiguous";
  result["graph"] = est.to_graph_json();
  if (have_truth) {
    const auto [missing, spurious] = est.diff(truth);
    result["diff"] = {{"missing", missing.size()}, {"spurious", spurious.size()}};
    result["exact_match"] = missing.empty() && spurious.empty();
  }
  write_file(paths.file("estimate.json"), result.dump(2) + "\n");
  std::cout << "infer-topology: " << result["verdict"].get<std::string>();
  if (have_truth)
    std::cout << (result["exact_match"].get<bool>() ? " exact match" : " MISMATCH");
  std::cout << "\n";
  if (have_truth && !result["exact_match"].get<bool>()) return 2;
  return 0;
}

ReportStrategy parse_strategy(const std::string& s) {
  if (s == "truthful") return ReportStrategy::Truthful;
  if (s == "blame_one_incoming") return ReportStrategy::BlameOneIncoming;
  if (s == "claim_clean") return ReportStrategy::ClaimClean;
  if (s == "corrupt_one_outgoing") return ReportStrategy::CorruptOneOutgoing;
  throw BadConfig("unknown reporting strategy: " + s);
}

int cmd_locate(const std::string& net_path, const std::string& scenario_path,
               std::uint64_t seed, std::uint32_t q, int n, const std::string& out) {
  const Network net = load_network(net_path, false);
  const nlohmann::json scenario = load_json(scenario_path);
  AdversaryConfig adv;
  for (const auto& ja : scenario.at("attackers")) {
    Attacker a;
    a.node = ja.at("node").get<int>();
    a.delta = ja.value("delta", 1);
    a.strategy = parse_strategy(ja.value("strategy", std::string("truthful")));
    if (ja.contains("edges")) {
      for (const auto& je : ja["edges"]) {
        const int tail = je.at(0).get<int>(), head = je.at(1).get<int>();
        bool found = false;
        for (std::size_t ei = 0; ei < net.edges().size(); ++ei)
          if (net.edges()[ei].tail == tail && net.edges()[ei].head == head) {
            a.corrupted_edges.push_back(int(ei));
            found = true;
          }
        if (!found) throw BadConfig("scenario edge not in the network");
      }
    } else {
      a.corrupted_edges = net.out_edges(a.node);
    }
    if (ja.contains("blame_parent")) a.blame_parent = ja["blame_parent"].get<int>();
    if (ja.contains("activation_slot")) a.activation_slot = ja["activation_slot"].get<int>();
    adv.attackers.push_back(std::move(a));
  }

  RunConfig cfg;
  cfg.net = net;
  cfg.n = n > 0 ? n : 2 * net.longest_path() + 4;
  cfg.field = Field::make(q);
  cfg.seed = seed;
  cfg.horizon = cfg.n + 2 * net.longest_path() + 8;
  const Trace tr = run_adversarial(cfg, adv);
  const RowSpace pi_s = source_space(cfg.field, cfg.n, cfg.n + adv.total_delta());

  const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
  const EdgeSplit split = split_edges(net, rep, pi_s);

  auto verdict_json = [&](const LocatorVerdict& v) {
    nlohmann::json j;
    j["sets"] = nlohmann::json::array();
    for (const auto& s : v.sets) {
      const char* flag = s.flag == VerdictFlag::Exact
                             ? "exact"
                             : (s.flag == VerdictFlag::Pair ? "pair" : "parent_children");
      j["sets"].push_back({{"nodes", s.nodes}, {"flag", flag}, {"overlap", s.overlap}});
    }
    j["undetectable"] = v.undetectable;
    return j;
  };

  nlohmann::json result;
  result["corrupted_edges"] = split.corrupted;
  result["clean_edges"] = split.clean;
  try {
    result["single"] =
        adv.attackers.size() == 1 ? verdict_json(locate_single(net, split)) : nullptr;
  } catch (const NoCorruptionObserved&) {
    result["single"] = "no_corruption_observed";
  }
  try {
    result["splitting"] = verdict_json(locate_multiple_splitting(net, split));
  } catch (const NoCorruptionObserved&) {
    result["splitting"] = "no_corruption_observed";
  }
  result["subset_method"] = verdict_json(locate_subset_method(net, rep, pi_s));

  const OutPaths paths(out);
  write_file(paths.file("verdict.json"), result.dump(2) + "\n");
  std::cout << "locate-adversary: " << result["subset_method"]["sets"].size()
            << " ambiguity set(s), verdict written to " << out << "\n";
  return 0;
}

SessionConfig table1_session(int cluster3, RewireAlgo algo, int n, std::uint32_t q,
                             std::uint64_t seed) {
  SessionConfig cfg;
  cfg.topo.cluster_sizes = {15, 15, cluster3};
  cfg.algo = algo;
  cfg.n = n;
  cfg.q = q;
  cfg.seed = seed;
  cfg.horizon = 3000;
  return cfg;
}

int cmd_p2p(const std::string& config_path, bool table1, bool fig8, std::vector<int> rows,
            int trials, int n, std::uint32_t q, std::uint64_t seed, int parallel,
            std::string algo_name, const std::string& out) {
  SessionConfig base;
  if (!config_path.empty()) {
    const nlohmann::json jc = load_json(config_path);
    n = jc.value("n", n);
    q = jc.value("q", q);
    seed = jc.value("seed", seed);
    algo_name = jc.value("algo", algo_name);
    if (jc.contains("rows")) rows = jc["rows"].get<std::vector<int>>();
    base.topo.bottleneck_links = jc.value("bottleneck_links", base.topo.bottleneck_links);
    base.topo.shared_bottleneck_capacity =
        jc.value("bottleneck_capacity", base.topo.shared_bottleneck_capacity);
    base.rewire_prob = jc.value("rewire_prob", base.rewire_prob);
    base.k_noninnovative = jc.value("k", base.k_noninnovative);
    base.ratio_threshold = jc.value("ratio_threshold", base.ratio_threshold);
    base.vote_threshold = jc.value("vote_threshold", base.vote_threshold);
    base.vote_threshold_algo3 = jc.value("vote_threshold_algo3", base.vote_threshold_algo3);
    base.cluster_radius = jc.value("cluster_radius", base.cluster_radius);
    base.waiting_dimension = jc.value("waiting_dimension", base.waiting_dimension);
  }
  const OutPaths paths(out);
  if (rows.empty()) rows = {20, 40, 70, 100, 150, 250};
  std::vector<RewireAlgo> algos;
  if (algo_name == "all")
    algos = {RewireAlgo::Random, RewireAlgo::Algo1, RewireAlgo::Algo2, RewireAlgo::Algo3};
  else if (algo_name == "random")
    algos = {RewireAlgo::Random};
  else if (algo_name == "algo1")
    algos = {RewireAlgo::Algo1};
  else if (algo_name == "algo2")
    algos = {RewireAlgo::Algo2};
  else if (algo_name == "algo3")
    algos = {RewireAlgo::Algo3};
  else
    throw BadConfig("unknown algorithm: " + algo_name);
  static const char* algo_names[] = {"random", "algo1", "algo2", "algo3"};

  if (!table1 && !fig8) table1 = true;

  CsvReport csv({"topology", "algorithm", "seed", "avg_collection_time", "total_rewirings",
                 "terminated"});
  struct Cell {
    double time_mean = 0;
    double rewire_mean = 0;
    double time_var = 0;
  };
  std::map<std::pair<int, int>, Cell> cells;

  for (int row : rows) {
    for (RewireAlgo algo : algos) {
      const auto results = run_trials(trials, parallel, [&](int i) {
        SessionConfig cfg = base;
        cfg.topo.cluster_sizes = {15, 15, row};
        cfg.algo = algo;
        cfg.n = n;
        cfg.q = q;
        cfg.seed = Rng::derive_seed(seed, 1000 * row + i);
        cfg.horizon = 3000;
        return run_session(cfg);
      });
      Cell cell;
      for (int i = 0; i < trials; ++i) {
        const auto& m = results[i];
        csv.add_row({"15-15-" + std::to_string(row), algo_names[int(algo)],
                     CsvReport::fmt(i), CsvReport::fmt(m.avg_collection_time),
                     CsvReport::fmt((long long)m.total_rewirings),
                     m.terminated ? "1" : "0"});
        cell.time_mean += m.avg_collection_time / trials;
        cell.rewire_mean += double(m.total_rewirings) / trials;
      }
      for (int i = 0; i < trials; ++i) {
        const auto& m = results[i];
        cell.time_var += (m.avg_collection_time - cell.time_mean) *
                         (m.avg_collection_time - cell.time_mean) / std::max(1, trials - 1);
      }
      cells[{row, int(algo)}] = cell;
    }
  }
  csv.write(paths.file("p2p_runs.csv"), paths.file("p2p_runs.json"));

  CsvReport agg(
      {"topology", "algorithm", "avg_collection_time", "stddev_collection_time", "avg_rewirings"});
  for (int row : rows)
    for (RewireAlgo algo : algos)
      agg.add_row({"15-15-" + std::to_string(row), algo_names[int(algo)],
                   CsvReport::fmt(cells[{row, int(algo)}].time_mean),
                   CsvReport::fmt(std::sqrt(cells[{row, int(algo)}].time_var)),
                   CsvReport::fmt(cells[{row, int(algo)}].rewire_mean)});
  agg.write(paths.file("p2p_summary.csv"), paths.file("p2p_summary.json"));

  // wide per-row layout mirroring the published table
  if (algos.size() == 4) {
    CsvReport wide({"topology", "random_time", "random_rewirings", "algo1_time",
                    "algo1_rewirings", "algo2_time", "algo2_rewirings", "algo3_time",
                    "algo3_rewirings"});
    for (int row : rows) {
      std::vector<std::string> cellsrow{"15-15-" + std::to_string(row)};
      for (int a = 0; a < 4; ++a) {
        cellsrow.push_back(CsvReport::fmt(cells[{row, a}].time_mean));
        cellsrow.push_back(CsvReport::fmt(cells[{row, a}].rewire_mean));
      }
      wide.add_row(cellsrow);
    }
    wide.write(paths.file("table1.csv"), paths.file("table1.json"));
  }
  std::cout << "p2p-sim: wrote " << paths.file("p2p_summary.csv") << "\n";
  return 0;
}

int cmd_verify_lemmas(std::uint32_t q, int trials, std::uint64_t seed, const std::string& out) {
  const auto results = run_all_suites(q, trials, seed);
  CsvReport csv({"suite", "trials", "observed", "bound", "direction", "pass"});
  bool all_pass = true;
  for (const auto& r : results) {
    csv.add_row({r.name, CsvReport::fmt((long long)r.trials), CsvReport::fmt(r.observed),
                 CsvReport::fmt(r.bound), r.upper ? "<=" : ">=", r.pass ? "1" : "0"});
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": observed "
              << CsvReport::fmt(r.observed) << (r.upper ? " <= " : " >= ")
              << CsvReport::fmt(r.bound) << "\n";
    all_pass &= r.pass;
  }
  if (!out.empty()) {
    const OutPaths paths(out);
    csv.write(paths.file("lemmas.csv"), paths.file("lemmas.json"));
  }
  return all_pass ? 0 : 2;
}

int cmd_cost(const std::string& net_path, int n, std::uint32_t q, double beta2, int cmax,
             int depth, int delta_in, int nodes, const std::string& out) {
  CostReport rep;
  nlohmann::json j;
  if (!net_path.empty()) {
    const Network net = load_network(net_path, false);
    rep = communication_cost(net, n, q);
    j["mode"] = "network";
    j["n"] = n;
  } else {
    rep = communication_cost_params(beta2, cmax, depth, delta_in, q, nodes);
    j["mode"] = "params";
    j["beta2"] = beta2;
    j["c_max"] = cmax;
    j["depth"] = depth;
    j["max_in_degree"] = delta_in;
  }
  j["q"] = q;
  j["bits_total"] = rep.bits_total;
  j["bits_per_node"] = rep.bits_per_node;
  j["kilobytes_per_node"] = rep.kilobytes_per_node;
  std::cout << "cost-report: " << CsvReport::fmt(rep.bits_per_node) << " bits/node ≈ "
            << int(rep.kilobytes_per_node) << " kilobytes/node; total "
            << CsvReport::fmt(rep.bits_total) << " bits\n";
  if (!out.empty()) {
    const OutPaths paths(out);
    write_file(paths.file("cost.json"), j.dump(2) + "\n");
    CsvReport csv({"bits_total", "bits_per_node", "kilobytes_per_node"});
    csv.add_row({CsvReport::fmt(rep.bits_total), CsvReport::fmt(rep.bits_per_node),
                 CsvReport::fmt(rep.kilobytes_per_node)});
    csv.write(paths.file("cost.csv"), "");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomized network coding subspace toolkit"};
  app.require_subcommand(1);

  // shared options
  std::uint64_t seed = 1;
  std::uint32_t q = 256;
  int trials = 20;
  int parallel = 1;
  std::string out = "out";

  // disseminate
  auto* dis = app.add_subcommand("disseminate", "run the dissemination protocol");
  std::string config_path;
  std::string dis_net, dis_gen = "line", dis_policy = "paper_default";
  int dis_n = 8, dis_horizon = 400, dis_wdim = 2, dis_gen_size = 4;
  std::vector<int> dis_snapshots;
  bool dis_binary = false;
  dis->add_option("--config", config_path, "run config JSON file");
  dis->add_option("--net", dis_net, "network JSON file");
  dis->add_option("--generate", dis_gen, "generator kind: line|random_tree|random_dag");
  dis->add_option("--size", dis_gen_size, "generated node count");
  dis->add_option("--n", dis_n, "source message count");
  dis->add_option("--q", q, "field order");
  dis->add_option("--seed", seed, "master seed");
  dis->add_option("--horizon", dis_horizon, "maximum timeslots");
  dis->add_option("--policy", dis_policy, "waiting policy: paper_default|fixed_dimension|none");
  dis->add_option("--waiting-dim", dis_wdim, "dimension for the fixed policy");
  dis->add_option("--snapshot", dis_snapshots, "slots to export snapshots for");
  dis->add_flag("--binary-snapshots", dis_binary, "also write compact binary snapshots");
  dis->add_option("--out", out, "output directory");

  // infer-topology
  auto* inf = app.add_subcommand("infer-topology", "reconstruct a topology from snapshots");
  std::string inf_net, inf_snap, inf_snap_next, inf_truth, inf_mode = "general";
  inf->add_option("--net", inf_net, "network JSON (end-to-end mode: run + infer)");
  inf->add_option("--snapshot", inf_snap, "snapshot JSON at time t");
  inf->add_option("--snapshot-next", inf_snap_next, "snapshot JSON at time t+1");
  inf->add_option("--ground-truth", inf_truth, "network JSON to diff against");
  inf->add_option("--mode", inf_mode, "tree|general");
  inf->add_option("--q", q, "field order");
  inf->add_option("--seed", seed, "master seed");
  inf->add_option("--out", out, "output directory");

  // locate-adversary
  auto* loc = app.add_subcommand("locate-adversary", "run and localize Byzantine attackers");
  std::string loc_net, loc_scenario;
  int loc_n = 0;
  loc->add_option("--net", loc_net, "network JSON file")->required();
  loc->add_option("--scenario", loc_scenario, "adversary scenario JSON")->required();
  loc->add_option("--n", loc_n, "source message count (default: 2D+4)");
  loc->add_option("--q", q, "field order");
  loc->add_option("--seed", seed, "master seed");
  loc->add_option("--out", out, "output directory");

  // p2p-sim
  auto* p2p = app.add_subcommand("p2p-sim", "overlay rewiring experiment sweeps");
  bool p2p_table1 = false, p2p_fig8 = false;
  std::vector<int> p2p_rows;
  int p2p_n = 52;
  std::string p2p_algo = "all";
  p2p->add_option("--config", config_path, "session config JSON file");
  p2p->add_flag("--table1", p2p_table1, "collection-time table over the six topologies");
  p2p->add_flag("--fig8", p2p_fig8, "rewiring-count sweep");
  p2p->add_option("--rows", p2p_rows, "cluster-3 sizes to run");
  p2p->add_option("--trials", trials, "seeds per cell");
  p2p->add_option("--n", p2p_n, "packets to distribute");
  p2p->add_option("--q", q, "field order");
  p2p->add_option("--seed", seed, "master seed");
  p2p->add_option("--parallel", parallel, "worker threads");
  p2p->add_option("--algo", p2p_algo, "random|algo1|algo2|algo3|all");
  p2p->add_option("--out", out, "output directory");

  // verify-lemmas
  auto* ver = app.add_subcommand("verify-lemmas", "Monte-Carlo suites for the subspace laws");
  int ver_trials = 10000;
  ver->add_option("--q", q, "field order");
  ver->add_option("--trials", ver_trials, "trials per suite");
  ver->add_option("--seed", seed, "master seed");
  ver->add_option("--out", out, "output directory (optional)")->default_val("");

  // cost-report
  auto* cost = app.add_subcommand("cost-report", "central-collection communication cost");
  std::string cost_net;
  int cost_n = 8, cost_cmax = 1, cost_depth = 10, cost_delta = 5, cost_nodes = 100;
  double cost_beta2 = 5.0;
  cost->add_option("--net", cost_net, "network JSON file");
  cost->add_option("--n", cost_n, "source message count");
  cost->add_option("--q", q, "field order");
  cost->add_option("--beta2", cost_beta2, "beta^2 steady-state margin");
  cost->add_option("--cmax", cost_cmax, "maximum min-cut");
  cost->add_option("--depth", cost_depth, "longest path D(G)");
  cost->add_option("--delta-in", cost_delta, "maximum in-degree");
  cost->add_option("--nodes", cost_nodes, "node count");
  cost->add_option("--out", out, "output directory (optional)")->default_val("");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dis->parsed())
      return cmd_disseminate(config_path, dis_net, dis_gen, seed, dis_n, q, dis_horizon,
                             dis_policy, dis_wdim, dis_snapshots, out, dis_binary, dis_gen_size);
    if (inf->parsed())
      return cmd_infer(inf_net, inf_snap, inf_snap_next, inf_truth, seed, q, inf_mode, out);
    if (loc->parsed()) return cmd_locate(loc_net, loc_scenario, seed, q, loc_n, out);
    if (p2p->parsed())
      return cmd_p2p(config_path, p2p_table1, p2p_fig8, p2p_rows, trials, p2p_n, q, seed,
                     parallel, p2p_algo, out);
    if (ver->parsed()) return cmd_verify_lemmas(q, ver_trials, seed, out);
    if (cost->parsed())
      return cmd_cost(cost_net, cost_n, q, cost_beta2, cost_cmax, cost_depth, cost_delta,
                      cost_nodes, out);
  } catch (const BadConfig& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const IoFailure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  } catch (const SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
