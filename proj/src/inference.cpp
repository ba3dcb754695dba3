#include "ncsim/inference.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace ncsim {

TreeInput TreeInput::from_snapshot(const SnapshotSet& s) {
  TreeInput in;
  in.n = s.n;
  const int nodes = int(s.nodes.size());
  in.d.resize(nodes);
  for (int v = 0; v < nodes; ++v) in.d[v] = int(s.nodes[v].space.dim());
  for (int u = 0; u < nodes; ++u)
    for (int v = u + 1; v < nodes; ++v)
      in.d_pair[{u, v}] = int(s.nodes[u].space.intersect(s.nodes[v].space).dim());
  return in;
}

bool TopologyEstimate::all_unique() const {
  return std::all_of(branches.begin(), branches.end(),
                     [](const BranchEstimate& b) { return b.flag == ParentFlag::Unique; });
}

std::vector<std::pair<int, int>> TopologyEstimate::edge_set() const {
  std::set<std::pair<int, int>> es;
  for (const auto& b : branches)
    if (b.parent >= 0) es.insert({b.parent, b.node});
  return {es.begin(), es.end()};
}

nlohmann::json TopologyEstimate::to_graph_json() const {
  int max_node = source;
  for (const auto& b : branches) max_node = std::max({max_node, b.node, b.parent});
  nlohmann::json j;
  j["nodes"] = max_node + 1;
  j["source"] = source;
  j["edges"] = nlohmann::json::array();
  for (auto [t, h] : edge_set()) j["edges"].push_back({{"tail", t}, {"head", h}, {"rate", 1}});
  return j;
}

std::pair<std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>>
TopologyEstimate::diff(const Network& truth) const {
  std::set<std::pair<int, int>> want;
  for (const auto& e : truth.edges()) want.insert({e.tail, e.head});
  std::set<std::pair<int, int>> got;
  for (auto e : edge_set()) got.insert(e);
  std::vector<std::pair<int, int>> missing, spurious;
  for (auto e : want)
    if (!got.count(e)) missing.push_back(e);
  for (auto e : got)
    if (!want.count(e)) spurious.push_back(e);
  return {missing, spurious};
}

TopologyEstimate infer_tree(const TreeInput& in) {
  TopologyEstimate est;
  const int nodes = int(in.d.size());
  for (int u = 0; u < nodes; ++u)
    if (in.d[u] == in.n) est.source = u;

  for (int u = 0; u < nodes; ++u) {
    if (in.d[u] == in.n) continue;  // the source has no parent
    BranchEstimate be;
    be.node = u;
    be.branch = 0;
    // Candidate parents: subspaces containing Π_u (d_uw = d_u), of minimum
    // dimension. A candidate of equal dimension is an equal subspace: that is
    // an ambiguity, not a parent.
    int best = -1;
    for (int w = 0; w < nodes; ++w) {
      if (w == u) continue;
      if (in.pair_dim(u, w) != in.d[u]) continue;
      if (best == -1 || in.d[w] < best) best = in.d[w];
    }
    if (best == -1) {
      throw NoCandidateParent(u, "no subspace contains node " + std::to_string(u) +
                                     "'s space; snapshot not in steady state");
    }
    for (int w = 0; w < nodes; ++w) {
      if (w == u) continue;
      if (in.pair_dim(u, w) == in.d[u] && in.d[w] == best) be.candidates.push_back(w);
    }
    if (be.candidates.size() == 1 && best > in.d[u]) {
      be.parent = be.candidates[0];
      be.flag = ParentFlag::Unique;
    } else {
      be.parent = be.candidates[0];
      be.flag = ParentFlag::Ambiguous;
    }
    est.branches.push_back(std::move(be));
  }
  return est;
}

std::vector<std::pair<int, int>> check_distinct(const SnapshotSet& s) {
  std::vector<std::pair<int, int>> pairs;
  const int nodes = int(s.nodes.size());
  for (int u = 0; u < nodes; ++u)
    for (int v = u + 1; v < nodes; ++v)
      if (s.nodes[u].space == s.nodes[v].space) pairs.push_back({u, v});
  return pairs;
}

TopologyEstimate infer_general(const SnapshotSet& at_t, const SnapshotSet& at_t1) {
  if (at_t1.t != at_t.t + 1)
    throw BadConfig("general inference needs two consecutive static views");
  const auto equal_pairs = check_distinct(at_t);
  if (!equal_pairs.empty())
    throw DistinctnessViolated(equal_pairs, "snapshot has indistinguishable node subspaces");

  TopologyEstimate est;
  const int nodes = int(at_t.nodes.size());
  for (int u = 0; u < nodes; ++u)
    if (int(at_t.nodes[u].space.dim()) == at_t.n) est.source = u;

  for (int u = 0; u < nodes; ++u) {
    if (int(at_t.nodes[u].space.dim()) == at_t.n) continue;  // source
    const auto& branches = at_t1.nodes[u].branches;
    for (int i = 0; i < int(branches.size()); ++i) {
      const RowSpace& branch_space = branches[i].cum;  // Π_u^{(u_i)}(t+1)
      BranchEstimate be;
      be.node = u;
      be.branch = i;
      if (branch_space.dim() == 0) {
        // no traffic on this branch yet; nothing to assign
        est.branches.push_back(std::move(be));
        continue;
      }
      const int du_i = int(branch_space.dim());
      int best = -1;
      for (int w = 0; w < nodes; ++w) {
        if (w == u) continue;
        const int dwu = int(branch_space.intersect(at_t.nodes[w].space).dim());
        if (dwu != du_i) continue;
        if (best == -1 || int(at_t.nodes[w].space.dim()) < best)
          best = int(at_t.nodes[w].space.dim());
      }
      if (best == -1) {
        est.branches.push_back(std::move(be));
        continue;
      }
      for (int w = 0; w < nodes; ++w) {
        if (w == u) continue;
        if (int(at_t.nodes[w].space.dim()) != best) continue;
        if (int(branch_space.intersect(at_t.nodes[w].space).dim()) == du_i)
          be.candidates.push_back(w);
      }
      be.parent = be.candidates[0];
      be.flag = be.candidates.size() == 1 ? ParentFlag::Unique : ParentFlag::Ambiguous;
      est.branches.push_back(std::move(be));
    }
  }
  return est;
}

CostReport communication_cost(const Network& net, int n, std::uint32_t q) {
  CostReport r;
  int max_in = 0;
  for (int v = 0; v < net.node_count(); ++v)
    max_in = std::max(max_in, int(net.in_edges(v).size()));
  const double per_subspace = (double(n) * n / 4.0) * std::log2(double(q));
  r.bits_per_node = 2.0 * max_in * per_subspace;
  r.bits_total = r.bits_per_node * net.node_count();
  r.kilobytes_per_node = r.bits_per_node / 8.0 / 1024.0;
  return r;
}

CostReport communication_cost_params(double beta2, int c_max, int depth, int max_in_degree,
                                     std::uint32_t q, int nodes) {
  CostReport r;
  r.bits_per_node = 2.0 * beta2 * double(c_max) * c_max * double(depth) * depth *
                    max_in_degree * std::log2(double(q));
  r.bits_total = r.bits_per_node * nodes;
  r.kilobytes_per_node = r.bits_per_node / 8.0 / 1024.0;
  return r;
}

}  // namespace ncsim
