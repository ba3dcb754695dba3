#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncsim/errors.hpp"
#include "ncsim/rng.hpp"
#include "vendor_json.hpp"

namespace ncsim {

struct Edge {
  int tail = 0;
  int head = 0;
  int rate = 1;  // packets per timeslot
};

struct CutReport {
  int value = 0;
  std::vector<int> saturated_edges;  // edge indices forming a min cut
};

struct ValidateOptions {
  // When false, violations of the rate constraint r_e <= min[c_e, c_tail(e)]
  // are collected instead of thrown (needed to reproduce the
  // indistinguishable-children counterexample networks).
  bool check_rates = true;
};

struct PairVerdict {
  int u = 0;
  int v = 0;
  bool holds = true;
  int level = 0;          // ancestor level where the condition failed
  int cut_to_u = 0;       // min-cut(P^l, u) at that level
  int cut_to_v = 0;       // min-cut(P^l, v)
  int cut_from_source = 0;  // min-cut(S, P^l)
};

struct IdentifiabilityReport {
  bool all_hold = true;
  std::vector<PairVerdict> pairs;  // only pairs that share an ancestor set
};

// Directed acyclic graph with per-edge integer rates and a distinguished
// source. Immutable after construction; all queries are pure.
class Network {
 public:
  static Network from_edges(int nodes, int source, std::vector<Edge> edges,
                            ValidateOptions opts = {});
  static Network from_json(const nlohmann::json& j, ValidateOptions opts = {});
  nlohmann::json to_json() const;

  int node_count() const { return nodes_; }
  int source() const { return source_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }
  const std::vector<int>& parents(int v) const { return parents_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  const std::vector<int>& topo_order() const { return topo_; }
  const std::vector<Edge>& rate_violations() const { return rate_violations_; }

  // Integer max-flow from the source (or an arbitrary node set) on the
  // rate-capacitated graph. A disconnected pair yields value 0.
  int min_cut(int v) const;  // cached per node
  CutReport min_cut(const std::vector<int>& from_set, int to) const;
  int min_cut_to_set(int from, const std::vector<int>& to_set) const;

  // Longest source-to-node path length D(G), in edges.
  int longest_path() const { return longest_; }
  // Shortest-path distance labels from the source.
  const std::vector<int>& levels() const { return levels_; }
  // Ancestors of u at distance exactly l (some path of length l reaches u).
  std::vector<int> ancestors_at(int u, int l) const;

  // Receivers are the designated trustworthy observation points; defaults to
  // the sink nodes.
  std::vector<int> sinks() const;

  // Checks, pair by pair, the sufficient identifiability conditions on nodes
  // that share a full ancestor set at some level.
  IdentifiabilityReport identifiability_check() const;

  // True if there is a directed path u -> v (v == u counts as reachable).
  bool reaches(int u, int v) const { return reach_[u][v]; }

  // Placeholder; build real instances with from_edges / from_json.
  Network() = default;

 private:
  void build_indices();

  int nodes_ = 0;
  int source_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_, in_;        // edge indices per node
  std::vector<std::vector<int>> parents_, children_;
  std::vector<int> topo_;
  std::vector<int> levels_;
  int longest_ = 0;
  std::vector<int> mincut_;  // per node, from source
  std::vector<std::vector<bool>> reach_;
  std::vector<Edge> rate_violations_;
};

// ---- generators (all emit validated networks) ----
Network make_line(int nodes, int rate = 1);
// Rooted tree: every internal node gets 1..branching children per level.
Network make_random_tree(int depth, int branching, int rate, Rng& rng);
// Random DAG over `nodes` nodes; every non-source node draws parents among
// earlier nodes with probability `density` (at least one).
Network make_random_dag(int nodes, double density, int max_rate, Rng& rng);
// Clustered DAG: consecutive clusters joined only by `bottleneck_links`
// edges of rate `bottleneck_rate`.
Network make_clustered_dag(const std::vector<int>& sizes, int intra_degree,
                           int bottleneck_links, int bottleneck_rate, Rng& rng);

}  // namespace ncsim
