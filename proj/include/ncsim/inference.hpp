#pragma once

#include <map>
#include <vector>

#include "ncsim/dissemination.hpp"
#include "ncsim/network.hpp"

namespace ncsim {

// Sufficient statistics for the tree algorithm: subspace dimensions and
// pairwise intersection dimensions at one static view.
struct TreeInput {
  int n = 0;
  std::vector<int> d;                    // d_u per node
  std::map<std::pair<int, int>, int> d_pair;  // unordered pairs (u<v) -> dim(Π_u ∩ Π_v)

  int pair_dim(int u, int v) const {
    if (u == v) return d[u];
    return d_pair.at(u < v ? std::pair{u, v} : std::pair{v, u});
  }
  static TreeInput from_snapshot(const SnapshotSet& s);
};

enum class ParentFlag { Unique, Ambiguous, Unresolved };

struct BranchEstimate {
  int node = 0;
  int branch = 0;       // branch index (tree inference uses a single branch 0)
  int parent = -1;      // chosen parent; -1 when unresolved
  ParentFlag flag = ParentFlag::Unresolved;
  std::vector<int> candidates;  // all argmin candidates (ambiguity surfaced)
};

struct TopologyEstimate {
  int source = -1;
  std::vector<BranchEstimate> branches;

  bool all_unique() const;
  // Estimated edge set (tail, head), deduplicated.
  std::vector<std::pair<int, int>> edge_set() const;
  nlohmann::json to_graph_json() const;
  // Diff against ground truth: returns (missing, spurious) edge lists.
  std::pair<std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>> diff(
      const Network& truth) const;
};

// Tree topology from {d_u},{d_uv}: the source is the node with d_u = n, and
// every other node attaches below the smallest-dimension subspace containing
// its own.
TopologyEstimate infer_tree(const TreeInput& in);

// Nodes with equal subspaces at the snapshot, as unordered pairs.
std::vector<std::pair<int, int>> check_distinct(const SnapshotSet& s);

// General DAG topology from two consecutive static views. Throws
// DistinctnessViolated when the snapshot at t has equal node subspaces;
// never silently guesses in that case.
TopologyEstimate infer_general(const SnapshotSet& at_t, const SnapshotSet& at_t1);

// Communication cost of central collection.
struct CostReport {
  double bits_total = 0;
  double bits_per_node = 0;
  double kilobytes_per_node = 0;  // bits / 8 / 1024
};
CostReport communication_cost(const Network& net, int n, std::uint32_t q);
// Closed-form variant with n = 2*beta*c_max*D(G) substituted in.
CostReport communication_cost_params(double beta2, int c_max, int depth, int max_in_degree,
                                     std::uint32_t q, int nodes);

}  // namespace ncsim
