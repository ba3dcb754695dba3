#pragma once

#include <vector>

#include "ncsim/dissemination.hpp"
#include "ncsim/linalg.hpp"
#include "ncsim/network.hpp"

namespace ncsim {

// Runs a dissemination with the configured attackers. The ambient space is
// F_q^{n + Σδ}: the source spans the first n coordinates and each attacker
// owns its own error-coordinate block, so "inside Π_S" tests are exact and
// independent attackers stay structurally independent.
Trace run_adversarial(RunConfig cfg, const AdversaryConfig& adv);

// The source space (first n coordinates of the ambient space).
RowSpace source_space(const Field& f, int n, int ambient);

enum class InfoLevel {
  Full,    // each node reports every per-parent subspace
  Sampled  // each node reports one random vector per received subspace
};

// One edge's reported flow: the head's account of what arrived over it.
struct EdgeReport {
  int edge = 0;
  RowSpace flow;                // Full level
  std::vector<felem> sample;   // Sampled level (empty when no traffic)
};

struct Reports {
  InfoLevel level = InfoLevel::Full;
  int t = 0;
  std::vector<EdgeReport> edges;  // indexed by edge id
};

// Collects per-edge reports at slot t. Honest heads report their actual
// per-parent cumulative spaces; attackers lie according to their strategy.
Reports gather_reports(const Trace& trace, const AdversaryConfig& adv, int t, InfoLevel level);

struct EdgeSplit {
  std::vector<int> clean;      // E_S
  std::vector<int> corrupted;  // E_C
  // Source out-edges a node reported corrupted; they are forced clean (the
  // source is trustworthy) and the discrepancy pins the lying head.
  std::vector<int> lied_source_edges;
};

// Classifies every edge by whether the reported flow lies inside Π_S.
EdgeSplit split_edges(const Network& net, const Reports& reports, const RowSpace& pi_s);

// Receiver-only analysis: E_A = ∩_{e∈E_C} P_e − ∪_{e∈E_S} P_e over the path
// edge sets of the receivers' incoming edges. Keys of `corrupted` are the
// receivers' incoming edge ids.
std::vector<int> receiver_only_candidates(const Network& net,
                                          const std::vector<std::pair<int, bool>>& observations);

enum class VerdictFlag { Exact, Pair, ParentChildren };

struct AmbiguitySet {
  std::vector<int> nodes;
  VerdictFlag flag = VerdictFlag::Exact;
  bool overlap = false;  // merged sets of attackers closer than distance 2
};

struct LocatorVerdict {
  std::vector<AmbiguitySet> sets;
  std::vector<int> undetectable;  // shadowed nodes that cannot be told apart
};

LocatorVerdict locate_single(const Network& net, const EdgeSplit& split);
LocatorVerdict locate_multiple_splitting(const Network& net, const EdgeSplit& split);

// Nodes whose every incoming edge is fed by some corrupted outgoing edge of a.
std::vector<int> shadow_set(const Network& net, int a, const std::vector<int>& corrupted_out);

// Subset-relationship method over full reports: flags every node u with a
// child report escaping the span of u's parents, then groups flagged nodes
// into parent-children ambiguity sets.
LocatorVerdict locate_subset_method(const Network& net, const Reports& reports,
                                    const RowSpace& pi_s);

}  // namespace ncsim
