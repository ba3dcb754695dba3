#pragma once

// Shared experiment harnesses for the unit and acceptance suites.

#include <algorithm>
#include <optional>
#include <set>

#include "ncsim/byzantine.hpp"
#include "ncsim/inference.hpp"
#include "ncsim/network.hpp"

namespace ncsim::exp {

// Tree family for the recovery experiments: depth 2..5, branching <= 2,
// at most 12 nodes, unit rates.
inline Network tree_family(std::uint64_t seed) {
  for (std::uint64_t salt = 0;; ++salt) {
    Rng rng(Rng::derive_seed(seed, salt));
    const int depth = 2 + int(rng.below(4));
    const Network t = make_random_tree(depth, 2, 1, rng);
    if (t.node_count() <= 8) return t;
  }
}

// Random DAG family filtered to identifiability-passing instances.
inline Network identifiable_dag_family(std::uint64_t seed) {
  for (std::uint64_t salt = 0;; ++salt) {
    Rng rng(Rng::derive_seed(seed, salt));
    const int nodes = 4 + int(rng.below(5));
    const Network net = make_random_dag(nodes, 0.3, 1, rng);
    if (net.identifiability_check().all_hold) return net;
  }
}

// End-to-end: disseminate and recover a tree from one static view.
inline bool tree_roundtrip_exact(const Network& tree, std::uint64_t run_seed) {
  const int D = tree.longest_path();
  RunConfig cfg;
  cfg.net = tree;
  cfg.n = 2 * D + 2;
  cfg.field = Field::make(256);
  cfg.seed = run_seed;
  cfg.horizon = 300;
  cfg.record.coefficients = false;
  const Trace tr = run(cfg);
  if (tr.slots() < 2 * D) return false;
  try {
    const TopologyEstimate est = infer_tree(TreeInput::from_snapshot(tr.snapshot(2 * D)));
    const auto [missing, spurious] = est.diff(tree);
    return est.all_unique() && missing.empty() && spurious.empty();
  } catch (const SimError&) {
    return false;
  }
}

// End-to-end: recover a general DAG from two consecutive static views.
inline bool dag_roundtrip_exact(const Network& net, std::uint64_t run_seed) {
  const int D = net.longest_path();
  int c_max = 1;
  for (int v = 1; v < net.node_count(); ++v) c_max = std::max(c_max, net.min_cut(v));
  RunConfig cfg;
  cfg.net = net;
  // keep both snapshot times inside the identifiability window: the slower
  // bound 2D-1 below, the decode point n/c_max above
  cfg.n = c_max * (2 * D + 3);
  cfg.field = Field::make(256);
  cfg.seed = run_seed;
  cfg.horizon = 300;
  cfg.record.coefficients = false;
  const Trace tr = run(cfg);
  const int t = 2 * D;
  if (tr.slots() < t + 1) return false;
  try {
    const TopologyEstimate est = infer_general(tr.snapshot(t), tr.snapshot(t + 1));
    const auto [missing, spurious] = est.diff(net);
    return est.all_unique() && missing.empty() && spurious.empty();
  } catch (const SimError&) {
    return false;
  }
}

// Single-adversary scenario on a random DAG; returns the located ambiguity
// set and the true attacker, or nothing when the graph has no usable
// intermediate node.
struct SingleAdversaryOutcome {
  int attacker = -1;
  std::vector<int> located;
  bool ok_size = false;
  bool contains_attacker = false;
};

inline std::optional<SingleAdversaryOutcome> single_adversary_trial(std::uint64_t seed) {
  Rng rng(Rng::derive_seed(seed, 0xA1));
  const int nodes = 6 + int(rng.below(10));  // up to 15
  const Network net = make_random_dag(nodes, 0.3, 1, rng);
  const auto receivers = net.sinks();

  std::vector<int> eligible;
  for (int v = 1; v < nodes; ++v)
    if (!net.out_edges(v).empty() &&
        std::find(receivers.begin(), receivers.end(), v) == receivers.end())
      eligible.push_back(v);
  if (eligible.empty()) return std::nullopt;
  const int attacker = eligible[rng.below(std::uint32_t(eligible.size()))];
  const auto& out = net.out_edges(attacker);

  Attacker atk;
  atk.node = attacker;
  atk.delta = 1;
  // rotate through the three lying strategies
  switch (seed % 3) {
    case 0:  // corrupt a strict subset (unique when 1 < t_A < out-degree)
      atk.strategy = ReportStrategy::ClaimClean;
      if (out.size() >= 3)
        atk.corrupted_edges.assign(out.begin(), out.end() - 1);
      else
        atk.corrupted_edges.assign(out.begin(), out.begin() + 1);
      break;
    case 1:  // corrupt everything, blame one incoming edge
      atk.strategy = ReportStrategy::BlameOneIncoming;
      atk.corrupted_edges.assign(out.begin(), out.end());
      atk.blame_parent = net.parents(attacker).front();
      break;
    default:  // corrupt one outgoing edge, claim clean
      atk.strategy = ReportStrategy::CorruptOneOutgoing;
      atk.corrupted_edges.assign(out.begin(), out.begin() + 1);
      break;
  }
  AdversaryConfig adv;
  adv.attackers.push_back(atk);

  RunConfig cfg;
  cfg.net = net;
  cfg.n = 2 * net.longest_path() + 4;
  cfg.field = Field::make(256);
  cfg.seed = Rng::derive_seed(seed, 0xA2);
  cfg.horizon = cfg.n + 2 * net.longest_path() + 8;
  cfg.record.coefficients = false;
  const Trace tr = run_adversarial(cfg, adv);
  const RowSpace pi_s = source_space(cfg.field, cfg.n, cfg.n + 1);

  SingleAdversaryOutcome outcome;
  outcome.attacker = attacker;
  try {
    const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
    const auto verdict = locate_single(net, split_edges(net, rep, pi_s));
    if (verdict.sets.size() == 1) {
      outcome.located = verdict.sets[0].nodes;
      outcome.ok_size = outcome.located.size() <= 2;
      outcome.contains_attacker =
          std::find(outcome.located.begin(), outcome.located.end(), attacker) !=
          outcome.located.end();
    }
  } catch (const SimError&) {
  }
  return outcome;
}

// Undirected graph distance (rewiring-free BFS over edge endpoints).
inline int undirected_distance(const Network& net, int a, int b) {
  std::vector<int> dist(net.node_count(), -1);
  std::vector<int> queue{a};
  dist[a] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const int u = queue[i];
    for (int ei : net.out_edges(u))
      if (dist[net.edges()[ei].head] < 0) {
        dist[net.edges()[ei].head] = dist[u] + 1;
        queue.push_back(net.edges()[ei].head);
      }
    for (int ei : net.in_edges(u))
      if (dist[net.edges()[ei].tail] < 0) {
        dist[net.edges()[ei].tail] = dist[u] + 1;
        queue.push_back(net.edges()[ei].tail);
      }
  }
  return dist[b] < 0 ? 1 << 20 : dist[b];
}

// Two attackers at pairwise distance > 2, located with the subset method.
struct SubsetOutcome {
  bool usable = false;       // a valid attacker pair existed
  bool disjoint_pair = false;  // two disjoint ambiguity sets, one per attacker
  bool within_neighborhood = false;  // each set inside {A} ∪ P(A) ∪ children(A)
};

inline SubsetOutcome subset_method_trial(std::uint64_t seed) {
  Rng rng(Rng::derive_seed(seed, 0xB1));
  const int nodes = 8 + int(rng.below(7));
  const Network net = make_random_dag(nodes, 0.25, 1, rng);
  const auto receivers = net.sinks();

  std::vector<int> eligible;
  for (int v = 1; v < nodes; ++v)
    if (!net.out_edges(v).empty() &&
        std::find(receivers.begin(), receivers.end(), v) == receivers.end())
      eligible.push_back(v);
  SubsetOutcome outcome;
  std::pair<int, int> chosen{-1, -1};
  for (std::size_t i = 0; i < eligible.size() && chosen.first < 0; ++i)
    for (std::size_t j = i + 1; j < eligible.size(); ++j)
      if (undirected_distance(net, eligible[i], eligible[j]) > 2) {
        chosen = {eligible[i], eligible[j]};
        break;
      }
  if (chosen.first < 0) return outcome;
  outcome.usable = true;

  AdversaryConfig adv;
  for (int a : {chosen.first, chosen.second}) {
    Attacker atk;
    atk.node = a;
    atk.delta = 1;
    atk.corrupted_edges = net.out_edges(a);
    atk.strategy = rng.below(2) ? ReportStrategy::Truthful : ReportStrategy::BlameOneIncoming;
    if (atk.strategy == ReportStrategy::BlameOneIncoming)
      atk.blame_parent = net.parents(a).front();
    adv.attackers.push_back(std::move(atk));
  }
  RunConfig cfg;
  cfg.net = net;
  cfg.n = 2 * net.longest_path() + 4;
  cfg.field = Field::make(256);
  cfg.seed = Rng::derive_seed(seed, 0xB2);
  cfg.horizon = cfg.n + 2 * net.longest_path() + 8;
  cfg.record.coefficients = false;
  const Trace tr = run_adversarial(cfg, adv);
  const RowSpace pi_s = source_space(cfg.field, cfg.n, cfg.n + 2);

  try {
    const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
    const auto verdict = locate_subset_method(net, rep, pi_s);
    if (verdict.sets.size() != 2) return outcome;
    std::vector<bool> claimed(2, false);
    bool disjoint = true, within = true;
    std::set<int> seen;
    for (const auto& s : verdict.sets) {
      for (int v : s.nodes)
        if (!seen.insert(v).second) disjoint = false;
      int owner = -1;
      for (int k = 0; k < 2; ++k) {
        const int a = adv.attackers[k].node;
        if (std::find(s.nodes.begin(), s.nodes.end(), a) != s.nodes.end()) owner = k;
      }
      if (owner < 0) {
        within = false;
        continue;
      }
      claimed[owner] = true;
      const int a = adv.attackers[owner].node;
      std::set<int> hood{a};
      for (int p : net.parents(a)) hood.insert(p);
      for (int c : net.children(a)) hood.insert(c);
      for (int v : s.nodes)
        if (!hood.count(v)) within = false;
    }
    outcome.disjoint_pair = disjoint && claimed[0] && claimed[1];
    outcome.within_neighborhood = within;
  } catch (const SimError&) {
  }
  return outcome;
}

}  // namespace ncsim::exp
