#pragma once

#include <cstdint>
#include <vector>

#include "ncsim/linalg.hpp"
#include "ncsim/network.hpp"

namespace ncsim {

enum class WaitingPolicy {
  PaperDefault,    // first slot with innovation rate c_v and dim >= c_v + 1
  FixedDimension,  // first slot with dim >= w
  None,            // transmit as soon as the buffer is nonempty
};

struct RecordOptions {
  bool spaces = true;        // per-slot node subspaces and received spans
  bool branches = true;      // per-parent cumulative and per-slot spaces
  bool coefficients = true;  // local coding coefficients (transfer oracle input)
};

struct RunConfig {
  Network net;
  int n = 1;  // source message count
  Field field = Field::make(2);
  int horizon = 1000;
  WaitingPolicy policy = WaitingPolicy::PaperDefault;
  int waiting_dimension = 2;  // only for FixedDimension
  std::uint64_t seed = 0;
  int extra_coords = 0;  // adversarial error coordinates appended to the ambient space
  RecordOptions record;

  int ambient() const { return n + extra_coords; }
};

// How a Byzantine node answers the controller: the lies a locator must
// survive without losing its ambiguity guarantee.
enum class ReportStrategy {
  Truthful,          // reports exactly what it received
  BlameOneIncoming,  // declares one incoming edge corrupted
  ClaimClean,        // strips its error space from every report
  CorruptOneOutgoing,  // corrupts a single outgoing edge, reports clean
};

struct Attacker {
  int node = 0;
  int delta = 1;                    // error space dimension
  std::vector<int> corrupted_edges;  // indices into Network::edges()
  ReportStrategy strategy = ReportStrategy::Truthful;
  int activation_slot = -1;  // -1: from the node's first transmission slot
  int blame_parent = -1;     // -1: lowest-id parent
};

struct AdversaryConfig {
  std::vector<Attacker> attackers;
  int total_delta() const {
    int d = 0;
    for (const auto& a : attackers) d += a.delta;
    return d;
  }
};

// A rate-r edge is expanded into r unit lanes; lanes are ordered by
// (tail, head, lane index) and all coefficient draws follow that order, so a
// run can be replayed exactly from its coefficient log.
struct Lane {
  int edge = 0;
  int tail = 0;
  int head = 0;
};

struct SnapshotBranch {
  int parent = 0;
  RowSpace cum;  // Π_v^{(u_i)}(t)
  RowSpace inc;  // π_v^{(u_i)}(t)
};
struct SnapshotNode {
  int node = 0;
  RowSpace space;  // Π_v(t)
  std::vector<SnapshotBranch> branches;
};
struct SnapshotSet {
  int t = 0;
  int n = 0;
  int ambient = 0;
  int source = 0;
  std::vector<SnapshotNode> nodes;  // indexed by node id

  nlohmann::json to_json() const;
  static SnapshotSet from_json(const nlohmann::json& j);
};

// Full record of a dissemination run. All per-slot indices run from 0 (the
// initial state) to slots().
class Trace {
 public:
  const RunConfig& config() const { return cfg_; }
  const std::vector<Lane>& lanes() const { return lanes_; }
  int slots() const { return slots_; }
  // False when the horizon was hit before every node collected n dimensions;
  // the trace stays valid and usable.
  bool complete() const { return complete_; }
  int source_emission_slots() const { return src_slots_; }

  int dim(int v, int t) const { return dims_[v][t]; }
  int innovation(int v, int t) const { return innovation_[v][t]; }
  int received_count(int v, int t) const { return rx_count_[v][t]; }

  bool waiting_set(int v) const { return tau_[v] >= 0; }
  // True when τ_v fired through the saturation fallback (the node already
  // held the full space) rather than the rate condition.
  bool waiting_by_saturation(int v) const { return tau_saturated_[v]; }
  // Realized waiting time τ_v; parents come earlier in the partial order
  // except for saturation fallbacks.
  int waiting_time(int v) const;

  const RowSpace& space(int v, int t) const;
  const RowSpace& received_at(int v, int t) const;  // span received at exactly t
  const RowSpace& branch_cum(int v, int parent_index, int t) const;
  const RowSpace& branch_inc(int v, int parent_index, int t) const;

  SnapshotSet snapshot(int t) const;

  bool lane_active(int lane, int t) const;
  const std::vector<felem>& coeffs(int lane, int t) const;
  bool has_coefficients() const { return cfg_.record.coefficients; }

  nlohmann::json dims_json() const;

 private:
  friend Trace run_with_adversary(const RunConfig&, const AdversaryConfig&);
  RunConfig cfg_;
  std::vector<Lane> lanes_;
  int slots_ = 0;
  bool complete_ = false;
  int src_slots_ = 0;
  std::vector<int> tau_;
  std::vector<bool> tau_saturated_;
  std::vector<std::vector<int>> dims_;        // [v][t]
  std::vector<std::vector<int>> innovation_;  // [v][t]
  std::vector<std::vector<int>> rx_count_;    // [v][t], packets received at t
  std::vector<std::vector<RowSpace>> spaces_;       // [v][t]
  std::vector<std::vector<RowSpace>> received_;     // [v][t]
  std::vector<std::vector<std::vector<RowSpace>>> bcum_;  // [v][parent_index][t]
  std::vector<std::vector<std::vector<RowSpace>>> binc_;
  std::vector<std::vector<std::vector<felem>>> coeffs_;  // [t][lane]
  std::vector<std::vector<bool>> active_;                // [t][lane]
};

Trace run(const RunConfig& cfg);
Trace run_with_adversary(const RunConfig& cfg, const AdversaryConfig& adv);

// Steady-state analytics. t_s is the first slot from which every node has
// begun receiving innovative packets at its min-cut rate (max over nodes of
// the realized waiting slot, minus one per the bound's chain of reasoning);
// the window closes when the first node other than the source holds all n
// dimensions.
struct SteadyState {
  bool attained = false;
  int t_s = -1;     // meaningful only when attained
  int t_full = -1;  // first slot a non-source node reaches dimension n
  long long window_node_slots = 0;
  long long window_at_rate = 0;  // node-slots inside the window with innovation == c_v
  double at_rate_fraction() const {
    return window_node_slots ? double(window_at_rate) / double(window_node_slots) : 0.0;
  }
};
SteadyState steady_state(const Trace& trace);

}  // namespace ncsim
