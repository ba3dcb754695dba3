#include "ncsim/dissemination.hpp"

#include <algorithm>
#include <string>

namespace ncsim {
namespace {

int parent_index(const Network& net, int v, int parent) {
  const auto& ps = net.parents(v);
  const auto it = std::find(ps.begin(), ps.end(), parent);
  return int(it - ps.begin());
}

}  // namespace

int Trace::waiting_time(int v) const {
  if (tau_[v] < 0)
    throw NeverSatisfied("node " + std::to_string(v) +
                         " never satisfied the waiting condition within the horizon");
  return tau_[v];
}

const RowSpace& Trace::space(int v, int t) const {
  if (t < 0 || t > slots_) throw OutOfRange("slot outside trace");
  return spaces_[v][t];
}
const RowSpace& Trace::received_at(int v, int t) const {
  if (t < 0 || t > slots_) throw OutOfRange("slot outside trace");
  return received_[v][t];
}
const RowSpace& Trace::branch_cum(int v, int parent_index, int t) const {
  if (t < 0 || t > slots_) throw OutOfRange("slot outside trace");
  return bcum_[v][parent_index][t];
}
const RowSpace& Trace::branch_inc(int v, int parent_index, int t) const {
  if (t < 0 || t > slots_) throw OutOfRange("slot outside trace");
  return binc_[v][parent_index][t];
}

bool Trace::lane_active(int lane, int t) const {
  if (t < 1 || t > slots_) return false;
  return active_[t][lane];
}

const std::vector<felem>& Trace::coeffs(int lane, int t) const {
  if (!cfg_.record.coefficients)
    throw CoefficientLogMissing("run was executed without coefficient recording");
  if (t < 1 || t > slots_) throw OutOfRange("slot outside trace");
  return coeffs_[t][lane];
}

SnapshotSet Trace::snapshot(int t) const {
  if (t < 0 || t > slots_) throw OutOfRange("snapshot slot outside trace");
  if (!cfg_.record.spaces || !cfg_.record.branches)
    throw BadConfig("snapshots need space and branch recording enabled");
  SnapshotSet s;
  s.t = t;
  s.n = cfg_.n;
  s.ambient = cfg_.ambient();
  s.source = cfg_.net.source();
  const int nodes = cfg_.net.node_count();
  for (int v = 0; v < nodes; ++v) {
    SnapshotNode sn;
    sn.node = v;
    sn.space = spaces_[v][t];
    const auto& ps = cfg_.net.parents(v);
    for (std::size_t i = 0; i < ps.size(); ++i)
      sn.branches.push_back({ps[i], bcum_[v][i][t], binc_[v][i][t]});
    s.nodes.push_back(std::move(sn));
  }
  return s;
}

Trace run(const RunConfig& cfg) { return run_with_adversary(cfg, {}); }

Trace run_with_adversary(const RunConfig& cfg, const AdversaryConfig& adv) {
  const Network& net = cfg.net;
  const Field f = cfg.field;
  const int S = net.source();
  const int nodes = net.node_count();
  const int amb = cfg.ambient();
  if (cfg.n < 1) throw BadConfig("n must be at least 1");
  if (cfg.horizon < 1) throw BadConfig("horizon must be at least 1");
  if (adv.total_delta() != cfg.extra_coords)
    throw BadConfig("extra_coords must equal the total adversary error dimension");

  // Error-coordinate blocks, one per attacker, after the n source coordinates.
  std::vector<int> err_offset(adv.attackers.size(), 0);
  {
    int off = cfg.n;
    const auto receivers = net.sinks();
    for (std::size_t i = 0; i < adv.attackers.size(); ++i) {
      const auto& a = adv.attackers[i];
      if (a.node == S || std::find(receivers.begin(), receivers.end(), a.node) != receivers.end())
        throw AttackerIsSourceOrReceiver("attacker " + std::to_string(a.node));
      if (a.delta < 1) throw BadConfig("attacker error dimension must be at least 1");
      if (a.corrupted_edges.empty()) throw BadConfig("attacker corrupts at least one edge");
      for (int ei : a.corrupted_edges)
        if (net.edges()[ei].tail != a.node)
          throw BadConfig("corrupted edge does not leave the attacker node");
      err_offset[i] = off;
      off += a.delta;
    }
  }

  Trace tr;
  tr.cfg_ = cfg;
  for (std::size_t ei = 0; ei < net.edges().size(); ++ei)
    for (int r = 0; r < net.edges()[ei].rate; ++r)
      tr.lanes_.push_back({int(ei), net.edges()[ei].tail, net.edges()[ei].head});
  const auto& lanes = tr.lanes_;
  const int L = int(lanes.size());

  // The source rate is per edge; emission lasts ceil(n / r_S) slots with r_S
  // the slowest outgoing rate, so every branch sees combinations of all n
  // messages before the source goes quiet.
  int source_rate = 0;
  for (int ei : net.out_edges(S)) {
    const int r = net.edges()[ei].rate;
    source_rate = source_rate == 0 ? r : std::min(source_rate, r);
  }
  tr.src_slots_ = source_rate ? (cfg.n + source_rate - 1) / source_rate : 0;

  const Rng master(cfg.seed);
  std::vector<Rng> lane_rng;
  lane_rng.reserve(L);
  for (int j = 0; j < L; ++j) lane_rng.push_back(master.split(std::uint64_t(j)));
  std::vector<Rng> adv_rng;
  for (std::size_t i = 0; i < adv.attackers.size(); ++i)
    adv_rng.push_back(master.split(0x41445600ull + i));

  // Node state: the buffer is the raw packet list in arrival order (the
  // coefficient log indexes into it), plus incremental RREF accumulators.
  std::vector<std::vector<std::vector<felem>>> buffer(nodes);
  std::vector<Eliminator> space;
  std::vector<std::vector<Eliminator>> bcum;
  for (int v = 0; v < nodes; ++v) {
    space.emplace_back(f, amb);
    std::vector<Eliminator> per_parent;
    for (std::size_t i = 0; i < net.parents(v).size(); ++i) per_parent.emplace_back(f, amb);
    bcum.push_back(std::move(per_parent));
  }

  tr.tau_.assign(nodes, cfg.policy == WaitingPolicy::None ? 0 : -1);
  tr.tau_saturated_.assign(nodes, false);
  tr.tau_[S] = 0;

  const RowSpace zero(f, amb);
  RowSpace source_space(f, amb);
  {
    Mat units(f, cfg.n, amb);
    for (int i = 0; i < cfg.n; ++i) units.at(i, i) = 1;
    source_space = RowSpace::span(units);
  }

  tr.dims_.assign(nodes, {0});
  tr.innovation_.assign(nodes, {0});
  tr.rx_count_.assign(nodes, {0});
  tr.dims_[S][0] = cfg.n;
  if (cfg.record.spaces) {
    tr.spaces_.assign(nodes, {zero});
    tr.received_.assign(nodes, {zero});
    tr.spaces_[S][0] = source_space;
  }
  if (cfg.record.branches) {
    tr.bcum_.resize(nodes);
    tr.binc_.resize(nodes);
    for (int v = 0; v < nodes; ++v) {
      tr.bcum_[v].assign(net.parents(v).size(), {zero});
      tr.binc_[v].assign(net.parents(v).size(), {zero});
    }
  }
  if (cfg.record.coefficients) {
    tr.coeffs_.resize(1);  // slot 0 placeholder
  }
  tr.active_.assign(1, std::vector<bool>(L, false));

  std::vector<int> rx_total(nodes, 0);

  auto lane_is_active = [&](int j, int t) {
    const int u = lanes[j].tail;
    if (u == S) return t <= tr.src_slots_;
    return tr.tau_[u] >= 0 && t >= tr.tau_[u] + 1 && rx_total[u] > 0;
  };

  for (int t = 1; t <= cfg.horizon; ++t) {
    // Transmission phase: combinations of the buffer at the end of t-1.
    struct Tx {
      int lane;
      std::vector<felem> pkt;
    };
    std::vector<Tx> txs;
    std::vector<std::vector<felem>> slot_coeffs(L);
    std::vector<bool> slot_active(L, false);
    for (int j = 0; j < L; ++j) {
      if (!lane_is_active(j, t)) continue;
      slot_active[j] = true;
      const int u = lanes[j].tail;
      std::vector<felem> pkt(amb, 0);
      if (u == S) {
        std::vector<felem> cs(cfg.n);
        for (int i = 0; i < cfg.n; ++i) {
          cs[i] = f.sample(lane_rng[j]);
          pkt[i] = cs[i];
        }
        slot_coeffs[j] = std::move(cs);
      } else {
        const auto& buf = buffer[u];
        std::vector<felem> cs(buf.size());
        for (std::size_t i = 0; i < buf.size(); ++i) {
          cs[i] = f.sample(lane_rng[j]);
          if (cs[i] == 0) continue;
          const auto& b = buf[i];
          for (int c = 0; c < amb; ++c) pkt[c] = f.add(pkt[c], f.mul(cs[i], b[c]));
        }
        slot_coeffs[j] = std::move(cs);
      }
      txs.push_back({j, std::move(pkt)});
    }

    // Adversary phase: mix a nonzero element of the attacker's error block
    // into every corrupted lane that carries a packet this slot.
    for (std::size_t ai = 0; ai < adv.attackers.size(); ++ai) {
      const auto& atk = adv.attackers[ai];
      if (atk.activation_slot >= 0 && t < atk.activation_slot) continue;
      for (auto& tx : txs) {
        if (lanes[tx.lane].tail != atk.node) continue;
        if (std::find(atk.corrupted_edges.begin(), atk.corrupted_edges.end(),
                      lanes[tx.lane].edge) == atk.corrupted_edges.end())
          continue;
        std::vector<felem> ecs(atk.delta);
        bool nonzero = false;
        while (!nonzero) {
          for (int d = 0; d < atk.delta; ++d) {
            ecs[d] = f.sample(adv_rng[ai]);
            nonzero |= ecs[d] != 0;
          }
        }
        for (int d = 0; d < atk.delta; ++d)
          tx.pkt[err_offset[ai] + d] = f.add(tx.pkt[err_offset[ai] + d], ecs[d]);
      }
    }

    // Delivery phase, in canonical lane order.
    std::vector<int> slot_innov(nodes, 0), slot_rx(nodes, 0);
    std::vector<Eliminator> slot_recv;
    std::vector<std::vector<Eliminator>> slot_binc;
    if (cfg.record.spaces)
      for (int v = 0; v < nodes; ++v) slot_recv.emplace_back(f, amb);
    if (cfg.record.branches) {
      slot_binc.resize(nodes);
      for (int v = 0; v < nodes; ++v)
        for (std::size_t i = 0; i < net.parents(v).size(); ++i)
          slot_binc[v].emplace_back(f, amb);
    }
    for (auto& tx : txs) {
      const int v = lanes[tx.lane].head;
      const int u = lanes[tx.lane].tail;
      slot_innov[v] += space[v].insert(tx.pkt) ? 1 : 0;
      ++slot_rx[v];
      const int pidx = parent_index(net, v, u);
      if (cfg.record.branches) {
        bcum[v][pidx].insert(tx.pkt);
        slot_binc[v][pidx].insert(tx.pkt);
      }
      if (cfg.record.spaces) slot_recv[v].insert(tx.pkt);
      buffer[v].push_back(std::move(tx.pkt));
    }

    // Bookkeeping and waiting-time updates.
    tr.active_.push_back(std::move(slot_active));
    if (cfg.record.coefficients) tr.coeffs_.push_back(std::move(slot_coeffs));
    bool all_full = true;
    for (int v = 0; v < nodes; ++v) {
      rx_total[v] += slot_rx[v];
      const int d = v == S ? cfg.n : int(space[v].dim());
      tr.dims_[v].push_back(d);
      tr.innovation_[v].push_back(v == S ? 0 : slot_innov[v]);
      tr.rx_count_[v].push_back(slot_rx[v]);
      if (cfg.record.spaces) {
        tr.spaces_[v].push_back(v == S ? source_space
                                       : RowSpace::from_eliminator(space[v]));
        tr.received_[v].push_back(RowSpace::from_eliminator(slot_recv[v]));
      }
      if (cfg.record.branches) {
        for (std::size_t i = 0; i < net.parents(v).size(); ++i) {
          tr.bcum_[v][i].push_back(RowSpace::from_eliminator(bcum[v][i]));
          tr.binc_[v][i].push_back(RowSpace::from_eliminator(slot_binc[v][i]));
        }
      }
      if (v != S) {
        if (tr.tau_[v] < 0) {
          const int cv = net.min_cut(v);
          if (cfg.policy == WaitingPolicy::PaperDefault) {
            // Parents come first in the partial order: the condition is only
            // evaluated once every parent has passed its own waiting time.
            // Receiving "at rate c_v" reads as reaching the min-cut rate;
            // transient backlog bursts can push single slots above it.
            bool parents_done = true;
            for (int p : net.parents(v))
              if (tr.tau_[p] < 0 || tr.tau_[p] >= t) parents_done = false;
            if (parents_done && slot_innov[v] >= cv && int(space[v].dim()) >= cv + 1) {
              tr.tau_[v] = t;
            } else if (int(space[v].dim()) >= cfg.n) {
              // Holding the whole source space leaves nothing to wait for;
              // staying mute would deadlock the dissemination.
              tr.tau_[v] = t;
              tr.tau_saturated_[v] = true;
            }
          } else if (cfg.policy == WaitingPolicy::FixedDimension) {
            if (int(space[v].dim()) >= cfg.waiting_dimension) tr.tau_[v] = t;
          }
        }
        if (int(space[v].dim()) < cfg.n) all_full = false;
      }
    }
    tr.slots_ = t;
    if (all_full) {
      tr.complete_ = true;
      break;
    }
  }
  return tr;
}

SteadyState steady_state(const Trace& tr) {
  const Network& net = tr.config().net;
  const int S = net.source();
  SteadyState ss;

  int t_s = 0;
  bool all_set = true;
  for (int v = 0; v < net.node_count(); ++v) {
    if (v == S) continue;
    if (!tr.waiting_set(v)) {
      all_set = false;
      break;
    }
    t_s = std::max(t_s, tr.waiting_time(v) - 1);
  }

  ss.t_full = tr.slots();
  for (int t = 1; t <= tr.slots(); ++t) {
    bool full = false;
    for (int v = 0; v < net.node_count() && !full; ++v)
      if (v != S && tr.dim(v, t) >= tr.config().n) full = true;
    if (full) {
      ss.t_full = t;
      break;
    }
  }

  if (!all_set || t_s > ss.t_full) return ss;  // never attained within the trace
  ss.attained = true;
  ss.t_s = t_s;
  // The rate table covers the open interior of the window: at t_s the
  // slowest node is still finishing its catch-up, and at t_full gains clip
  // against dimension n.
  for (int t = t_s + 1; t < ss.t_full && t <= tr.slots(); ++t) {
    if (t < 1) continue;
    for (int v = 0; v < net.node_count(); ++v) {
      if (v == S) continue;
      ++ss.window_node_slots;
      if (tr.innovation(v, t) == net.min_cut(v)) ++ss.window_at_rate;
    }
  }
  return ss;
}

nlohmann::json Trace::dims_json() const {
  nlohmann::json j;
  j["slots"] = slots_;
  j["complete"] = complete_;
  j["dims"] = dims_;
  j["innovation"] = innovation_;
  nlohmann::json taus = nlohmann::json::array();
  for (int v = 0; v < int(tau_.size()); ++v)
    taus.push_back(tau_[v]);
  j["waiting_times"] = taus;
  return j;
}

}  // namespace ncsim
