#include "ncsim/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace ncsim {

bool OverlayGraph::connected() const {
  if (peers == 0) return false;
  std::vector<bool> vis(peers, false);
  std::deque<int> q{0};
  vis[0] = true;
  int seen = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int w : adj[u])
      if (!vis[w]) {
        vis[w] = true;
        ++seen;
        q.push_back(w);
      }
  }
  return seen == peers;
}

double OverlayGraph::average_degree() const {
  long long total = 0;
  for (const auto& a : adj) total += (long long)a.size();
  return double(total) / double(peers);
}

OverlayGraph make_clustered_overlay(const OverlayParams& p, Rng& rng) {
  OverlayGraph g;
  for (int s : p.cluster_sizes) {
    if (s < 3) throw InfeasibleDegreeConstraints("clusters need at least 3 peers for the ring");
    g.peers += s;
  }
  g.adj.assign(g.peers, {});
  g.cluster_of.assign(g.peers, 0);
  int base = 0;
  std::vector<std::pair<int, int>> ranges;
  for (std::size_t c = 0; c < p.cluster_sizes.size(); ++c) {
    ranges.push_back({base, base + p.cluster_sizes[c]});
    for (int v = base; v < base + p.cluster_sizes[c]; ++v) g.cluster_of[v] = int(c);
    base += p.cluster_sizes[c];
  }

  auto degree = [&](int v) { return int(g.adj[v].size()); };
  auto linked = [&](int a, int b) {
    return std::find(g.adj[a].begin(), g.adj[a].end(), b) != g.adj[a].end();
  };
  auto link = [&](int a, int b) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  };

  // Ring per cluster (meets the minimum degree), then random chords toward
  // the average degree, never exceeding the maximum.
  for (auto [lo, hi] : ranges) {
    for (int v = lo; v < hi; ++v) link(v, v + 1 == hi ? lo : v + 1);
    const int size = hi - lo;
    const long long target_extra =
        std::llround((p.avg_degree - 2.0) * size / 2.0);
    int added = 0, tries = 0;
    while (added < target_extra && tries < 50 * size) {
      ++tries;
      const int a = lo + int(rng.below(std::uint32_t(size)));
      const int b = lo + int(rng.below(std::uint32_t(size)));
      if (a == b || linked(a, b)) continue;
      if (degree(a) >= p.max_degree || degree(b) >= p.max_degree) continue;
      link(a, b);
      ++added;
    }
  }

  // Bottleneck links between consecutive clusters.
  for (std::size_t c = 0; c + 1 < ranges.size(); ++c) {
    int placed = 0, tries = 0;
    while (placed < p.bottleneck_links && tries < 10000) {
      ++tries;
      const auto [alo, ahi] = ranges[c];
      const auto [blo, bhi] = ranges[c + 1];
      const int a = alo + int(rng.below(std::uint32_t(ahi - alo)));
      const int b = blo + int(rng.below(std::uint32_t(bhi - blo)));
      if (linked(a, b)) continue;
      if (degree(a) >= p.max_degree || degree(b) >= p.max_degree) continue;
      link(a, b);
      g.bottlenecks.push_back({a, b});
      ++placed;
    }
    if (placed < p.bottleneck_links)
      throw InfeasibleDegreeConstraints("could not place the requested bottleneck links");
  }

  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  if (!g.connected()) throw DisconnectedOverlay("generated overlay is disconnected");
  return g;
}

std::vector<std::vector<int>> registrat_cluster(
    const std::vector<std::pair<int, RowSpace>>& reported, int radius) {
  std::vector<std::vector<int>> clusters;
  std::vector<bool> used(reported.size(), false);
  for (std::size_t i = 0; i < reported.size(); ++i) {
    if (used[i]) continue;
    std::vector<int> cluster{reported[i].first};
    used[i] = true;
    for (std::size_t j = i + 1; j < reported.size(); ++j) {
      if (used[j]) continue;
      if (subspace_distance(reported[i].second, reported[j].second) <= radius) {
        cluster.push_back(reported[j].first);
        used[j] = true;
      }
    }
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

std::vector<int> decide_algo1(const std::vector<std::pair<int, int>>& noninnovative_per_neighbor,
                              int k) {
  std::vector<int> flagged;
  for (auto [neighbor, count] : noninnovative_per_neighbor)
    if (count > k) flagged.push_back(neighbor);
  return flagged;
}

bool algo2_pair_vote(int joint_rate, int intersect_rate, double threshold) {
  if (joint_rate == 0) return intersect_rate > 0;
  return double(intersect_rate) / double(joint_rate) >= threshold;
}

bool decide_random(double p, Rng& rng) { return rng.bernoulli(p); }

namespace {

struct PairState {
  Eliminator joint;
  std::deque<std::pair<int, int>> history;  // (joint dim, intersection dim) per slot
  PairState(Field f, int amb) : joint(f, amb) {}
};

struct PeerState {
  Eliminator own;
  std::map<int, Eliminator> branch;   // per current neighbor
  std::map<int, int> noninnov;        // Algo1 counters
  std::map<int, int> window_rx;       // packets per neighbor since last check
  std::map<std::pair<int, int>, PairState> pairs;
  std::vector<int> bad;               // excluded from reallocation
  int first_packet = -1;
  int decoded = -1;
  long long received = 0;
  int votes = 0;
  PeerState(Field f, int amb) : own(f, amb) {}
};

struct RewireRequest {
  int peer;
  int drop;  // -1: registrat picks uniformly
  bool to_other_cluster = false;  // Algo3: leave the reported cluster
};

}  // namespace

SessionMetrics run_session(const SessionConfig& cfg) {
  const Field f = Field::make(cfg.q);
  Rng topo_rng(Rng::derive_seed(cfg.seed, 1));
  OverlayGraph g = make_clustered_overlay(cfg.topo, topo_rng);
  const int N = g.peers;
  const int source = 0;

  Rng registrat_rng(Rng::derive_seed(cfg.seed, 2));
  std::vector<Rng> coeff_rng, decide_rng;
  for (int v = 0; v < N; ++v) {
    coeff_rng.emplace_back(Rng::derive_seed(cfg.seed, 0x100000ull + v));
    decide_rng.emplace_back(Rng::derive_seed(cfg.seed, 0x200000ull + v));
  }

  std::vector<PeerState> peer;
  peer.reserve(N);
  for (int v = 0; v < N; ++v) peer.emplace_back(f, cfg.n);
  for (int v = 0; v < N; ++v)
    for (int u : g.adj[v]) {
      peer[v].branch.emplace(u, Eliminator(f, cfg.n));
      peer[v].noninnov.emplace(u, 0);
      for (int w : g.adj[v])
        if (u < w) peer[v].pairs.emplace(std::pair{u, w}, PairState(f, cfg.n));
    }

  SessionMetrics metrics;
  int decoded_count = 1;  // the source holds everything
  peer[source].decoded = 0;
  peer[source].first_packet = 0;

  auto pair_inter_dim = [&](PeerState& p, int a, int b) {
    const auto key = a < b ? std::pair{a, b} : std::pair{b, a};
    const auto it = p.pairs.find(key);
    const int joint = int(it->second.joint.dim());
    return int(p.branch.at(a).dim()) + int(p.branch.at(b).dim()) - joint;
  };

  std::vector<RewireRequest> queue;

  auto drop_neighbor_state = [&](int v, int u) {
    peer[v].branch.erase(u);
    peer[v].noninnov.erase(u);
    for (auto it = peer[v].pairs.begin(); it != peer[v].pairs.end();) {
      if (it->first.first == u || it->first.second == u)
        it = peer[v].pairs.erase(it);
      else
        ++it;
    }
  };
  auto add_neighbor_state = [&](int v, int u) {
    peer[v].branch.emplace(u, Eliminator(f, cfg.n));
    peer[v].noninnov.emplace(u, 0);
    for (int w : g.adj[v]) {
      if (w == u) continue;
      const auto key = w < u ? std::pair{w, u} : std::pair{u, w};
      PairState ps(f, cfg.n);
      // seed the pair union with what the standing neighbor already sent
      for (const auto& row : peer[v].branch.at(w).rows()) ps.joint.insert(row);
      peer[v].pairs.emplace(key, std::move(ps));
    }
  };

  auto unlink = [&](int a, int b) {
    auto& aa = g.adj[a];
    aa.erase(std::find(aa.begin(), aa.end(), b));
    auto& bb = g.adj[b];
    bb.erase(std::find(bb.begin(), bb.end(), a));
  };
  auto link = [&](int a, int b) {
    g.adj[a].insert(std::upper_bound(g.adj[a].begin(), g.adj[a].end(), b), b);
    g.adj[b].insert(std::upper_bound(g.adj[b].begin(), g.adj[b].end(), a), a);
  };

  // Registrat clustering of the latest Algo3 reports.
  std::vector<int> report_cluster(N, -1);
  std::vector<bool> reported_flag(N, false);

  auto execute = [&](const RewireRequest& rq) {
    const int v = rq.peer;
    // choose which neighbor to drop
    std::vector<int> droppable;
    for (int u : g.adj[v]) {
      if (int(g.adj[u].size()) - 1 < cfg.topo.min_degree) continue;
      if (rq.to_other_cluster &&
          !(report_cluster[u] >= 0 && report_cluster[u] == report_cluster[v]))
        continue;
      if (rq.drop >= 0 && u != rq.drop) continue;
      droppable.push_back(u);
    }
    if (droppable.empty()) return false;
    const int drop = droppable[registrat_rng.below(std::uint32_t(droppable.size()))];

    std::vector<int> eligible;
    for (int w = 0; w < N; ++w) {
      if (w == v || std::find(g.adj[v].begin(), g.adj[v].end(), w) != g.adj[v].end()) continue;
      if (int(g.adj[w].size()) + 1 > cfg.topo.max_degree) continue;
      if (std::find(peer[v].bad.begin(), peer[v].bad.end(), w) != peer[v].bad.end()) continue;
      if (rq.to_other_cluster && reported_flag[w] && report_cluster[w] == report_cluster[v])
        continue;
      eligible.push_back(w);
    }
    if (eligible.empty()) return false;  // rewire deferred, no alternative peer
    const int add = eligible[registrat_rng.below(std::uint32_t(eligible.size()))];

    unlink(v, drop);
    link(v, add);
    if (!g.connected()) {  // registrat refuses disconnecting rewires
      unlink(v, add);
      link(v, drop);
      return false;
    }
    drop_neighbor_state(v, drop);
    drop_neighbor_state(drop, v);
    add_neighbor_state(v, add);
    add_neighbor_state(add, v);
    return true;
  };

  // Shared-capacity accounting per cluster boundary. Only the generator's
  // bottleneck links share the physical pipe; links created by rewiring are
  // ordinary unit-capacity links.
  const int boundaries = std::max<std::size_t>(1, cfg.topo.cluster_sizes.size() - 1);
  std::vector<double> budget_carry(boundaries, 0.0);
  std::set<std::pair<int, int>> gated;
  for (auto [a, b] : g.bottlenecks) gated.insert({std::min(a, b), std::max(a, b)});

  int t = 1;
  for (; t <= cfg.horizon; ++t) {
    struct Delivery {
      int from, to;
      std::vector<felem> pkt;
    };
    std::vector<Delivery> deliveries;
    std::vector<std::vector<int>> crossing(boundaries);  // delivery indices per boundary

    for (int v = 0; v < N; ++v) {
      const bool may_send = v == source || int(peer[v].own.dim()) >= cfg.waiting_dimension;
      if (!may_send) continue;
      for (int u : g.adj[v]) {
        std::vector<felem> pkt(cfg.n, 0);
        if (v == source) {
          for (int i = 0; i < cfg.n; ++i) pkt[i] = f.sample(coeff_rng[v]);
        } else {
          for (const auto& row : peer[v].own.rows()) {
            const felem c = f.sample(coeff_rng[v]);
            if (c == 0) continue;
            for (int i = 0; i < cfg.n; ++i) pkt[i] = f.add(pkt[i], f.mul(c, row[i]));
          }
        }
        deliveries.push_back({v, u, std::move(pkt)});
        if (cfg.topo.shared_bottleneck_capacity > 0 &&
            gated.count({std::min(v, u), std::max(v, u)})) {
          const int b = std::min(g.cluster_of[v], g.cluster_of[u]);
          crossing[b].push_back(int(deliveries.size()) - 1);
        }
      }
    }

    // Enforce shared bottleneck capacity: keep only the slot's budget of
    // crossing packets, rotating the starting offset for fairness.
    std::vector<bool> dropped(deliveries.size(), false);
    if (cfg.topo.shared_bottleneck_capacity > 0) {
      for (int b = 0; b < boundaries; ++b) {
        budget_carry[b] += cfg.topo.shared_bottleneck_capacity;
        int allow = int(budget_carry[b]);
        budget_carry[b] -= allow;
        const auto& xs = crossing[b];
        if (int(xs.size()) <= allow) continue;
        const int start = int(t % std::max<std::size_t>(1, xs.size()));
        std::vector<bool> keep(xs.size(), false);
        for (int i = 0; i < allow; ++i) keep[(start + i) % xs.size()] = true;
        for (std::size_t i = 0; i < xs.size(); ++i)
          if (!keep[i]) dropped[xs[i]] = true;
      }
    }

    for (std::size_t di = 0; di < deliveries.size(); ++di) {
      if (dropped[di]) continue;
      auto& d = deliveries[di];
      PeerState& p = peer[d.to];
      if (d.to == source) continue;  // the source already has everything
      ++p.received;
      if (p.first_packet < 0) p.first_packet = t;
      const bool innovative = p.own.insert(d.pkt);
      if (auto it = p.branch.find(d.from); it != p.branch.end()) {
        it->second.insert(d.pkt);
        ++p.window_rx[d.from];
        if (!innovative) ++p.noninnov[d.from];
        for (int w : g.adj[d.to]) {
          if (w == d.from) continue;
          const auto key = w < d.from ? std::pair{w, d.from} : std::pair{d.from, w};
          if (auto pit = p.pairs.find(key); pit != p.pairs.end())
            pit->second.joint.insert(d.pkt);
        }
      }
      if (p.decoded < 0 && int(p.own.dim()) >= cfg.n) {
        p.decoded = t;
        ++decoded_count;
      }

      // per-packet decision rules
      if (p.decoded < 0) {
        if (cfg.algo == RewireAlgo::Random && decide_random(cfg.rewire_prob, decide_rng[d.to])) {
          queue.push_back({d.to, -1, false});
          ++metrics.rewire_requests;
        }
        if (cfg.algo == RewireAlgo::Algo1 && p.received % cfg.check_every_packets == 0) {
          std::vector<std::pair<int, int>> counters(p.noninnov.begin(), p.noninnov.end());
          for (int bad : decide_algo1(counters, cfg.k_noninnovative)) {
            queue.push_back({d.to, bad, false});
            ++metrics.rewire_requests;
            p.noninnov[bad] = 0;
            p.bad.push_back(bad);
          }
        }
      }
    }

    // voting: the growth rates are measured over a sliding window of
    // check_every_slots slots and evaluated every slot; votes accumulate
    // until the peer asks for a rewire
    if (cfg.algo == RewireAlgo::Algo2 || cfg.algo == RewireAlgo::Algo3) {
      for (int v = 0; v < N; ++v) {
        if (peer[v].decoded >= 0) continue;
        for (auto& [key, ps] : peer[v].pairs) {
          const int joint = int(ps.joint.dim());
          const int inter = pair_inter_dim(peer[v], key.first, key.second);
          ps.history.push_back({joint, inter});
          if (int(ps.history.size()) <= cfg.check_every_slots) continue;
          while (int(ps.history.size()) > cfg.check_every_slots + 1) ps.history.pop_front();
          const int joint_rate = joint - ps.history.front().first;
          const int inter_rate = inter - ps.history.front().second;
          const bool traffic = peer[v].window_rx[key.first] > 0 && peer[v].window_rx[key.second] > 0;
          if (joint_rate == 0 && inter_rate == 0 && !traffic) continue;  // idle pair
          // a pair whose packets keep arriving without growing the union is
          // pure redundancy: the other degenerate ratio case counts as exceed
          const bool stalled_redundant = traffic && joint_rate == 0 && inter_rate == 0;
          if (stalled_redundant ||
              algo2_pair_vote(joint_rate, inter_rate, cfg.ratio_threshold)) {
            ++peer[key.first].votes;
            ++peer[key.second].votes;
          }
        }
      }
      const int threshold =
          cfg.algo == RewireAlgo::Algo2 ? cfg.vote_threshold : cfg.vote_threshold_algo3;
      std::vector<std::pair<int, RowSpace>> reports;
      for (int v = 0; v < N; ++v) {
        if (v == source || peer[v].decoded >= 0) continue;
        if (peer[v].votes < threshold) continue;
        peer[v].votes = 0;
        if (cfg.algo == RewireAlgo::Algo2) {
          queue.push_back({v, -1, false});
          ++metrics.rewire_requests;
        } else {
          reports.push_back({v, RowSpace::from_eliminator(peer[v].own)});
          ++metrics.rewire_requests;
        }
      }
      if (cfg.algo == RewireAlgo::Algo3 && !reports.empty()) {
        reported_flag.assign(N, false);
        report_cluster.assign(N, -1);
        const auto clusters = registrat_cluster(reports, cfg.cluster_radius);
        for (std::size_t c = 0; c < clusters.size(); ++c)
          for (int v : clusters[c]) {
            report_cluster[v] = int(c);
            reported_flag[v] = true;
          }
        // The registrat breaks each detected cluster by rewiring only a
        // small number of its nodes per round.
        for (const auto& cluster : clusters) {
          int taken = 0;
          for (int v : cluster) {
            if (taken >= cfg.rewires_per_cluster) break;
            queue.push_back({v, -1, true});
            ++taken;
          }
        }
      }
    }

    // registrat resolves requests between slots
    for (const auto& rq : queue)
      if (execute(rq)) {
        ++metrics.total_rewirings;
        metrics.last_rewire_slot = t;
      }
    queue.clear();

    // cluster-distance sample mid-session
    if (cfg.sample_cluster_distances && t == std::max(4, cfg.n / 2)) {
      double intra = 0, inter = 0;
      long long intra_n = 0, inter_n = 0;
      for (int a = 1; a < N; ++a)
        for (int b = a + 1; b < N; ++b) {
          const RowSpace sa = RowSpace::from_eliminator(peer[a].own);
          const RowSpace sb = RowSpace::from_eliminator(peer[b].own);
          const int d = subspace_distance(sa, sb);
          if (g.cluster_of[a] == g.cluster_of[b]) {
            intra += d;
            ++intra_n;
          } else {
            inter += d;
            ++inter_n;
          }
        }
      metrics.intra_cluster_ds = intra_n ? intra / double(intra_n) : 0;
      metrics.inter_cluster_ds = inter_n ? inter / double(inter_n) : 0;
    }

    if (decoded_count == N) break;
  }

  metrics.slots = std::min(t, cfg.horizon);
  metrics.terminated = decoded_count == N;
  metrics.final_connected = g.connected();
  metrics.final_min_degree = N;
  metrics.final_max_degree = 0;
  for (int v = 0; v < N; ++v) {
    metrics.final_min_degree = std::min(metrics.final_min_degree, int(g.adj[v].size()));
    metrics.final_max_degree = std::max(metrics.final_max_degree, int(g.adj[v].size()));
  }
  double total = 0;
  int counted = 0;
  for (int v = 0; v < N; ++v) {
    if (v == source || peer[v].decoded < 0) continue;
    total += peer[v].decoded - peer[v].first_packet;
    ++counted;
  }
  metrics.avg_collection_time = counted ? total / counted : 0;
  return metrics;
}

nlohmann::json SessionMetrics::to_json() const {
  return {{"terminated", terminated},
          {"slots", slots},
          {"avg_collection_time", avg_collection_time},
          {"total_rewirings", total_rewirings},
          {"rewire_requests", rewire_requests},
          {"intra_cluster_ds", intra_cluster_ds},
          {"inter_cluster_ds", inter_cluster_ds},
          {"final_connected", final_connected},
          {"final_min_degree", final_min_degree},
          {"final_max_degree", final_max_degree}};
}

}  // namespace ncsim
