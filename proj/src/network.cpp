#include "ncsim/network.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>

namespace ncsim {
namespace {

// Edmonds-Karp max-flow on an explicit residual graph. Node -1 in `from`
// means "super source connected to from_set with infinite capacity".
struct FlowGraph {
  struct Arc {
    int to;
    int cap;
    int rev;
    int orig_edge;  // index into Network::edges(), -1 for helper arcs
  };
  std::vector<std::vector<Arc>> adj;

  explicit FlowGraph(int n) : adj(n) {}

  void add(int u, int v, int cap, int orig = -1) {
    adj[u].push_back({v, cap, int(adj[v].size()), orig});
    adj[v].push_back({u, 0, int(adj[u].size()) - 1, -1});
  }

  int max_flow(int s, int t) {
    int flow = 0;
    for (;;) {
      std::vector<std::pair<int, int>> pred(adj.size(), {-1, -1});
      std::deque<int> q{s};
      pred[s] = {s, -1};
      while (!q.empty() && pred[t].first == -1) {
        int u = q.front();
        q.pop_front();
        for (std::size_t i = 0; i < adj[u].size(); ++i) {
          const Arc& a = adj[u][i];
          if (a.cap > 0 && pred[a.to].first == -1) {
            pred[a.to] = {u, int(i)};
            q.push_back(a.to);
          }
        }
      }
      if (pred[t].first == -1) break;
      int aug = std::numeric_limits<int>::max();
      for (int v = t; v != s;) {
        auto [u, i] = pred[v];
        aug = std::min(aug, adj[u][i].cap);
        v = u;
      }
      for (int v = t; v != s;) {
        auto [u, i] = pred[v];
        adj[u][i].cap -= aug;
        adj[adj[u][i].to][adj[u][i].rev].cap += aug;
        v = u;
      }
      flow += aug;
    }
    return flow;
  }

  // After max_flow: residual-reachable set from s.
  std::vector<bool> reachable(int s) const {
    std::vector<bool> vis(adj.size(), false);
    std::deque<int> q{s};
    vis[s] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (const Arc& a : adj[u])
        if (a.cap > 0 && !vis[a.to]) {
          vis[a.to] = true;
          q.push_back(a.to);
        }
    }
    return vis;
  }
};

}  // namespace

Network Network::from_edges(int nodes, int source, std::vector<Edge> edges,
                            ValidateOptions opts) {
  if (nodes <= 0) throw BadConfig("network must have at least one node");
  if (source < 0 || source >= nodes) throw BadConfig("source id out of range");
  for (const auto& e : edges) {
    if (e.tail < 0 || e.tail >= nodes || e.head < 0 || e.head >= nodes)
      throw BadConfig("edge endpoint out of range");
    if (e.rate <= 0) throw BadConfig("edge rates must be positive integers");
    if (e.tail == e.head) throw CycleDetected("self loop on node " + std::to_string(e.tail));
  }
  Network net;
  net.nodes_ = nodes;
  net.source_ = source;
  net.edges_ = std::move(edges);
  net.build_indices();

  for (int v = 0; v < nodes; ++v)
    if (v != source && !net.reach_[source][v])
      throw UnreachableNode("node " + std::to_string(v) + " unreachable from the source");

  // Rate constraint r_e <= min[c_e, c_tail(e)]; c_tail is the min-cut from
  // the source over the rate-capacitated graph.
  for (std::size_t i = 0; i < net.edges_.size(); ++i) {
    const Edge& e = net.edges_[i];
    if (e.tail == source) continue;
    if (e.rate > net.mincut_[e.tail]) {
      if (opts.check_rates)
        throw RateViolation(e.tail, e.head,
                            "edge " + std::to_string(e.tail) + "->" + std::to_string(e.head) +
                                " rate " + std::to_string(e.rate) + " exceeds tail min-cut " +
                                std::to_string(net.mincut_[e.tail]));
      net.rate_violations_.push_back(e);
    }
  }
  return net;
}

void Network::build_indices() {
  out_.assign(nodes_, {});
  in_.assign(nodes_, {});
  // Canonical edge order: by (tail, head).
  std::vector<int> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::pair(edges_[a].tail, edges_[a].head) < std::pair(edges_[b].tail, edges_[b].head);
  });
  std::vector<Edge> sorted;
  sorted.reserve(edges_.size());
  for (int i : order) sorted.push_back(edges_[i]);
  edges_ = std::move(sorted);

  parents_.assign(nodes_, {});
  children_.assign(nodes_, {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_[edges_[i].tail].push_back(int(i));
    in_[edges_[i].head].push_back(int(i));
    auto& ps = parents_[edges_[i].head];
    if (std::find(ps.begin(), ps.end(), edges_[i].tail) == ps.end())
      ps.push_back(edges_[i].tail);
    auto& cs = children_[edges_[i].tail];
    if (std::find(cs.begin(), cs.end(), edges_[i].head) == cs.end())
      cs.push_back(edges_[i].head);
  }
  for (auto& ps : parents_) std::sort(ps.begin(), ps.end());
  for (auto& cs : children_) std::sort(cs.begin(), cs.end());

  // Kahn topological order; failing to consume all nodes means a cycle.
  std::vector<int> indeg(nodes_, 0);
  for (const auto& e : edges_) ++indeg[e.head];
  std::deque<int> q;
  for (int v = 0; v < nodes_; ++v)
    if (indeg[v] == 0) q.push_back(v);
  topo_.clear();
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    topo_.push_back(u);
    for (int ei : out_[u])
      if (--indeg[edges_[ei].head] == 0) q.push_back(edges_[ei].head);
  }
  if (int(topo_.size()) != nodes_) throw CycleDetected("graph contains a directed cycle");

  reach_.assign(nodes_, std::vector<bool>(nodes_, false));
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    int u = *it;
    reach_[u][u] = true;
    for (int ei : out_[u]) {
      int h = edges_[ei].head;
      for (int v = 0; v < nodes_; ++v)
        if (reach_[h][v]) reach_[u][v] = true;
    }
  }

  // Shortest distance labels and longest path length from the source.
  levels_.assign(nodes_, -1);
  levels_[source_] = 0;
  std::deque<int> bq{source_};
  while (!bq.empty()) {
    int u = bq.front();
    bq.pop_front();
    for (int ei : out_[u]) {
      int h = edges_[ei].head;
      if (levels_[h] == -1) {
        levels_[h] = levels_[u] + 1;
        bq.push_back(h);
      }
    }
  }
  std::vector<int> longest(nodes_, std::numeric_limits<int>::min());
  longest[source_] = 0;
  for (int u : topo_) {
    if (longest[u] == std::numeric_limits<int>::min()) continue;
    for (int ei : out_[u])
      longest[edges_[ei].head] = std::max(longest[edges_[ei].head], longest[u] + 1);
  }
  longest_ = 0;
  for (int v = 0; v < nodes_; ++v)
    if (longest[v] != std::numeric_limits<int>::min()) longest_ = std::max(longest_, longest[v]);

  mincut_.assign(nodes_, 0);
  for (int v = 0; v < nodes_; ++v) {
    if (v == source_) continue;
    mincut_[v] = min_cut({source_}, v).value;
  }
}

int Network::min_cut(int v) const {
  if (v == source_) return 0;
  return mincut_[v];
}

CutReport Network::min_cut(const std::vector<int>& from_set, int to) const {
  for (int f : from_set)
    if (f == to) throw BadConfig("min-cut target inside the from set");
  const int super = nodes_;
  FlowGraph g(nodes_ + 1);
  for (std::size_t i = 0; i < edges_.size(); ++i)
    g.add(edges_[i].tail, edges_[i].head, edges_[i].rate, int(i));
  const int inf = std::numeric_limits<int>::max() / 4;
  for (int f : from_set) g.add(super, f, inf);
  CutReport rep;
  rep.value = g.max_flow(super, to);
  const auto vis = g.reachable(super);
  for (int u = 0; u <= nodes_; ++u) {
    if (!vis[u]) continue;
    for (const auto& a : g.adj[u])
      if (a.orig_edge >= 0 && a.cap == 0 && !vis[a.to]) rep.saturated_edges.push_back(a.orig_edge);
  }
  std::sort(rep.saturated_edges.begin(), rep.saturated_edges.end());
  rep.saturated_edges.erase(std::unique(rep.saturated_edges.begin(), rep.saturated_edges.end()),
                            rep.saturated_edges.end());
  return rep;
}

int Network::min_cut_to_set(int from, const std::vector<int>& to_set) const {
  for (int t : to_set)
    if (t == from) return std::numeric_limits<int>::max() / 4;  // source inside the set
  const int super_s = nodes_, super_t = nodes_ + 1;
  FlowGraph g(nodes_ + 2);
  for (const auto& e : edges_) g.add(e.tail, e.head, e.rate);
  const int inf = std::numeric_limits<int>::max() / 4;
  g.add(super_s, from, inf);
  for (int t : to_set) g.add(t, super_t, inf);
  return g.max_flow(super_s, super_t);
}

std::vector<int> Network::ancestors_at(int u, int l) const {
  // paths[w] = set of path lengths w -> u, found by walking backwards.
  std::vector<std::set<int>> lens(nodes_);
  lens[u].insert(0);
  // Process nodes in reverse topological order starting from u.
  for (auto it = std::find(topo_.rbegin(), topo_.rend(), u); it != topo_.rend(); ++it) {
    int w = *it;
    if (lens[w].empty()) continue;
    for (int ei : in_[w]) {
      int p = edges_[ei].tail;
      for (int d : lens[w])
        if (d + 1 <= l) lens[p].insert(d + 1);
    }
  }
  std::vector<int> result;
  for (int w = 0; w < nodes_; ++w)
    if (w != u && lens[w].count(l)) result.push_back(w);
  return result;
}

std::vector<int> Network::sinks() const {
  std::vector<int> r;
  for (int v = 0; v < nodes_; ++v)
    if (out_[v].empty()) r.push_back(v);
  return r;
}

IdentifiabilityReport Network::identifiability_check() const {
  IdentifiabilityReport rep;
  const int max_level = nodes_;  // path lengths are bounded by the node count
  std::vector<std::vector<std::vector<int>>> anc(nodes_);
  for (int v = 0; v < nodes_; ++v) {
    anc[v].resize(max_level + 1);
    for (int l = 1; l <= max_level; ++l) anc[v][l] = ancestors_at(v, l);
  }
  for (int u = 0; u < nodes_; ++u) {
    if (u == source_) continue;
    for (int v = u + 1; v < nodes_; ++v) {
      if (v == source_) continue;
      for (int l = 1; l <= max_level; ++l) {
        if (anc[u][l].empty() || anc[u][l] != anc[v][l]) continue;
        const std::vector<int>& pl = anc[u][l];
        PairVerdict pv;
        pv.u = u;
        pv.v = v;
        pv.level = l;
        pv.cut_to_u = min_cut(pl, u).value;
        pv.cut_to_v = min_cut(pl, v).value;
        pv.cut_from_source = min_cut_to_set(source_, pl);
        pv.holds = pv.cut_to_u <= pv.cut_from_source && pv.cut_to_v <= pv.cut_from_source;
        if (!pv.holds) rep.all_hold = false;
        rep.pairs.push_back(pv);
      }
    }
  }
  return rep;
}

Network Network::from_json(const nlohmann::json& j, ValidateOptions opts) {
  std::vector<Edge> edges;
  for (const auto& je : j.at("edges"))
    edges.push_back({je.at("tail").get<int>(), je.at("head").get<int>(),
                     je.value("rate", 1)});
  return from_edges(j.at("nodes").get<int>(), j.at("source").get<int>(), std::move(edges), opts);
}

nlohmann::json Network::to_json() const {
  nlohmann::json j;
  j["nodes"] = nodes_;
  j["source"] = source_;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges_)
    j["edges"].push_back({{"tail", e.tail}, {"head", e.head}, {"rate", e.rate}});
  return j;
}

Network make_line(int nodes, int rate) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < nodes; ++v) edges.push_back({v, v + 1, rate});
  return Network::from_edges(nodes, 0, std::move(edges));
}

Network make_random_tree(int depth, int branching, int rate, Rng& rng) {
  std::vector<Edge> edges;
  std::vector<int> frontier{0};
  int next_id = 1;
  for (int d = 0; d < depth; ++d) {
    std::vector<int> next;
    for (int u : frontier) {
      const int kids = 1 + int(rng.below(std::uint32_t(branching)));
      for (int c = 0; c < kids; ++c) {
        edges.push_back({u, next_id, rate});
        next.push_back(next_id);
        ++next_id;
      }
    }
    frontier = std::move(next);
  }
  return Network::from_edges(next_id, 0, std::move(edges));
}

Network make_random_dag(int nodes, double density, int max_rate, Rng& rng) {
  std::vector<Edge> edges;
  for (int v = 1; v < nodes; ++v) {
    bool has_parent = false;
    for (int u = 0; u < v; ++u) {
      if (rng.unit() < density) {
        edges.push_back({u, v, 1});
        has_parent = true;
      }
    }
    if (!has_parent) edges.push_back({int(rng.below(std::uint32_t(v))), v, 1});
  }
  // Raise some rates where the constraint allows it; recheck via validation.
  Network base = Network::from_edges(nodes, 0, edges);
  if (max_rate > 1) {
    std::vector<Edge> boosted = base.edges();
    for (auto& e : boosted) {
      const int cap = e.tail == 0 ? max_rate : std::min(max_rate, base.min_cut(e.tail));
      if (cap > 1) e.rate = 1 + int(rng.below(std::uint32_t(cap)));
    }
    // Raising rates can only raise min-cuts, so tail cuts stay sufficient,
    // but validate again to be safe.
    return Network::from_edges(nodes, 0, std::move(boosted));
  }
  return base;
}

Network make_clustered_dag(const std::vector<int>& sizes, int intra_degree,
                           int bottleneck_links, int bottleneck_rate, Rng& rng) {
  if (sizes.empty()) throw BadConfig("clustered generator needs at least one cluster");
  std::vector<Edge> edges;
  std::vector<std::vector<int>> clusters;
  int id = 0;
  for (int s : sizes) {
    if (s < 2) throw InfeasibleDegreeConstraints("cluster sizes must be at least 2");
    std::vector<int> c(s);
    for (int i = 0; i < s; ++i) c[i] = id++;
    clusters.push_back(std::move(c));
  }
  // Within a cluster: a spine plus random forward chords up to intra_degree.
  std::set<std::pair<int, int>> seen;
  auto push_unique = [&](int u, int v, int rate) {
    if (seen.insert({u, v}).second) edges.push_back({u, v, rate});
  };
  for (const auto& c : clusters) {
    for (std::size_t i = 0; i + 1 < c.size(); ++i) push_unique(c[i], c[i + 1], 1);
    for (std::size_t i = 0; i + 2 < c.size(); ++i) {
      for (int d = 1; d < intra_degree; ++d) {
        const std::size_t j = i + 2 + rng.below(std::uint32_t(c.size() - i - 2));
        if (rng.unit() < 0.5) push_unique(c[i], c[j], 1);
      }
    }
  }
  // Consecutive clusters joined only through exactly `bottleneck_links`
  // distinct edges; the first one lands on the next spine's start so the
  // whole cluster stays reachable.
  for (std::size_t k = 0; k + 1 < clusters.size(); ++k) {
    const auto& a = clusters[k];
    const auto& b = clusters[k + 1];
    if (std::uint64_t(bottleneck_links) > std::uint64_t(a.size()) * b.size())
      throw InfeasibleDegreeConstraints("more bottleneck links than node pairs");
    std::set<std::pair<int, int>> picked;
    picked.insert({a[rng.below(std::uint32_t(a.size()))], b[0]});
    while (int(picked.size()) < bottleneck_links)
      picked.insert({a[rng.below(std::uint32_t(a.size()))],
                     b[rng.below(std::uint32_t(b.size()))]});
    for (auto [u, v] : picked) push_unique(u, v, bottleneck_rate);
  }
  // Lenient validation: bottleneck placement may produce rate slack
  // violations which do not matter for overlay experiments.
  return Network::from_edges(id, 0, std::move(edges), {.check_rates = false});
}

}  // namespace ncsim
