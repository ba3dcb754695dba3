#include <algorithm>
#include <set>

#include "doctest.h"
#include "ncsim/byzantine.hpp"

using namespace ncsim;

namespace {

// The two-receiver example network: S -> B -> {A, C}, A -> {D, R1},
// C -> {D, R2}, D -> {R1, R2}.
//   ids: S=0, B=1, A=2, C=3, D=4, R1=5, R2=6
Network fig6() {
  return Network::from_edges(7, 0,
                             {{0, 1, 1},
                              {1, 2, 1},
                              {1, 3, 1},
                              {2, 4, 1},
                              {2, 5, 1},
                              {3, 4, 1},
                              {3, 6, 1},
                              {4, 5, 1},
                              {4, 6, 1}},
                             {.check_rates = false});
}

int edge_id(const Network& net, int tail, int head) {
  for (std::size_t i = 0; i < net.edges().size(); ++i)
    if (net.edges()[i].tail == tail && net.edges()[i].head == head) return int(i);
  REQUIRE(false);
  return -1;
}

RunConfig basic(Network net, int n, std::uint64_t seed) {
  RunConfig cfg;
  cfg.net = std::move(net);
  cfg.n = n;
  cfg.field = Field::make(256);
  cfg.seed = seed;
  cfg.horizon = 60;
  return cfg;
}

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

TEST_CASE("adversarial run pollutes descendants and nothing else") {
  const Network net = fig6();
  AdversaryConfig adv;
  adv.attackers.push_back(
      {.node = 4, .delta = 1, .corrupted_edges = {edge_id(net, 4, 5), edge_id(net, 4, 6)}});
  RunConfig cfg = basic(net, 8, 11);
  cfg.horizon = 20;
  const Trace tr = run_adversarial(cfg, adv);
  const RowSpace pi_s = source_space(cfg.field, cfg.n, cfg.n + 1);
  // receivers see corruption, the attacker's ancestors do not
  CHECK(!pi_s.contains(tr.space(5, tr.slots())));
  CHECK(!pi_s.contains(tr.space(6, tr.slots())));
  CHECK(pi_s.contains(tr.space(2, tr.slots())));
  CHECK(pi_s.contains(tr.space(1, tr.slots())));
}

TEST_CASE("no attackers leaves the run identical to a plain one") {
  RunConfig cfg = basic(fig6(), 8, 13);
  const Trace a = run(cfg);
  const Trace b = run_adversarial(cfg, {});
  REQUIRE(a.slots() == b.slots());
  for (int v = 0; v < 7; ++v)
    for (int t = 0; t <= a.slots(); ++t) CHECK(a.space(v, t) == b.space(v, t));
}

TEST_CASE("attacker with every outgoing edge corrupted reaches all descendants") {
  const Network net = fig6();
  AdversaryConfig adv;
  adv.attackers.push_back(
      {.node = 1, .delta = 1, .corrupted_edges = {edge_id(net, 1, 2), edge_id(net, 1, 3)}});
  RunConfig cfg = basic(net, 8, 17);
  const Trace tr = run_adversarial(cfg, adv);
  const RowSpace pi_s = source_space(cfg.field, cfg.n, cfg.n + 1);
  for (int v : {2, 3, 4, 5, 6}) CHECK(!pi_s.contains(tr.space(v, tr.slots())));
}

TEST_CASE("attacker validation") {
  const Network net = fig6();
  AdversaryConfig adv;
  adv.attackers.push_back({.node = 0, .delta = 1, .corrupted_edges = {0}});
  CHECK_THROWS_AS(run_adversarial(basic(net, 8, 1), adv), AttackerIsSourceOrReceiver);
  adv.attackers[0] = {.node = 5, .delta = 1, .corrupted_edges = {0}};
  CHECK_THROWS_AS(run_adversarial(basic(net, 8, 1), adv), AttackerIsSourceOrReceiver);
}

TEST_CASE("receiver-only candidates on the worked examples") {
  const Network net = fig6();
  const int dr1 = edge_id(net, 4, 5), ar1 = edge_id(net, 2, 5);
  const int dr2 = edge_id(net, 4, 6), cr2 = edge_id(net, 3, 6);

  // corrupted on DR1, clean elsewhere: the attacker sits on D
  const auto ea = receiver_only_candidates(
      net, {{dr1, true}, {ar1, false}, {dr2, false}, {cr2, false}});
  CHECK(ea == std::vector<int>{dr1});

  // all receivers clean
  CHECK(receiver_only_candidates(net, {{dr1, false}, {ar1, false}, {dr2, false}, {cr2, false}})
            .empty());

  // line network: a corrupted receiver implicates every edge
  const Network line = make_line(5);
  const auto all = receiver_only_candidates(line, {{3, true}});
  CHECK(all.size() == line.edges().size());
}

TEST_CASE("splitting with truthful reports matches reachability") {
  const Network net = fig6();
  AdversaryConfig adv;
  adv.attackers.push_back({.node = 2,
                           .delta = 1,
                           .corrupted_edges = {edge_id(net, 2, 4), edge_id(net, 2, 5)},
                           .strategy = ReportStrategy::Truthful});
  RunConfig cfg = basic(net, 8, 19);
  const Trace tr = run_adversarial(cfg, adv);
  const RowSpace pi_s = source_space(cfg.field, cfg.n, cfg.n + 1);
  const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
  const EdgeSplit split = split_edges(net, rep, pi_s);

  // oracle: edges reachable from the corrupted pair
  std::set<int> expect{edge_id(net, 2, 4), edge_id(net, 2, 5)};
  for (std::size_t ei = 0; ei < net.edges().size(); ++ei)
    if (net.reaches(4, net.edges()[ei].tail)) expect.insert(int(ei));
  CHECK(std::set<int>(split.corrupted.begin(), split.corrupted.end()) == expect);
  for (int e : net.out_edges(0))
    CHECK(contains(split.clean, e));
}

TEST_CASE("info2 false-clean rate stays within the sampling bound") {
  const Network net = make_line(4);
  int false_clean = 0, corrupted_edges = 0;
  for (int s = 0; s < 300; ++s) {
    AdversaryConfig adv;
    adv.attackers.push_back(
        {.node = 1, .delta = 1, .corrupted_edges = {1}, .strategy = ReportStrategy::Truthful});
    RunConfig cfg = basic(net, 6, 2000 + s);
    cfg.horizon = 14;
    const Trace tr = run_adversarial(cfg, adv);
    const RowSpace pi_s = source_space(cfg.field, cfg.n, cfg.n + 1);
    const Reports full = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
    const Reports sampled = gather_reports(tr, adv, tr.slots(), InfoLevel::Sampled);
    const EdgeSplit split_full = split_edges(net, full, pi_s);
    const EdgeSplit split_sampled = split_edges(net, sampled, pi_s);
    for (int e : split_full.corrupted) {
      ++corrupted_edges;
      if (contains(split_sampled.clean, e)) ++false_clean;
    }
  }
  CHECK(double(false_clean) / double(corrupted_edges) <= 5.0 / 256.0);
}

TEST_CASE("single-adversary localization across the lying strategies") {
  const Network net = fig6();
  const RowSpace pi_s = source_space(Field::make(256), 8, 9);

  // partial corruption (two of three outgoing edges): unique identification
  {
    AdversaryConfig adv;
    adv.attackers.push_back({.node = 4, .delta = 1, .corrupted_edges = {edge_id(net, 4, 5)}});
    // node 4 has two outgoing edges; corrupt one and stay honest in reports
    adv.attackers[0].strategy = ReportStrategy::Truthful;
    const Trace tr = run_adversarial(basic(net, 8, 23), adv);
    const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
    const auto verdict = locate_single(net, split_edges(net, rep, source_space(Field::make(256), 8, 9)));
    REQUIRE(verdict.sets.size() == 1);
    CHECK(verdict.sets[0].nodes.size() <= 2);
    CHECK(contains(verdict.sets[0].nodes, 4));
  }

  // blame an incoming edge: pair {attacker, blamed parent}
  {
    AdversaryConfig adv;
    adv.attackers.push_back({.node = 4,
                             .delta = 1,
                             .corrupted_edges = {edge_id(net, 4, 5), edge_id(net, 4, 6)},
                             .strategy = ReportStrategy::BlameOneIncoming,
                             .blame_parent = 2});
    const Trace tr = run_adversarial(basic(net, 8, 29), adv);
    const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
    const auto verdict = locate_single(net, split_edges(net, rep, source_space(Field::make(256), 8, 9)));
    REQUIRE(verdict.sets.size() == 1);
    CHECK(verdict.sets[0].nodes == std::vector<int>{2, 4});
  }

  // corrupt one outgoing edge, claim clean: pair {attacker, that child}
  {
    AdversaryConfig adv;
    adv.attackers.push_back({.node = 2,
                             .delta = 1,
                             .corrupted_edges = {edge_id(net, 2, 4)},
                             .strategy = ReportStrategy::CorruptOneOutgoing});
    const Trace tr = run_adversarial(basic(net, 8, 31), adv);
    const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
    const auto verdict = locate_single(net, split_edges(net, rep, source_space(Field::make(256), 8, 9)));
    REQUIRE(verdict.sets.size() == 1);
    CHECK(verdict.sets[0].nodes == std::vector<int>{2, 4});
  }
  (void)pi_s;
}

TEST_CASE("shadow sets") {
  const Network net = fig6();
  // B corrupts both outgoing edges: everything downstream is in its shadow
  const auto shadow =
      shadow_set(net, 1, {edge_id(net, 1, 2), edge_id(net, 1, 3)});
  CHECK(shadow == std::vector<int>({2, 3, 4, 5, 6}));
  CHECK(shadow_set(net, 1, {}).empty());

  // monotone: more corrupted edges, larger shadow
  const auto partial = shadow_set(net, 1, {edge_id(net, 1, 2)});
  for (int v : partial) CHECK(contains(shadow, v));

  // line network: everything downstream of the attacker
  const Network line = make_line(5);
  CHECK(shadow_set(line, 1, {1}) == std::vector<int>({2, 3, 4}));
}

TEST_CASE("multiple adversaries via splitting") {
  const Network net = fig6();

  // A(=2) and C(=3) both corrupt everything; A truthful, C blames its parent
  {
    AdversaryConfig adv;
    adv.attackers.push_back({.node = 2,
                             .delta = 1,
                             .corrupted_edges = {edge_id(net, 2, 4), edge_id(net, 2, 5)},
                             .strategy = ReportStrategy::Truthful});
    adv.attackers.push_back({.node = 3,
                             .delta = 1,
                             .corrupted_edges = {edge_id(net, 3, 4), edge_id(net, 3, 6)},
                             .strategy = ReportStrategy::BlameOneIncoming,
                             .blame_parent = 1});
    const Trace tr = run_adversarial(basic(net, 8, 37), adv);
    const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
    const auto verdict =
        locate_multiple_splitting(net, split_edges(net, rep, source_space(Field::make(256), 8, 10)));
    std::set<int> named;
    for (const auto& s : verdict.sets)
      for (int v : s.nodes) named.insert(v);
    CHECK(named.count(2));
    CHECK(named.count(3));
  }

  // B(=1) attacker with D(=4) in its shadow: B found, D undetectable
  {
    AdversaryConfig adv;
    adv.attackers.push_back({.node = 1,
                             .delta = 1,
                             .corrupted_edges = {edge_id(net, 1, 2), edge_id(net, 1, 3)},
                             .strategy = ReportStrategy::BlameOneIncoming,
                             .blame_parent = 0});
    adv.attackers.push_back({.node = 4,
                             .delta = 1,
                             .corrupted_edges = {edge_id(net, 4, 5), edge_id(net, 4, 6)},
                             .strategy = ReportStrategy::Truthful});
    const Trace tr = run_adversarial(basic(net, 8, 41), adv);
    const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
    const auto verdict =
        locate_multiple_splitting(net, split_edges(net, rep, source_space(Field::make(256), 8, 10)));
    bool found_b = false;
    for (const auto& s : verdict.sets)
      if (s.nodes == std::vector<int>{1} && s.flag == VerdictFlag::Exact) found_b = true;
    CHECK(found_b);
    CHECK(contains(verdict.undetectable, 4));
  }
}

TEST_CASE("subset method") {
  const Network net = fig6();
  const RowSpace pi_s9 = source_space(Field::make(256), 8, 9);

  // single truthful attacker: ambiguity within {A} ∪ children(A)
  {
    AdversaryConfig adv;
    adv.attackers.push_back({.node = 2,
                             .delta = 1,
                             .corrupted_edges = {edge_id(net, 2, 4), edge_id(net, 2, 5)},
                             .strategy = ReportStrategy::Truthful});
    const Trace tr = run_adversarial(basic(net, 8, 43), adv);
    const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
    const auto verdict = locate_subset_method(net, rep, pi_s9);
    REQUIRE(verdict.sets.size() == 1);
    std::set<int> allowed{2, 4, 5};  // A and its children (R1 is a child here)
    allowed.insert(1);               // parent, depending on the report
    for (int v : verdict.sets[0].nodes) CHECK(allowed.count(v));
    CHECK(contains(verdict.sets[0].nodes, 2));
  }

  // no attacker: empty verdict
  {
    const Trace tr = run(basic(net, 8, 47));
    const Reports rep = gather_reports(tr, {}, tr.slots(), InfoLevel::Full);
    const auto verdict = locate_subset_method(net, rep, source_space(Field::make(256), 8, 8));
    CHECK(verdict.sets.empty());
  }
}

TEST_CASE("subset method separates attackers at distance three") {
  // line with a branch: S=0 -> 1 -> 2 -> 3 -> 4 -> 5(R); attackers at 1 and 4
  const Network line = make_line(6);
  int both = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    AdversaryConfig adv;
    adv.attackers.push_back(
        {.node = 1, .delta = 1, .corrupted_edges = {1}, .strategy = ReportStrategy::Truthful});
    adv.attackers.push_back(
        {.node = 4, .delta = 1, .corrupted_edges = {4}, .strategy = ReportStrategy::Truthful});
    RunConfig cfg = basic(line, 8, 5000 + s);
    cfg.horizon = 30;
    const Trace tr = run_adversarial(cfg, adv);
    const Reports rep = gather_reports(tr, adv, tr.slots(), InfoLevel::Full);
    const auto verdict = locate_subset_method(line, rep, source_space(Field::make(256), 8, 10));
    if (verdict.sets.size() != 2) continue;
    bool ok = true;
    std::set<int> a1{0, 1, 2}, a2{3, 4, 5};
    for (const auto& set : verdict.sets) {
      const bool in1 = std::all_of(set.nodes.begin(), set.nodes.end(),
                                   [&](int v) { return a1.count(v); });
      const bool in2 = std::all_of(set.nodes.begin(), set.nodes.end(),
                                   [&](int v) { return a2.count(v); });
      if (!(in1 || in2)) ok = false;
      if (set.overlap) ok = false;
    }
    bool has1 = false, has4 = false;
    for (const auto& set : verdict.sets) {
      has1 |= contains(set.nodes, 1);
      has4 |= contains(set.nodes, 4);
    }
    if (ok && has1 && has4) ++both;
  }
  CHECK(double(both) / seeds >= 0.95);
}
