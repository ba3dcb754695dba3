#include "ncsim/lemmas.hpp"

#include <algorithm>
#include <cmath>

#include "ncsim/dissemination.hpp"
#include "ncsim/linalg.hpp"

namespace ncsim {
namespace {

RowSpace coordinate_span(const Field& f, int n, int from, int count) {
  Mat m(f, count, n);
  for (int i = 0; i < count; ++i) m.at(i, from + i) = 1;
  return RowSpace::span(m);
}

int sampled_rank(const RowSpace& space, int m, Rng& rng) {
  const Mat draws = space.sample(std::size_t(m), rng);
  Eliminator e(space.field(), space.ambient());
  for (std::size_t r = 0; r < draws.rows; ++r) e.insert(draws.row(r));
  return int(e.dim());
}

}  // namespace

std::vector<SuiteResult> suite_full_rank(std::uint32_t q, int trials, std::uint64_t seed) {
  const Field f = Field::make(q);
  const int n = 8;
  std::vector<SuiteResult> out;
  int idx = 0;
  for (int m : {4, 8, 12}) {
    Rng rng(Rng::derive_seed(seed, 0x4C31u + idx++));
    const RowSpace full = RowSpace::full(f, n);
    int hit = 0;
    for (int tr = 0; tr < trials; ++tr)
      hit += sampled_rank(full, m, rng) == std::min(m, n);
    SuiteResult r;
    r.name = "full_rank n=8 m=" + std::to_string(m);
    r.trials = trials;
    r.observed = double(hit) / trials;
    r.bound = 1.0 - 5.0 / double(q);
    r.upper = false;
    r.pass = r.observed >= r.bound;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SuiteResult> suite_subset_capture(std::uint32_t q, int trials, std::uint64_t seed) {
  const Field f = Field::make(q);
  const int n = 6;
  // Π1 = <e1,e2>, Π2 = <e1,e3>: intersection <e1>, so Π1 ⊄ Π2.
  Mat m1(f, 2, n), m2(f, 2, n);
  m1.at(0, 0) = 1;
  m1.at(1, 1) = 1;
  m2.at(0, 0) = 1;
  m2.at(1, 2) = 1;
  const RowSpace p1 = RowSpace::span(m1), p2 = RowSpace::span(m2);

  std::vector<SuiteResult> out;
  int idx = 0;
  for (int m : {1, 2}) {
    Rng rng(Rng::derive_seed(seed, 0x4C32u + idx++));
    int captured = 0;
    for (int tr = 0; tr < trials; ++tr) {
      const Mat draws = p1.sample(std::size_t(m), rng);
      bool all_in = true;
      for (std::size_t r = 0; r < draws.rows; ++r)
        if (!p2.contains(draws.row(r))) all_in = false;
      captured += all_in;
    }
    SuiteResult r;
    r.name = "subset_capture m=" + std::to_string(m);
    r.trials = trials;
    r.observed = double(captured) / trials;
    r.bound = 5.0 * std::pow(double(q), -m);
    r.upper = true;
    r.pass = r.observed <= r.bound;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SuiteResult> suite_intersection_dim(std::uint32_t q, int trials, std::uint64_t seed) {
  const Field f = Field::make(q);
  const int n = 8;
  std::vector<SuiteResult> out;
  int idx = 0;
  for (int k : {2, 4, 6}) {
    for (int m : {3, 8, 12}) {
      Rng rng(Rng::derive_seed(seed, 0x4C33u + idx++));
      const RowSpace pk = coordinate_span(f, n, 0, k);
      const RowSpace full = RowSpace::full(f, n);
      const int expected = std::max(std::min(m, n) + k - n, 0);
      int hit = 0;
      for (int tr = 0; tr < trials; ++tr) {
        const RowSpace pi = RowSpace::span(full.sample(std::size_t(m), rng));
        hit += int(pi.intersect(pk).dim()) == expected;
      }
      SuiteResult r;
      r.name = "intersection_dim k=" + std::to_string(k) + " m=" + std::to_string(m);
      r.trials = trials;
      r.observed = double(hit) / trials;
      r.bound = 1.0 - 5.0 / double(q);
      r.upper = false;
      r.pass = r.observed >= r.bound;
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<SuiteResult> suite_joint_sampling(std::uint32_t q, int trials, std::uint64_t seed) {
  const Field f = Field::make(q);
  const int n = 10, d1 = 4, d2 = 5, d12 = 2;
  // Π1 spans coordinates [0, d1); Π2 spans [d1-d12, d1-d12+d2): overlap d12.
  const RowSpace p1 = coordinate_span(f, n, 0, d1);
  const RowSpace p2 = coordinate_span(f, n, d1 - d12, d2);

  std::vector<SuiteResult> out;
  int idx = 0;
  for (int m1 : {2, 4}) {
    for (int m2 : {3, 5}) {
      Rng rng(Rng::derive_seed(seed, 0x4C34u + idx++));
      const int expected = std::min(
          {d12, std::max(m1 + m2 - (d1 + d2 - d12), 0), std::max(m1 - (d1 - d12), 0),
           std::max(m2 - (d2 - d12), 0)});
      int hit = 0;
      for (int tr = 0; tr < trials; ++tr) {
        const RowSpace s1 = RowSpace::span(p1.sample(std::size_t(m1), rng));
        const RowSpace s2 = RowSpace::span(p2.sample(std::size_t(m2), rng));
        hit += int(s1.intersect(s2).dim()) == expected;
      }
      SuiteResult r;
      r.name = "joint_sampling m1=" + std::to_string(m1) + " m2=" + std::to_string(m2);
      r.trials = trials;
      r.observed = double(hit) / trials;
      r.bound = 1.0 - 5.0 / double(q);
      r.upper = false;
      r.pass = r.observed >= r.bound;
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<SuiteResult> suite_general_position(std::uint32_t q, int trials, std::uint64_t seed) {
  const Field f = Field::make(q);
  const int n = 8, m = 4, r_count = 3;
  const RowSpace family[3] = {coordinate_span(f, n, 0, 2), coordinate_span(f, n, 2, 4),
                              coordinate_span(f, n, 1, 6)};
  Rng rng(Rng::derive_seed(seed, 0x4C35u));
  const RowSpace full = RowSpace::full(f, n);
  int hit = 0;
  for (int tr = 0; tr < trials; ++tr) {
    const RowSpace pi = RowSpace::span(full.sample(std::size_t(m), rng));
    const int d = int(pi.dim());
    bool general = true;
    for (const auto& fam : family) {
      const int expected = std::max(int(fam.dim()) + d - n, 0);
      if (int(fam.intersect(pi).dim()) != expected) general = false;
    }
    hit += general;
  }
  SuiteResult r;
  r.name = "general_position r=3 m=4";
  r.trials = trials;
  r.observed = double(hit) / trials;
  r.bound = 1.0 - 5.0 * r_count / double(q);
  r.upper = false;
  r.pass = r.observed >= r.bound;
  return {r};
}

std::vector<SuiteResult> suite_steady_state(std::uint32_t q, int runs, std::uint64_t seed) {
  int bound_ok = 0;
  long long window_slots = 0, at_rate = 0;
  Rng gen_rng(Rng::derive_seed(seed, 0x4C36u));
  for (int i = 0; i < runs; ++i) {
    const int nodes = 5 + int(gen_rng.below(8));  // up to 12
    const Network net = make_random_dag(nodes, 0.22, 1, gen_rng);
    int c_max = 1;
    for (int v = 1; v < nodes; ++v) c_max = std::max(c_max, net.min_cut(v));
    RunConfig cfg;
    cfg.net = net;
    cfg.field = Field::make(q);
    // Comfortably above the sufficient condition 2D-1 < floor(n/c_max), so
    // the steady window is long enough for a stable rate estimate.
    cfg.n = c_max * (2 * net.longest_path() + 12);
    cfg.horizon = 4 * cfg.n + 50;
    cfg.seed = Rng::derive_seed(seed, 0x524E00u + i);
    cfg.record.spaces = false;
    cfg.record.branches = false;
    cfg.record.coefficients = false;
    const Trace tr = run(cfg);
    const SteadyState ss = steady_state(tr);
    if (ss.attained && ss.t_s <= 2 * net.longest_path() - 1) ++bound_ok;
    window_slots += ss.window_node_slots;
    at_rate += ss.window_at_rate;
  }
  SuiteResult bound;
  bound.name = "steady_state_bound T_s<=2D-1";
  bound.trials = runs;
  bound.observed = double(bound_ok) / runs;
  bound.bound = 1.0;
  bound.upper = false;
  bound.pass = bound_ok == runs;
  SuiteResult rate;
  rate.name = "steady_state_innovation_rate";
  rate.trials = window_slots;
  rate.observed = window_slots ? double(at_rate) / double(window_slots) : 0.0;
  rate.bound = 0.99;
  rate.upper = false;
  rate.pass = rate.observed >= rate.bound;
  return {bound, rate};
}

std::vector<SuiteResult> run_all_suites(std::uint32_t q, int trials, std::uint64_t seed) {
  std::vector<SuiteResult> all;
  for (auto&& batch :
       {suite_full_rank(q, trials, seed), suite_subset_capture(q, trials, seed),
        suite_intersection_dim(q, trials, seed), suite_joint_sampling(q, trials, seed),
        suite_general_position(q, trials, seed),
        suite_steady_state(256, std::min(trials, 50), seed)})
    for (auto& r : batch) all.push_back(std::move(r));
  return all;
}

}  // namespace ncsim
