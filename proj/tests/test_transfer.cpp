#include <algorithm>

#include "doctest.h"
#include "ncsim/transfer.hpp"

using namespace ncsim;

namespace {

RunConfig basic(Network net, int n, std::uint64_t seed) {
  RunConfig cfg;
  cfg.net = std::move(net);
  cfg.n = n;
  cfg.field = Field::make(256);
  cfg.seed = seed;
  cfg.horizon = 100;
  return cfg;
}

void check_oracle_matches(const Trace& tr) {
  TransferOracle oracle(tr);
  const Network& net = tr.config().net;
  for (int v = 0; v < net.node_count(); ++v) {
    if (v == net.source()) continue;
    for (int t = 1; t <= tr.slots(); ++t) {
      const Mat h = oracle.at(v, t);
      CHECK(RowSpace::span(h) == tr.received_at(v, t));
    }
  }
}

}  // namespace

TEST_CASE("transfer matrix is empty before traffic reaches a node") {
  const Trace tr = run(basic(make_line(3), 6, 1));
  TransferOracle oracle(tr);
  CHECK(oracle.at(2, 1).rows == 0);  // two hops away, nothing at t=1
}

TEST_CASE("oracle row spaces equal simulator received spaces exactly") {
  Rng rng(42);
  // lines, the fig.2 tree, a diamond, and random dags
  check_oracle_matches(run(basic(make_line(2), 5, 11)));
  check_oracle_matches(run(basic(make_line(4), 9, 12)));
  check_oracle_matches(
      run(basic(Network::from_edges(4, 0, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}}), 6, 13)));
  check_oracle_matches(run(basic(
      Network::from_edges(4, 0, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}}), 8, 14)));
  for (int i = 0; i < 4; ++i)
    check_oracle_matches(run(basic(make_random_dag(6 + i, 0.4, 2, rng), 16, 20 + i)));
}

TEST_CASE("stacked transfer rank tracks collected dimensions") {
  const Trace tr = run(basic(make_line(3), 8, 3));
  TransferOracle oracle(tr);
  for (int t = 1; t <= tr.slots(); ++t) {
    for (int v = 1; v < 3; ++v)
      CHECK(int(RowSpace::span(oracle.stacked(v, t)).dim()) == tr.dim(v, t));
  }
}

TEST_CASE("steady-window stacked rank reaches k*c_v with high frequency") {
  // Schwartz-Zippel-style bound check: over a window of k slots in steady
  // state the k*c_v received rows are full rank except with O(1/q) frequency.
  const int runs = 300, k = 2;
  int full = 0;
  for (int s = 0; s < runs; ++s) {
    const Trace tr = run(basic(make_line(3), 12, 500 + s));
    const SteadyState ss = steady_state(tr);
    REQUIRE(ss.attained);
    const int T = ss.t_s + 1;
    TransferOracle oracle(tr);
    Eliminator e(tr.config().field, 12);
    int rows = 0;
    for (int t = T; t < T + k; ++t) {
      const Mat h = oracle.at(2, t);
      for (std::size_t r = 0; r < h.rows; ++r) {
        e.insert(h.row(r));
        ++rows;
      }
    }
    if (int(e.dim()) == rows && rows == k * 1) ++full;
  }
  // bound: 1 - k*c_v*(T+k)*theta_c/q with theta_c = sum of min-cuts = 2,
  // T <= 5 here, q = 256 -> allow a generous 1 - 28/256
  CHECK(double(full) / runs >= 1.0 - 28.0 / 256.0);
}

TEST_CASE("oracle requires the coefficient log") {
  RunConfig cfg = basic(make_line(2), 4, 9);
  cfg.record.coefficients = false;
  const Trace tr = run(cfg);
  CHECK_THROWS_AS(TransferOracle{tr}, CoefficientLogMissing);
}
