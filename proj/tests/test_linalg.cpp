#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "ncsim/counting.hpp"
#include "ncsim/linalg.hpp"
#include "ncsim/serialize.hpp"

using namespace ncsim;

namespace {

Mat from_rows(const Field& f, const std::vector<std::vector<felem>>& rows) {
  Mat m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
  return m;
}

// Brute-force subspace machinery over GF(2), ambient n <= 5: a subspace is
// the set of vectors (bitmask-coded) closed under xor.
std::set<unsigned> closure_gf2(const std::vector<unsigned>& gens) {
  std::set<unsigned> s{0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<unsigned> cur(s.begin(), s.end());
    for (unsigned a : cur)
      for (unsigned g : gens)
        if (s.insert(a ^ g).second) grew = true;
  }
  return s;
}

std::set<unsigned> elements_gf2(const RowSpace& s) {
  std::vector<unsigned> gens;
  for (std::size_t r = 0; r < s.dim(); ++r) {
    unsigned v = 0;
    for (std::size_t c = 0; c < s.ambient(); ++c)
      if (s.basis().at(r, c)) v |= 1u << c;
    gens.push_back(v);
  }
  return closure_gf2(gens);
}

RowSpace space_from_masks(const Field& f2, unsigned n, const std::vector<unsigned>& masks) {
  Mat m(f2, masks.size(), n);
  for (std::size_t r = 0; r < masks.size(); ++r)
    for (unsigned c = 0; c < n; ++c) m.at(r, c) = (masks[r] >> c) & 1u;
  return RowSpace::span(m);
}

// Every subspace of F_2^n, as canonical RowSpaces.
std::vector<RowSpace> all_subspaces_gf2(const Field& f2, unsigned n) {
  std::set<std::vector<felem>> seen;
  std::vector<RowSpace> out;
  const unsigned total = 1u << ((1u << n) - 1);
  // Enumerate generator subsets of the nonzero vectors (skip duplicates by
  // canonical basis).
  for (unsigned subset = 0; subset < total; ++subset) {
    std::vector<unsigned> gens;
    for (unsigned v = 1; v < (1u << n); ++v)
      if (subset & (1u << (v - 1))) gens.push_back(v);
    const RowSpace s = space_from_masks(f2, n, gens);
    if (seen.insert(s.basis().a).second) out.push_back(s);
    if (out.size() == 0) break;
  }
  return out;
}

}  // namespace

TEST_CASE("rref basics") {
  const Field f2 = Field::make(2);
  const RowSpace id3 = RowSpace::span(Mat::identity(f2, 3));
  CHECK(id3.dim() == 3);
  CHECK(id3.basis() == Mat::identity(f2, 3));

  const Mat m = from_rows(f2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  const RowSpace s = RowSpace::span(m);
  CHECK(s.dim() == 2);
  // oracle: brute-force span enumeration of the three generators
  CHECK(elements_gf2(s) == closure_gf2({0b011, 0b110, 0b101}));

  // idempotence
  CHECK(RowSpace::span(s.basis()) == s);
}

TEST_CASE("sum and intersection basics") {
  const Field f2 = Field::make(2);
  const RowSpace e1 = space_from_masks(f2, 3, {0b001});
  const RowSpace e2 = space_from_masks(f2, 3, {0b010});
  const RowSpace zero(f2, 3);

  CHECK(e1.sum(e1) == e1);
  CHECK(e1.sum(zero) == e1);
  CHECK(e1.sum(e2).dim() == 2);
  CHECK(e1.intersect(e1) == e1);
  CHECK(e1.intersect(e2) == zero);

  const Field f3 = Field::make(3);
  CHECK_THROWS_AS(e1.sum(RowSpace(f2, 4)), AmbientMismatch);
  (void)f3;
}

TEST_CASE("membership") {
  const Field f2 = Field::make(2);
  const RowSpace s = space_from_masks(f2, 3, {0b001, 0b010});
  const std::vector<felem> zero{0, 0, 0}, e3{0, 0, 1}, e1{1, 0, 0};
  CHECK(s.contains(zero));
  CHECK(s.contains(e1));
  CHECK(!s.contains(e3));
  for (std::size_t r = 0; r < s.dim(); ++r) CHECK(s.contains(s.basis().row(r)));
}

TEST_CASE("exhaustive oracle agreement on F_2^3") {
  const Field f2 = Field::make(2);
  const auto spaces = all_subspaces_gf2(f2, 3);
  CHECK(spaces.size() == 16);  // 1 + 7 + 7 + 1

  for (const auto& a : spaces) {
    for (const auto& b : spaces) {
      const auto ea = elements_gf2(a), eb = elements_gf2(b);
      // sum oracle: closure of union
      std::vector<unsigned> gens(ea.begin(), ea.end());
      gens.insert(gens.end(), eb.begin(), eb.end());
      CHECK(elements_gf2(a.sum(b)) == closure_gf2(gens));
      // intersection oracle: common vectors
      std::set<unsigned> common;
      std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(),
                            std::inserter(common, common.begin()));
      CHECK(elements_gf2(a.intersect(b)) == common);
      // dimension formula
      CHECK(a.sum(b).dim() + a.intersect(b).dim() == a.dim() + b.dim());
      // subspace test oracle
      CHECK(b.contains(a) == std::includes(eb.begin(), eb.end(), ea.begin(), ea.end()));
    }
  }

  // d_S is a metric: identity, symmetry, triangle inequality.
  for (const auto& a : spaces)
    for (const auto& b : spaces) {
      CHECK(subspace_distance(a, a) == 0);
      CHECK(subspace_distance(a, b) == subspace_distance(b, a));
      for (const auto& c : spaces)
        CHECK(subspace_distance(a, c) <=
              subspace_distance(a, b) + subspace_distance(b, c));
    }
}

TEST_CASE("subspace distance examples") {
  const Field f2 = Field::make(2);
  const RowSpace e1 = space_from_masks(f2, 3, {0b001});
  const RowSpace e2 = space_from_masks(f2, 3, {0b010});
  CHECK(subspace_distance(e1, e2) == 2);

  const SetDistance d = set_distance({e1}, {e2, e1});
  CHECK(d.total == 2);
  CHECK(d.pairs == 2);
  CHECK(d.value() == doctest::Approx(1.0));
  CHECK(set_distance({e1}, {e1}).total == 0);
  CHECK_THROWS_AS(set_distance({}, {e1}), EmptySet);
}

TEST_CASE("set distance equals independent double loop") {
  const Field f = Field::make(5);
  Rng rng(3);
  std::vector<RowSpace> a, b;
  for (int i = 0; i < 4; ++i) {
    Mat m(f, 2, 4);
    for (auto& x : m.a) x = f.sample(rng);
    a.push_back(RowSpace::span(m));
    Mat m2(f, 3, 4);
    for (auto& x : m2.a) x = f.sample(rng);
    b.push_back(RowSpace::span(m2));
  }
  long long total = 0;
  for (const auto& y : b)
    for (const auto& x : a)
      total += int(x.dim()) + int(y.dim()) - 2 * int(x.intersect(y).dim());
  const SetDistance d = set_distance(a, b);
  CHECK(d.total == total);
  CHECK(d.pairs == 16);
}

TEST_CASE("sampling from a space") {
  const Field f = Field::make(256);
  Rng rng(11);
  const RowSpace zero(f, 6);
  const Mat z = zero.sample(5, rng);
  CHECK(z.rows == 5);
  for (auto x : z.a) CHECK(x == 0);

  Mat gen(f, 3, 6);
  for (auto& x : gen.a) x = f.sample(rng);
  const RowSpace s = RowSpace::span(gen);
  const Mat draws = s.sample(20, rng);
  for (std::size_t r = 0; r < draws.rows; ++r) CHECK(s.contains(draws.row(r)));
}

TEST_CASE("dimension formula randomized over a larger field") {
  const Field f = Field::make(257);
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    Mat ma(f, 1 + rng.below(4), 6), mb(f, 1 + rng.below(4), 6);
    for (auto& x : ma.a) x = f.sample(rng);
    for (auto& x : mb.a) x = f.sample(rng);
    const RowSpace a = RowSpace::span(ma), b = RowSpace::span(mb);
    CHECK(a.sum(b).dim() + a.intersect(b).dim() == a.dim() + b.dim());
  }
}

TEST_CASE("gaussian binomials") {
  CHECK(gaussian_binomial(5, 0, 3) == 1);
  CHECK(gaussian_binomial(4, 5, 2) == 0);

  // count lines of F_2^3 by enumeration
  const Field f2 = Field::make(2);
  const auto spaces3 = all_subspaces_gf2(f2, 3);
  int lines = 0;
  for (const auto& s : spaces3) lines += s.dim() == 1;
  CHECK(lines == 7);
  CHECK(gaussian_binomial(3, 1, 2) == 7);

  const auto spaces4 = all_subspaces_gf2(f2, 4);
  int planes = 0;
  for (const auto& s : spaces4) planes += s.dim() == 2;
  CHECK(planes == 35);
  CHECK(gaussian_binomial(4, 2, 2) == 35);

  // subspace_bits uses the q^{n^2/4} approximation
  CHECK(subspace_bits(8, 256) == doctest::Approx(16.0 * 8.0));
  // exact count grows like the approximation
  CHECK(subspace_count(4, 2) == 1 + 15 + 35 + 15 + 1 - 1);
}

TEST_CASE("rowspace json round trip") {
  const Field f = Field::make(256);
  Rng rng(5);
  Mat m(f, 3, 5);
  for (auto& x : m.a) x = f.sample(rng);
  const RowSpace s = RowSpace::span(m);
  CHECK(rowspace_from_json(rowspace_to_json(s)) == s);
}
