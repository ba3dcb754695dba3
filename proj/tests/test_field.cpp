#include <cmath>
#include <map>

#include "doctest.h"
#include "ncsim/field.hpp"

using namespace ncsim;

namespace {

// Independent bitwise multiply-and-reduce, coded separately from the library
// path on purpose.
felem clmul_reduce(felem a, felem b, std::uint32_t poly, unsigned k) {
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < k; ++i)
    if (b & (1u << i)) acc ^= std::uint64_t(a) << i;
  for (int bit = 2 * int(k) - 2; bit >= int(k); --bit)
    if (acc & (1ull << bit)) acc ^= std::uint64_t(poly) << (bit - int(k));
  return felem(acc);
}

}  // namespace

TEST_CASE("prime field basics") {
  const Field f5 = Field::make(5);
  CHECK(f5.add(3, 4) == 2);
  CHECK(f5.mul(3, 4) == 2);
  CHECK(f5.pow(2, 4) == 1);
  CHECK(f5.sub(1, 3) == 3);

  const Field f7 = Field::make(7);
  // exhaustive-search oracle for the inverse
  felem expected = 0;
  for (felem x = 1; x < 7; ++x)
    if (f7.mul(3, x) == 1) expected = x;
  CHECK(expected == 5);
  CHECK(f7.inv(3) == 5);
}

TEST_CASE("field construction errors") {
  CHECK_THROWS_AS(Field::make(6), NonPrimePower);
  CHECK_THROWS_AS(Field::make(1), NonPrimePower);
  CHECK_THROWS_AS(Field::make(1u << 17), NonPrimePower);
  CHECK_THROWS_AS(Field::make(256, 0x100), ReduciblePolynomial);  // x^8
  CHECK_THROWS_AS(Field::make(256, 0x11C), ReduciblePolynomial);
  CHECK_THROWS_AS(Field::make(5).inv(0), DivisionByZero);
  CHECK(Field::default_poly(8) == 0x11B);
}

TEST_CASE("gf(2^8) multiply against independent oracle") {
  const Field f = Field::make(256, 0x11B);
  CHECK(f.mul(0x53, 0xCA) == 0x01);
  CHECK(f.inv(1) == 1);
  for (felem a = 0; a < 256; ++a)
    for (felem b = 0; b < 256; ++b) {
      const felem want = clmul_reduce(a, b, 0x11B, 8);
      CHECK(f.mul(a, b) == want);
      CHECK(f.mul_direct(a, b) == want);
    }
}

TEST_CASE("characteristic two: a xor a is zero") {
  const Field f = Field::make(256);
  for (felem a = 0; a < 256; ++a) CHECK(f.add(a, a) == 0);
}

TEST_CASE("field axioms exhaustive on small fields") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 11u, 16u}) {
    const Field f = Field::make(q);
    for (felem a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (felem b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (felem c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("gf(2^16) table and direct paths agree on samples") {
  const Field f = Field::make(1u << 16);
  Rng rng(7);
  for (int i = 0; i < 20000; ++i) {
    const felem a = f.sample(rng), b = f.sample(rng);
    CHECK(f.mul(a, b) == f.mul_direct(a, b));
    if (b != 0) CHECK(f.mul(f.div(a, b), b) == a);
  }
}

TEST_CASE("sampling is a pure function of the seed") {
  const Field f = Field::make(257);
  Rng a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 1000; ++i) {
    const felem x = f.sample(a);
    all_equal &= x == f.sample(b);
    any_diff |= x != f.sample(c);
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("gf(2) sampling frequency") {
  const Field f = Field::make(2);
  Rng rng(99);
  int ones = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) ones += f.sample(rng);
  const double freq = double(ones) / trials;
  CHECK(freq >= 0.49);
  CHECK(freq <= 0.51);
}

TEST_CASE("gf(257) chi-square uniformity") {
  const Field f = Field::make(257);
  Rng rng(1234);
  const int trials = 1000000;
  std::vector<int> counts(257, 0);
  for (int i = 0; i < trials; ++i) ++counts[f.sample(rng)];
  const double expected = double(trials) / 257.0;
  double chi2 = 0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // Wilson-Hilferty critical value at significance 1e-3, df=256.
  const double df = 256.0, z = 3.0902;
  const double crit = df * std::pow(1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df)), 3.0);
  CHECK(chi2 < crit);
}
