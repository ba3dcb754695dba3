#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace ncsim {

// Number of i-dimensional subspaces of an n-dimensional space over GF(q),
// exact via the product formula.
mpz_class gaussian_binomial(unsigned n, unsigned i, std::uint32_t q);

// Total number of subspaces of F_q^n (all dimensions 1..n).
mpz_class subspace_count(unsigned n, std::uint32_t q);

// Encoding cost of one subspace of F_q^n under the q^{n^2/4} approximation:
// (n^2/4) * log2(q) bits.
double subspace_bits(unsigned n, std::uint32_t q);

}  // namespace ncsim
