#include "ncsim/counting.hpp"

#include <cmath>

namespace ncsim {

mpz_class gaussian_binomial(unsigned n, unsigned i, std::uint32_t q) {
  if (i > n) return 0;
  const mpz_class Q(q);
  mpz_class num = 1, den = 1;
  for (unsigned j = 0; j < i; ++j) {
    mpz_class qn, qd;
    mpz_pow_ui(qn.get_mpz_t(), Q.get_mpz_t(), n - j);
    mpz_pow_ui(qd.get_mpz_t(), Q.get_mpz_t(), j + 1);
    num *= qn - 1;
    den *= qd - 1;
  }
  return num / den;
}

mpz_class subspace_count(unsigned n, std::uint32_t q) {
  mpz_class total = 0;
  for (unsigned i = 1; i <= n; ++i) total += gaussian_binomial(n, i, q);
  return total;
}

double subspace_bits(unsigned n, std::uint32_t q) {
  return (double(n) * n / 4.0) * std::log2(double(q));
}

}  // namespace ncsim
