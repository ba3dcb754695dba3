#include "ncsim/field.hpp"

#include <string>

namespace ncsim {
namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned poly_degree(std::uint32_t poly) {
  unsigned d = 0;
  while (poly >> (d + 1)) ++d;
  return d;
}

// Remainder of a modulo m, both bit patterns of polynomials over GF(2).
std::uint32_t poly_mod(std::uint64_t a, std::uint32_t m) {
  const unsigned dm = poly_degree(m);
  for (int shift = 63 - int(dm); shift >= 0; --shift) {
    if (a & (std::uint64_t(1) << (shift + dm))) a ^= std::uint64_t(m) << shift;
  }
  return static_cast<std::uint32_t>(a);
}

// Carry-less multiply of two GF(2)[x] bit patterns.
std::uint64_t clmul(std::uint32_t a, std::uint32_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;  // safe: operands stay below 2^17 here
    b >>= 1;
  }
  return r;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> fs;
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

bool Field::poly_irreducible(std::uint32_t poly) {
  const unsigned k = poly_degree(poly);
  if (k == 0) return false;
  // Exhaustive trial division by every polynomial of degree 1..k/2.
  for (std::uint32_t d = 2; poly_degree(d) <= k / 2; ++d) {
    if (poly_mod(poly, d) == 0) return false;
  }
  return true;
}

std::uint32_t Field::default_poly(unsigned k) {
  if (k == 8) return 0x11B;  // x^8+x^4+x^3+x+1
  for (std::uint32_t cand = (1u << k) | 1u;; cand += 2) {
    if (poly_degree(cand) != k) break;
    if (poly_irreducible(cand)) return cand;
  }
  throw NonPrimePower("no irreducible polynomial of degree " + std::to_string(k));
}

Field Field::make(std::uint32_t q, std::uint32_t reduction_poly) {
  auto impl = std::make_shared<Impl>();
  if (q >= 4 && (q & (q - 1)) == 0) {
    unsigned k = 0;
    while ((1u << k) < q) ++k;
    if (k > 16) throw NonPrimePower("binary field degree above 16: q=" + std::to_string(q));
    std::uint32_t poly = reduction_poly ? reduction_poly : default_poly(k);
    if (poly_degree(poly) != k)
      throw ReduciblePolynomial("reduction polynomial degree does not match field degree");
    if (!poly_irreducible(poly))
      throw ReduciblePolynomial("reduction polynomial factors over GF(2)");
    impl->q = q;
    impl->p = 2;
    impl->k = k;
    impl->binary = true;
    impl->poly = poly;

    // Find a multiplicative generator, then fill log/antilog tables.
    auto mul_raw = [&](felem a, felem b) { return poly_mod(clmul(a, b), poly); };
    auto pow_raw = [&](felem a, std::uint32_t e) {
      felem r = 1;
      while (e) {
        if (e & 1) r = mul_raw(r, a);
        a = mul_raw(a, a);
        e >>= 1;
      }
      return r;
    };
    const auto factors = prime_factors(q - 1);
    felem g = 0;
    for (felem cand = 2; cand < q; ++cand) {
      bool ok = true;
      for (auto f : factors)
        if (pow_raw(cand, (q - 1) / f) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        g = cand;
        break;
      }
    }
    impl->log_tab.assign(q, 0);
    impl->exp_tab.assign(2 * (q - 1), 0);
    felem x = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      impl->exp_tab[i] = x;
      impl->exp_tab[i + (q - 1)] = x;
      impl->log_tab[x] = static_cast<std::uint16_t>(i);
      x = mul_raw(x, g);
    }
  } else if (is_prime(q)) {
    if (reduction_poly)
      throw BadConfig("reduction polynomial only applies to binary fields");
    impl->q = q;
    impl->p = q;
    impl->binary = false;
  } else {
    throw NonPrimePower("q must be prime or a power of two <= 2^16: q=" + std::to_string(q));
  }
  return Field(std::move(impl));
}

felem Field::mul_direct(felem a, felem b) const {
  if (!impl_->binary) return felem(std::uint64_t(a) * b % impl_->q);
  return poly_mod(clmul(a, b), impl_->poly);
}

felem Field::pow(felem a, std::uint64_t e) const {
  felem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

felem Field::inv(felem a) const {
  if (a == 0) throw DivisionByZero();
  if (impl_->binary) {
    const std::uint32_t l = impl_->log_tab[a];
    return impl_->exp_tab[(impl_->q - 1) - l];
  }
  return pow(a, impl_->q - 2);
}

}  // namespace ncsim
