#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ncsim/errors.hpp"
#include "ncsim/rng.hpp"

namespace ncsim {

using felem = std::uint32_t;

// Exact arithmetic in GF(q), for q prime or q = 2^k with k <= 16.
//
// Elements are machine integers in [0, q). Binary fields use log/antilog
// tables built from a verified irreducible reduction polynomial; a direct
// carry-less multiply path is kept alongside the tables so the two can be
// checked against each other. A Field is immutable after construction and
// cheap to copy (shared internals), safe to share across threads.
class Field {
 public:
  // q prime, or q = 2^k with 1 <= k <= 16. For binary fields a reduction
  // polynomial may be supplied as a bit pattern (e.g. 0x11B for GF(2^8));
  // when omitted a verified default is used.
  static Field make(std::uint32_t q, std::uint32_t reduction_poly = 0);

  std::uint32_t q() const { return impl_->q; }
  std::uint32_t characteristic() const { return impl_->p; }
  bool is_binary() const { return impl_->binary; }
  unsigned degree() const { return impl_->k; }
  std::uint32_t reduction_poly() const { return impl_->poly; }

  felem add(felem a, felem b) const {
    if (impl_->binary) return a ^ b;
    std::uint64_t s = std::uint64_t(a) + b;
    return s >= impl_->q ? felem(s - impl_->q) : felem(s);
  }
  felem sub(felem a, felem b) const {
    if (impl_->binary) return a ^ b;
    return a >= b ? a - b : felem(a + impl_->q - b);
  }
  felem neg(felem a) const { return impl_->binary ? a : (a == 0 ? 0 : impl_->q - a); }

  felem mul(felem a, felem b) const {
    if (impl_->binary) {
      if (a == 0 || b == 0) return 0;
      return impl_->exp_tab[impl_->log_tab[a] + impl_->log_tab[b]];
    }
    return felem(std::uint64_t(a) * b % impl_->q);
  }

  // Direct path that bypasses the lookup tables (binary: carry-less multiply
  // and polynomial reduction; prime: plain modular multiply).
  felem mul_direct(felem a, felem b) const;

  felem inv(felem a) const;
  felem div(felem a, felem b) const { return mul(a, inv(b)); }
  felem pow(felem a, std::uint64_t e) const;

  // Element uniform over all q values; pure function of the stream state.
  felem sample(Rng& rng) const { return rng.below(impl_->q); }

  bool operator==(const Field& o) const {
    return impl_->q == o.impl_->q && impl_->poly == o.impl_->poly;
  }

  // True when the bit pattern encodes a polynomial irreducible over GF(2).
  static bool poly_irreducible(std::uint32_t poly);
  // Verified default reduction polynomial for GF(2^k).
  static std::uint32_t default_poly(unsigned k);

 private:
  struct Impl {
    std::uint32_t q = 0;
    std::uint32_t p = 0;  // characteristic
    unsigned k = 1;       // extension degree (binary fields)
    bool binary = false;
    std::uint32_t poly = 0;              // reduction polynomial bit pattern
    std::vector<std::uint16_t> log_tab;  // size q, log_tab[0] unused
    std::vector<felem> exp_tab;          // size 2(q-1), wraparound-free lookups
  };
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace ncsim
