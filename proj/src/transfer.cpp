#include "ncsim/transfer.hpp"

namespace ncsim {

TransferOracle::TransferOracle(const Trace& trace)
    : tr_(trace), f_(trace.config().field), n_(trace.config().n) {
  if (!trace.has_coefficients())
    throw CoefficientLogMissing("transfer oracle needs the coefficient log");
  if (trace.config().extra_coords != 0)
    throw BadConfig("transfer oracle covers adversary-free runs");
  rows_.resize(std::size_t(tr_.slots()) + 1);
}

void TransferOracle::advance_to(int t) {
  const auto& lanes = tr_.lanes();
  const int L = int(lanes.size());
  const int S = tr_.config().net.source();
  for (int s = computed_ + 1; s <= t; ++s) {
    rows_[s].assign(L, {});
    for (int j = 0; j < L; ++j) {
      if (!tr_.lane_active(j, s)) continue;
      const auto& cs = tr_.coeffs(j, s);
      std::vector<felem> row(n_, 0);
      if (lanes[j].tail == S) {
        for (int i = 0; i < n_; ++i) row[i] = cs[i];
      } else {
        // The tail's buffer at the end of s-1, rebuilt in canonical order:
        // slots ascending, lanes ascending within a slot.
        std::size_t idx = 0;
        for (int s2 = 1; s2 < s; ++s2) {
          for (int k = 0; k < L; ++k) {
            if (lanes[k].head != lanes[j].tail || !tr_.lane_active(k, s2)) continue;
            const felem c = cs.at(idx++);
            if (c != 0) {
              const auto& src = rows_[s2][k];
              for (int col = 0; col < n_; ++col) row[col] = f_.add(row[col], f_.mul(c, src[col]));
            }
          }
        }
        if (idx != cs.size())
          throw CoefficientLogMissing("coefficient count does not match buffer reconstruction");
      }
      rows_[s][j] = std::move(row);
    }
    computed_ = s;
  }
}

Mat TransferOracle::at(int v, int t) {
  if (t < 0 || t > tr_.slots()) throw OutOfRange("slot outside trace");
  advance_to(t);
  const auto& lanes = tr_.lanes();
  std::vector<const std::vector<felem>*> picked;
  if (t >= 1)
    for (int j = 0; j < int(lanes.size()); ++j)
      if (lanes[j].head == v && tr_.lane_active(j, t)) picked.push_back(&rows_[t][j]);
  Mat h(f_, picked.size(), n_);
  for (std::size_t r = 0; r < picked.size(); ++r)
    std::copy(picked[r]->begin(), picked[r]->end(), h.row(r).begin());
  return h;
}

Mat TransferOracle::stacked(int v, int t) {
  std::vector<Mat> parts;
  std::size_t total = 0;
  for (int s = 1; s <= t; ++s) {
    parts.push_back(at(v, s));
    total += parts.back().rows;
  }
  Mat out(f_, total, n_);
  std::size_t r = 0;
  for (const auto& p : parts)
    for (std::size_t i = 0; i < p.rows; ++i, ++r)
      std::copy(p.row(i).begin(), p.row(i).end(), out.row(r).begin());
  return out;
}

}  // namespace ncsim
