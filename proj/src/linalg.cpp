#include "ncsim/linalg.hpp"

#include <algorithm>
#include <string>

namespace ncsim {

void Eliminator::reduce(std::vector<felem>& v) const {
  const Field& f = field_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const felem c = v[pivots_[i]];
    if (c == 0) continue;
    const auto& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < ambient_; ++j)
      v[j] = f.sub(v[j], f.mul(c, row[j]));
  }
}

bool Eliminator::contains(std::span<const felem> v) const {
  std::vector<felem> w(v.begin(), v.end());
  reduce(w);
  return std::all_of(w.begin(), w.end(), [](felem x) { return x == 0; });
}

bool Eliminator::insert(std::span<const felem> v) {
  std::vector<felem> w(v.begin(), v.end());
  reduce(w);
  std::size_t p = 0;
  while (p < ambient_ && w[p] == 0) ++p;
  if (p == ambient_) return false;

  const Field& f = field_;
  const felem scale = f.inv(w[p]);
  for (std::size_t j = p; j < ambient_; ++j) w[j] = f.mul(w[j], scale);

  // Back-eliminate the new pivot column from existing rows.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const felem c = rows_[i][p];
    if (c == 0) continue;
    auto& row = rows_[i];
    for (std::size_t j = p; j < ambient_; ++j) row[j] = f.sub(row[j], f.mul(c, w[j]));
  }

  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(w));
  return true;
}

Mat Eliminator::basis() const {
  Mat m(field_, rows_.size(), ambient_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    std::copy(rows_[i].begin(), rows_[i].end(), m.row(i).begin());
  return m;
}

RowSpace RowSpace::span(const Mat& m) {
  Eliminator e(m.field, m.cols);
  for (std::size_t r = 0; r < m.rows; ++r) e.insert(m.row(r));
  return RowSpace(e.basis(), e.pivots());
}

RowSpace RowSpace::span_rows(Field f, std::size_t ambient,
                             const std::vector<std::vector<felem>>& rows) {
  Eliminator e(f, ambient);
  for (const auto& r : rows) e.insert(r);
  return RowSpace(e.basis(), e.pivots());
}

RowSpace RowSpace::from_eliminator(const Eliminator& e) {
  return RowSpace(e.basis(), e.pivots());
}

bool RowSpace::contains(std::span<const felem> v) const {
  if (v.size() != ambient()) throw AmbientMismatch("vector length does not match ambient dim");
  const Field& f = basis_.field;
  std::vector<felem> w(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.rows; ++i) {
    const felem c = w[pivots_[i]];
    if (c == 0) continue;
    const auto row = basis_.row(i);
    for (std::size_t j = pivots_[i]; j < ambient(); ++j)
      w[j] = f.sub(w[j], f.mul(c, row[j]));
  }
  return std::all_of(w.begin(), w.end(), [](felem x) { return x == 0; });
}

bool RowSpace::contains(const RowSpace& other) const {
  if (other.ambient() != ambient())
    throw AmbientMismatch("subspace test across different ambient dims");
  if (other.dim() > dim()) return false;
  for (std::size_t r = 0; r < other.basis_.rows; ++r)
    if (!contains(other.basis_.row(r))) return false;
  return true;
}

RowSpace RowSpace::sum(const RowSpace& other) const {
  if (other.ambient() != ambient()) throw AmbientMismatch("sum across different ambient dims");
  Eliminator e(basis_.field, ambient());
  for (std::size_t r = 0; r < basis_.rows; ++r) e.insert(basis_.row(r));
  for (std::size_t r = 0; r < other.basis_.rows; ++r) e.insert(other.basis_.row(r));
  return RowSpace(e.basis(), e.pivots());
}

RowSpace RowSpace::intersect(const RowSpace& other) const {
  if (other.ambient() != ambient())
    throw AmbientMismatch("intersection across different ambient dims");
  const Field f = basis_.field;
  const std::size_t n = ambient();

  // Zassenhaus block construction: eliminate rows [a|a] and [b|0]; basis rows
  // whose left half is zero carry the intersection in their right half.
  Eliminator e(f, 2 * n);
  std::vector<felem> w(2 * n, 0);
  for (std::size_t r = 0; r < basis_.rows; ++r) {
    const auto row = basis_.row(r);
    std::copy(row.begin(), row.end(), w.begin());
    std::copy(row.begin(), row.end(), w.begin() + n);
    e.insert(w);
  }
  for (std::size_t r = 0; r < other.basis_.rows; ++r) {
    const auto row = other.basis_.row(r);
    std::copy(row.begin(), row.end(), w.begin());
    std::fill(w.begin() + n, w.end(), 0);
    e.insert(w);
  }

  Eliminator out(f, n);
  for (std::size_t i = 0; i < e.rows().size(); ++i) {
    if (e.pivots()[i] < n) continue;
    const auto& row = e.rows()[i];
    out.insert(std::span<const felem>(row.data() + n, n));
  }
  return RowSpace(out.basis(), out.pivots());
}

Mat RowSpace::sample(std::size_t m, Rng& rng) const {
  const Field& f = basis_.field;
  Mat out(f, m, ambient());
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i < basis_.rows; ++i) {
      const felem c = f.sample(rng);
      if (c == 0) continue;
      const auto brow = basis_.row(i);
      auto orow = out.row(r);
      for (std::size_t j = pivots_[i]; j < ambient(); ++j)
        orow[j] = f.add(orow[j], f.mul(c, brow[j]));
    }
  }
  return out;
}

int subspace_distance(const RowSpace& a, const RowSpace& b) {
  if (a.ambient() != b.ambient())
    throw AmbientMismatch("distance across different ambient dims");
  const int ds = int(a.sum(b).dim());
  return 2 * ds - int(a.dim()) - int(b.dim());
}

SetDistance set_distance(const std::vector<RowSpace>& a, const std::vector<RowSpace>& b) {
  if (a.empty() || b.empty()) throw EmptySet("set distance over an empty set");
  SetDistance d;
  for (const auto& x : a)
    for (const auto& y : b) d.total += subspace_distance(x, y);
  d.pairs = static_cast<long long>(a.size()) * static_cast<long long>(b.size());
  return d;
}

}  // namespace ncsim
