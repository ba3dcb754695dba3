#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ncsim/field.hpp"

namespace ncsim {

// Dense row-major matrix over GF(q).
struct Mat {
  Mat(Field f, std::size_t rows_, std::size_t cols_)
      : field(f), rows(rows_), cols(cols_), a(rows_ * cols_, 0) {}

  static Mat identity(Field f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  felem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  felem at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  std::span<const felem> row(std::size_t r) const { return {a.data() + r * cols, cols}; }
  std::span<felem> row(std::size_t r) { return {a.data() + r * cols, cols}; }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  Field field;
  std::size_t rows;
  std::size_t cols;
  std::vector<felem> a;
};

// Maintains a reduced-row-echelon basis under row insertions. The basis is
// canonical at all times: pivots are 1, each pivot is the only nonzero entry
// in its column, pivot columns strictly increase.
class Eliminator {
 public:
  Eliminator(Field f, std::size_t ambient) : field_(f), ambient_(ambient) {}

  // Returns true when v was independent of the current basis (rank grew).
  bool insert(std::span<const felem> v);
  bool contains(std::span<const felem> v) const;

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return ambient_; }
  const std::vector<std::vector<felem>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Mat basis() const;
  Field field() const { return field_; }

 private:
  // Reduces v in place against the basis; returns remainder (possibly zero).
  void reduce(std::vector<felem>& v) const;

  Field field_;
  std::size_t ambient_;
  std::vector<std::vector<felem>> rows_;  // sorted by pivot column
  std::vector<std::size_t> pivots_;
};

// A subspace of F_q^n held as its canonical RREF basis with no zero rows.
// Two RowSpaces are equal as subspaces iff their bases compare equal.
class RowSpace {
 public:
  // Zero-dimensional space (the empty span).
  RowSpace(Field f, std::size_t ambient) : basis_(f, 0, ambient) {}
  // Placeholder (zero space over GF(2) with ambient 0); assign before use.
  RowSpace() : basis_(Field::make(2), 0, 0) {}

  // Canonicalizes the row span of m.
  static RowSpace span(const Mat& m);
  static RowSpace span_rows(Field f, std::size_t ambient,
                            const std::vector<std::vector<felem>>& rows);
  // Adopts an eliminator's basis, which is already canonical.
  static RowSpace from_eliminator(const Eliminator& e);
  // The full space F_q^n.
  static RowSpace full(Field f, std::size_t n) { return span(Mat::identity(f, n)); }

  std::size_t dim() const { return basis_.rows; }
  std::size_t ambient() const { return basis_.cols; }
  bool is_zero() const { return basis_.rows == 0; }
  const Mat& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Field field() const { return basis_.field; }

  bool contains(std::span<const felem> v) const;
  bool contains(const RowSpace& other) const;  // subspace test

  RowSpace sum(const RowSpace& other) const;
  RowSpace intersect(const RowSpace& other) const;  // Zassenhaus block method

  // m independent uniform elements of the space, one per row.
  Mat sample(std::size_t m, Rng& rng) const;

  bool operator==(const RowSpace& o) const {
    return basis_ == o.basis_;
  }

 private:
  explicit RowSpace(Mat basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

// Subspace distance d_S = dim(a+b) - dim(a∩b).
int subspace_distance(const RowSpace& a, const RowSpace& b);

// Average pairwise distance between two sets of subspaces. The total is an
// exact integer; value() is the rational average.
struct SetDistance {
  long long total = 0;
  long long pairs = 0;
  double value() const { return double(total) / double(pairs); }
};
SetDistance set_distance(const std::vector<RowSpace>& a, const std::vector<RowSpace>& b);

}  // namespace ncsim
