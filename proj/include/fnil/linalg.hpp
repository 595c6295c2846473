#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fnil/fields.hpp"

namespace fnil {

using FVector = std::vector<FieldElement>;

/// Dense row-major matrix over a FiniteField.
class FMatrix {
 public:
  FMatrix() = default;
  FMatrix(FiniteField f, int rows, int cols)
      : f_(std::move(f)), r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    for (auto& x : a_) x = f_.zero();
  }

  static FMatrix identity(const FiniteField& f, int n) {
    FMatrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  const FiniteField& field() const { return f_; }

  FieldElement& at(int i, int j) { return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(c_) + static_cast<std::size_t>(j)]; }
  const FieldElement& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(c_) + static_cast<std::size_t>(j)];
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  FMatrix operator*(const FMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix dimension mismatch in product");
    FMatrix out(f_, r_, o.c_);
    for (int i = 0; i < r_; ++i) {
      for (int k = 0; k < c_; ++k) {
        const FieldElement& aik = at(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < o.c_; ++j) out.at(i, j) = out.at(i, j) + aik * o.at(k, j);
      }
    }
    return out;
  }

  FMatrix operator+(const FMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix dimension mismatch in sum");
    FMatrix out(f_, r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
    return out;
  }

  FMatrix operator-(const FMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix dimension mismatch in difference");
    FMatrix out(f_, r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
    return out;
  }

  bool operator==(const FMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const FMatrix& o) const { return !(*this == o); }

  /// Entrywise x -> x^{p^k}.
  FMatrix entrywise_frobenius(int k = 1) const {
    FMatrix out = *this;
    for (auto& x : out.a_)
      for (int i = 0; i < k; ++i) x = frobenius(x);
    return out;
  }

  FMatrix transpose() const {
    FMatrix out(f_, c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  FVector apply(const FVector& v) const {
    if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("vector length mismatch in apply");
    FVector out(static_cast<std::size_t>(r_), f_.zero());
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) {
        if (at(i, j).is_zero() || v[static_cast<std::size_t>(j)].is_zero()) continue;
        out[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)] + at(i, j) * v[static_cast<std::size_t>(j)];
      }
    return out;
  }

  FVector column(int j) const {
    FVector out(static_cast<std::size_t>(r_), f_.zero());
    for (int i = 0; i < r_; ++i) out[static_cast<std::size_t>(i)] = at(i, j);
    return out;
  }

 private:
  FiniteField f_;
  int r_ = 0, c_ = 0;
  std::vector<FieldElement> a_;
};

struct Rref {
  FMatrix m;
  std::vector<int> pivot_cols;
};

/// Reduced row echelon form with deterministic pivoting: columns are scanned in
/// order and the first row with a nonzero entry becomes the pivot row.
inline Rref rref(FMatrix m) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<int> pivots;
  int prow = 0;
  for (int col = 0; col < cols && prow < rows; ++col) {
    int sel = -1;
    for (int i = prow; i < rows; ++i) {
      if (!m.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != prow)
      for (int j = 0; j < cols; ++j) std::swap(m.at(sel, j), m.at(prow, j));
    const FieldElement inv = m.at(prow, col).inverse();
    for (int j = col; j < cols; ++j) m.at(prow, j) = m.at(prow, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == prow || m.at(i, col).is_zero()) continue;
      const FieldElement factor = m.at(i, col);
      for (int j = col; j < cols; ++j) m.at(i, j) = m.at(i, j) - factor * m.at(prow, j);
    }
    pivots.push_back(col);
    ++prow;
  }
  return {std::move(m), std::move(pivots)};
}

inline int rank(const FMatrix& m) { return static_cast<int>(rref(m).pivot_cols.size()); }

/// Basis of the right null space, one vector per free column, free columns ascending.
inline std::vector<FVector> nullspace_basis(const FMatrix& m) {
  Rref r = rref(m);
  const int cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int c : r.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<FVector> basis;
  for (int fc = 0; fc < cols; ++fc) {
    if (is_pivot[static_cast<std::size_t>(fc)]) continue;
    FVector v(static_cast<std::size_t>(cols), m.field().zero());
    v[static_cast<std::size_t>(fc)] = m.field().one();
    for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
      v[static_cast<std::size_t>(r.pivot_cols[k])] = -r.m.at(static_cast<int>(k), fc);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of the column space: the original columns at the pivot positions of rref.
inline std::vector<FVector> column_space_basis(const FMatrix& m) {
  Rref r = rref(m);
  std::vector<FVector> basis;
  basis.reserve(r.pivot_cols.size());
  for (int c : r.pivot_cols) basis.push_back(m.column(c));
  return basis;
}

/// Rank of the matrix whose columns are the given vectors.
inline int span_rank(const FiniteField& f, const std::vector<FVector>& vecs, int length) {
  FMatrix m(f, length, static_cast<int>(vecs.size()));
  for (std::size_t j = 0; j < vecs.size(); ++j) {
    if (static_cast<int>(vecs[j].size()) != length) throw std::invalid_argument("vector length mismatch in span");
    for (int i = 0; i < length; ++i) m.at(i, static_cast<int>(j)) = vecs[j][static_cast<std::size_t>(i)];
  }
  return rank(m);
}

}  // namespace fnil
