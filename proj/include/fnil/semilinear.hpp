#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fnil/linalg.hpp"

namespace fnil {

/// A p-semilinear operator phi on V = F_{p^e}^dim: additive, with
/// phi(c v) = c^p phi(v). Column j of the matrix is phi(e_j), so
/// phi(v) = A . v^[p] where v^[p] raises entries to the p-th power.
class SemilinearOperator {
 public:
  explicit SemilinearOperator(FMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("semilinear operator matrix must be square");
    if (!m_.field().valid()) throw std::invalid_argument("semilinear operator needs a valid field");
  }

  int dim() const { return m_.rows(); }
  const FiniteField& field() const { return m_.field(); }
  const FMatrix& matrix() const { return m_; }

  FVector apply(const FVector& v) const {
    if (static_cast<int>(v.size()) != dim()) throw std::invalid_argument("vector length mismatch in apply");
    FVector twisted(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) twisted[i] = frobenius(v[i]);
    return m_.apply(twisted);
  }

 private:
  FMatrix m_;
};

/// Matrix of the m-fold composite phi^m: A . A^(p) . A^(p^2) ... A^(p^{m-1}),
/// where A^(q) raises entries to the q-th power. m = 0 gives the identity.
inline FMatrix power_matrix(const SemilinearOperator& op, int m) {
  if (m < 0) throw std::invalid_argument("negative power of an operator");
  FMatrix result = FMatrix::identity(op.field(), op.dim());
  FMatrix twisted = op.matrix();
  for (int k = 0; k < m; ++k) {
    result = result * twisted;
    if (k + 1 < m) twisted = twisted.entrywise_frobenius(1);
  }
  return result;
}

struct FittingSplit {
  int ss_dim = 0;
  int nil_dim = 0;
  /// Basis of the semisimple part: the column space of power_matrix(phi, dim).
  /// phi restricts to a bijection on its span.
  std::vector<FVector> ss_image_basis;
};

/// V splits as V_ss + V_nil with phi bijective on V_ss and nilpotent on V_nil;
/// the image of phi^dim is V_ss, and its rank has stabilized by step dim.
inline FittingSplit fitting_decomposition(const SemilinearOperator& op) {
  const int n = op.dim();
  FittingSplit split;
  if (n == 0) return split;
  const FMatrix stable = power_matrix(op, n);
  split.ss_image_basis = column_space_basis(stable);
  split.ss_dim = static_cast<int>(split.ss_image_basis.size());
  split.nil_dim = n - split.ss_dim;
  return split;
}

/// Nilpotent iff phi^dim kills everything. Dimension-zero operators count as nilpotent.
inline bool is_nilpotent(const SemilinearOperator& op) {
  if (op.dim() == 0) return true;
  return power_matrix(op, op.dim()).is_zero();
}

/// F_p-basis of the fixed set {v : phi(v) = v}. The fixed set is an F_p-subspace,
/// not an F_{p^e}-subspace. Over prime fields this solves (A - I) v = 0; in
/// general v -> phi(v) - v is F_p-linear and we solve the expanded F_p system.
inline std::vector<FVector> fixed_points(const SemilinearOperator& op) {
  const int n = op.dim();
  const FiniteField& F = op.field();
  const int e = F.extension_degree();
  const std::int64_t p = F.characteristic();
  if (n == 0) return {};
  const FiniteField Fp = (e == 1) ? F : FiniteField::make(p);

  // Column (j, i) of the F_p system is phi(t^i e_j) - t^i e_j in F_p coordinates.
  FMatrix sys(Fp, n * e, n * e);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < e; ++i) {
      FVector v(static_cast<std::size_t>(n), F.zero());
      std::vector<std::int64_t> coords(static_cast<std::size_t>(e), 0);
      coords[static_cast<std::size_t>(i)] = 1;
      v[static_cast<std::size_t>(j)] = F.element(coords);
      FVector w = op.apply(v);
      for (int jj = 0; jj < n; ++jj) {
        const FieldElement diff = w[static_cast<std::size_t>(jj)] - v[static_cast<std::size_t>(jj)];
        for (int ii = 0; ii < e; ++ii) {
          sys.at(jj * e + ii, j * e + i) = Fp.from_int(diff.coords()[static_cast<std::size_t>(ii)]);
        }
      }
    }
  }

  std::vector<FVector> null = nullspace_basis(sys);
  std::vector<FVector> out;
  out.reserve(null.size());
  for (const auto& nv : null) {
    FVector v(static_cast<std::size_t>(n), F.zero());
    for (int j = 0; j < n; ++j) {
      std::vector<std::int64_t> coords(static_cast<std::size_t>(e), 0);
      for (int i = 0; i < e; ++i) coords[static_cast<std::size_t>(i)] = nv[static_cast<std::size_t>(j * e + i)].as_int();
      v[static_cast<std::size_t>(j)] = F.element(coords);
    }
    out.push_back(std::move(v));
  }
  return out;
}

struct BruteForceResult {
  std::vector<FVector> fixed;  // every fixed vector, zero included, enumeration order
  bool nilpotent = false;
};

/// Exhaustive reference: enumerates all cardinality^dim vectors, collects the
/// fixed set, and declares nilpotence iff every vector reaches zero within dim
/// applications. Guarded to small search spaces.
inline BruteForceResult brute_force_oracle(const SemilinearOperator& op) {
  const int n = op.dim();
  const FiniteField& F = op.field();
  const std::uint64_t q = F.cardinality();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= q;
    if (total > 1000000) throw std::domain_error("search space too large for the brute-force oracle");
  }
  const std::vector<FieldElement> elems = F.all_elements();

  BruteForceResult res;
  res.nilpotent = true;
  for (std::uint64_t code = 0; code < total; ++code) {
    FVector v(static_cast<std::size_t>(n), F.zero());
    std::uint64_t c = code;
    for (int j = 0; j < n; ++j) {
      v[static_cast<std::size_t>(j)] = elems[static_cast<std::size_t>(c % q)];
      c /= q;
    }
    const FVector w = op.apply(v);
    if (w == v) res.fixed.push_back(v);
    if (res.nilpotent) {
      FVector it = w;
      for (int k = 1; k < n; ++k) it = op.apply(it);
      bool zero = true;
      for (const auto& x : it)
        if (!x.is_zero()) {
          zero = false;
          break;
        }
      if (!zero) res.nilpotent = false;
    }
  }
  return res;
}

}  // namespace fnil
