#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fnil/polynomials.hpp"
#include "fnil/semilinear.hpp"

namespace fnil {

/// A quasi-homogeneous hypersurface f in n >= 2 weighted variables over a
/// finite field. Construction validates quasi-homogeneity and records the
/// weighted degree d.
class HypersurfaceData {
 public:
  HypersurfaceData(WeightSystem w, SparsePoly f) : w_(std::move(w)), f_(std::move(f)) {
    if (f_.nvars() < 2) throw std::invalid_argument("hypersurface needs at least two variables");
    if (w_.size() != static_cast<std::size_t>(f_.nvars()))
      throw std::invalid_argument("weight system length does not match the polynomial");
    if (f_.is_zero()) throw std::invalid_argument("hypersurface polynomial must be nonzero");
    auto d = is_quasi_homogeneous(f_, w_);
    if (!d) throw std::invalid_argument("polynomial is not quasi-homogeneous for the given weights");
    d_ = *d;
    if (d_ < 1) throw std::invalid_argument("hypersurface polynomial must be non-constant");
  }

  const FiniteField& field() const { return f_.field(); }
  int nvars() const { return f_.nvars(); }
  const WeightSystem& weights() const { return w_; }
  const SparsePoly& poly() const { return f_; }
  std::int64_t weighted_deg() const { return d_; }

 private:
  WeightSystem w_;
  SparsePoly f_;
  std::int64_t d_ = 0;
};

/// a-invariant of the graded quotient ring: d minus the sum of the weights.
/// Negative values already force the nilpotence verdict.
inline std::int64_t a_invariant(const HypersurfaceData& H) {
  return H.weighted_deg() - H.weights().total();
}

namespace detail {
inline void neg_monomials_rec(const WeightSystem& w, std::size_t idx, std::int64_t remaining, Monomial& cur,
                              std::vector<Monomial>& out) {
  if (idx + 1 == w.size()) {
    if (remaining >= w[idx] && remaining % w[idx] == 0) {
      cur[idx] = static_cast<std::int32_t>(remaining / w[idx]);
      out.push_back(cur);
    }
    return;
  }
  std::int64_t min_rest = 0;
  for (std::size_t j = idx + 1; j < w.size(); ++j) min_rest += w[j];
  for (std::int64_t a = 1; a * w[idx] + min_rest <= remaining; ++a) {
    cur[idx] = static_cast<std::int32_t>(a);
    neg_monomials_rec(w, idx + 1, remaining - a * w[idx], cur, out);
  }
}
}  // namespace detail

/// All exponent vectors a with every a_i >= 1 and sum a_i w_i = s, in
/// lexicographic order. These index the classes x^{-a} spanning the graded
/// piece of top local cohomology of the ambient weighted polynomial ring.
inline std::vector<Monomial> neg_monomials(const WeightSystem& w, std::int64_t s) {
  std::vector<Monomial> out;
  if (s <= 0) return out;
  Monomial cur(w.size(), 0);
  detail::neg_monomials_rec(w, 0, s, cur, out);
  return out;
}

inline std::vector<Monomial> neg_monomials(const HypersurfaceData& H, std::int64_t s) {
  return neg_monomials(H.weights(), s);
}

/// Degree-e piece of the next-to-top local cohomology of the hypersurface ring,
/// presented as the kernel of multiplication by f between graded pieces of the
/// ambient module. ambient_basis indexes classes x^{-a}; kernel vectors are
/// coordinates over that basis.
struct CohomPiece {
  std::int64_t degree = 0;
  std::vector<Monomial> ambient_basis;
  std::vector<FVector> kernel_basis;
};

/// Multiplication-by-f matrix from the span of neg_monomials(d - e) into the
/// span of neg_monomials(-e): the product x^u x^{-a} survives exactly when
/// every component of u - a stays negative, landing on x^{-(a-u)}.
inline FMatrix mult_by_f_matrix(const HypersurfaceData& H, const std::vector<Monomial>& source,
                                const std::vector<Monomial>& target) {
  FMatrix M(H.field(), static_cast<int>(target.size()), static_cast<int>(source.size()));
  std::vector<std::int32_t> query(static_cast<std::size_t>(H.nvars()));
  for (std::size_t j = 0; j < source.size(); ++j) {
    for (std::size_t i = 0; i < target.size(); ++i) {
      for (std::size_t k = 0; k < query.size(); ++k) query[k] = source[j][k] - target[i][k];
      M.at(static_cast<int>(i), static_cast<int>(j)) = H.poly().coefficient(query);
    }
  }
  return M;
}

inline CohomPiece degree_piece(const HypersurfaceData& H, std::int64_t e) {
  CohomPiece piece;
  piece.degree = e;
  piece.ambient_basis = neg_monomials(H, H.weighted_deg() - e);
  const std::vector<Monomial> target = neg_monomials(H, -e);
  const int n = static_cast<int>(piece.ambient_basis.size());
  if (target.empty()) {
    // Nothing to land on: the kernel condition is vacuous.
    for (int j = 0; j < n; ++j) {
      FVector v(static_cast<std::size_t>(n), H.field().zero());
      v[static_cast<std::size_t>(j)] = H.field().one();
      piece.kernel_basis.push_back(std::move(v));
    }
    return piece;
  }
  piece.kernel_basis = nullspace_basis(mult_by_f_matrix(H, piece.ambient_basis, target));
  return piece;
}

namespace detail {
/// Frobenius matrix between spans of negative monomials: the class x^{-a} maps
/// to f^(p-1) x^{-pa}, so the (b, a) entry is the coefficient of x^{pa-b} in
/// f^(p-1). Out-of-range exponents contribute nothing.
inline FMatrix frobenius_matrix(const HypersurfaceData& H, const SparsePoly& f_pm1,
                                const std::vector<Monomial>& cols, const std::vector<Monomial>& rows) {
  const std::int64_t p = H.field().characteristic();
  FMatrix M(H.field(), static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  const std::int64_t max_exp = f_pm1.is_zero() ? 0 : f_pm1.max_exponent();
  std::vector<std::int32_t> query(static_cast<std::size_t>(H.nvars()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      bool in_range = true;
      for (std::size_t k = 0; k < query.size(); ++k) {
        const std::int64_t q = p * static_cast<std::int64_t>(cols[j][k]) - rows[i][k];
        if (q < 0 || q > max_exp) {
          in_range = false;
          break;
        }
        query[k] = static_cast<std::int32_t>(q);
      }
      M.at(static_cast<int>(i), static_cast<int>(j)) =
          in_range ? f_pm1.coefficient(query) : H.field().zero();
    }
  }
  return M;
}
}  // namespace detail

/// The Frobenius action on the degree-zero piece of top local cohomology of
/// the hypersurface ring, as a p-semilinear operator on the span of
/// neg_monomials(d). Empty basis short-circuits without computing f^(p-1).
inline SemilinearOperator frobenius_on_degree_zero(const HypersurfaceData& H) {
  const std::vector<Monomial> basis = neg_monomials(H, H.weighted_deg());
  if (basis.empty()) return SemilinearOperator(FMatrix(H.field(), 0, 0));
  const SparsePoly f_pm1 = power_pminus1(H.poly(), H.weights());
  return SemilinearOperator(detail::frobenius_matrix(H, f_pm1, basis, basis));
}

/// Frobenius multiplies degrees by p: the degree-e ambient span maps into the
/// degree p*e span. Rows are indexed by neg_monomials(d - p*e).
inline FMatrix frobenius_degree_map(const HypersurfaceData& H, std::int64_t e) {
  const std::vector<Monomial> cols = neg_monomials(H, H.weighted_deg() - e);
  const std::vector<Monomial> rows = neg_monomials(H, H.weighted_deg() - H.field().characteristic() * e);
  if (cols.empty() || rows.empty())
    return FMatrix(H.field(), static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  const SparsePoly f_pm1 = power_pminus1(H.poly(), H.weights());
  return detail::frobenius_matrix(H, f_pm1, cols, rows);
}

enum class Verdict { F_NILPOTENT, NOT_F_NILPOTENT };

inline const char* verdict_name(Verdict v) {
  return v == Verdict::F_NILPOTENT ? "F_NILPOTENT" : "NOT_F_NILPOTENT";
}

struct GradedVerdict {
  Verdict verdict = Verdict::F_NILPOTENT;
  int basis_dim = 0;
  int ss_dim = 0;
  int nil_dim = 0;
  std::int64_t a_inv = 0;
  /// A nonzero Frobenius-fixed class certifying the negative verdict, when one
  /// exists over the given prime field.
  std::optional<FVector> fixed_witness;
  std::vector<std::string> assumptions;
};

/// Decides nilpotence of Frobenius on the degree-zero piece. For the graded
/// rings in scope this settles the classification, provided the cone point is
/// the only non-smooth point; that hypothesis is recorded, not verified.
inline GradedVerdict classify_graded(const HypersurfaceData& H) {
  GradedVerdict v;
  v.a_inv = a_invariant(H);
  v.assumptions = {
      "singular locus assumed concentrated at the cone point (probe with the isolated-locus search)",
      "ring assumed F-rational away from the cone point; the computation does not verify this",
  };
  const SemilinearOperator op = frobenius_on_degree_zero(H);
  v.basis_dim = op.dim();
  if (op.dim() == 0) {
    v.verdict = Verdict::F_NILPOTENT;
    return v;
  }
  const FittingSplit split = fitting_decomposition(op);
  v.ss_dim = split.ss_dim;
  v.nil_dim = split.nil_dim;
  if (split.ss_dim == 0) {
    v.verdict = Verdict::F_NILPOTENT;
    return v;
  }
  v.verdict = Verdict::NOT_F_NILPOTENT;
  if (H.field().extension_degree() == 1) {
    const auto fixed = fixed_points(op);
    if (!fixed.empty()) v.fixed_witness = fixed.front();
  }
  return v;
}

/// Heuristic search for singular points of the affine cone away from the
/// origin, over extensions of degree up to max_extension. The weighted scaling
/// action lets the first nonzero coordinate be normalized to coset
/// representatives of w_i-th powers, shrinking the search space.
struct IsolatedCheckOptions {
  int max_extension = 1;
  std::uint64_t point_budget = 4000000;
};

struct IsolatedCheck {
  enum class Status { PASS, FAIL, INCONCLUSIVE };
  Status status = Status::INCONCLUSIVE;
  std::optional<FVector> witness;     // a singular point, on FAIL
  int witness_extension = 0;          // extension degree of the witness field
  int checked_up_to = 0;              // largest extension fully enumerated
};

inline const char* isolated_status_name(IsolatedCheck::Status s) {
  switch (s) {
    case IsolatedCheck::Status::PASS: return "PASS";
    case IsolatedCheck::Status::FAIL: return "FAIL";
    default: return "INCONCLUSIVE";
  }
}

inline SparsePoly derivative(const SparsePoly& f, int var) {
  if (var < 0 || var >= f.nvars()) throw std::invalid_argument("derivative variable out of range");
  SparsePoly out(f.field(), f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if (m[static_cast<std::size_t>(var)] == 0) continue;
    const std::uint64_t factor = f.field().from_int(m[static_cast<std::size_t>(var)]).canonical();
    const std::uint64_t cc = f.field().can_mul(c, factor);
    if (cc == 0) continue;
    Monomial mm = m;
    mm[static_cast<std::size_t>(var)] -= 1;
    out.add_canonical(mm, cc);
  }
  return out;
}

namespace detail {
/// Coset representatives of the w-th powers inside the multiplicative group,
/// as canonical codes. Greedy and deterministic: smallest uncovered code first.
inline std::vector<std::uint64_t> power_coset_reps(const FiniteField& F, std::int64_t w) {
  const std::uint64_t q = F.cardinality();
  std::vector<std::uint64_t> subgroup;
  std::vector<bool> in_subgroup(q, false);
  for (std::uint64_t c = 1; c < q; ++c) {
    const std::uint64_t pw = F.can_pow(c, static_cast<std::uint64_t>(w));
    if (!in_subgroup[pw]) {
      in_subgroup[pw] = true;
      subgroup.push_back(pw);
    }
  }
  std::vector<bool> covered(q, false);
  std::vector<std::uint64_t> reps;
  for (std::uint64_t c = 1; c < q; ++c) {
    if (covered[c]) continue;
    reps.push_back(c);
    for (const std::uint64_t s : subgroup) covered[F.can_mul(c, s)] = true;
  }
  return reps;
}

inline std::uint64_t eval_poly_canonical(const SparsePoly& f, const std::vector<std::uint64_t>& point,
                                         const FiniteField& F) {
  std::uint64_t acc = 0;
  for (const auto& [m, c] : f.terms()) {
    std::uint64_t term = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      term = F.can_mul(term, F.can_pow(point[i], static_cast<std::uint64_t>(m[i])));
    }
    acc = F.can_add(acc, term);
  }
  return acc;
}
}  // namespace detail

inline IsolatedCheck isolated_check(const HypersurfaceData& H, const IsolatedCheckOptions& opts = {}) {
  IsolatedCheck result;
  const int n = H.nvars();
  if (n > 4) throw std::invalid_argument("isolated-locus search supports at most four variables");
  const std::int64_t p = H.field().characteristic();
  if (H.field().extension_degree() != 1)
    throw std::invalid_argument("isolated-locus search starts from a prime field");
  if (opts.max_extension < 1) throw std::invalid_argument("max extension must be >= 1");

  for (int e = 1; e <= opts.max_extension; ++e) {
    std::uint64_t q = 1;
    bool too_big = false;
    for (int i = 0; i < e; ++i) {
      q *= static_cast<std::uint64_t>(p);
      if (e > 1 && q > 65536) {
        too_big = true;
        break;
      }
    }
    if (too_big) {
      result.status = IsolatedCheck::Status::INCONCLUSIVE;
      return result;
    }
    const FiniteField Fe = (e == 1) ? H.field() : FiniteField::make(p, e);

    std::vector<std::vector<std::uint64_t>> reps(static_cast<std::size_t>(n));
    std::uint64_t points = 0;
    bool over_budget = q > (std::uint64_t{1} << 20);
    if (!over_budget) {
      for (int i = 0; i < n; ++i) {
        reps[static_cast<std::size_t>(i)] = detail::power_coset_reps(Fe, H.weights()[static_cast<std::size_t>(i)]);
        std::uint64_t block = reps[static_cast<std::size_t>(i)].size();
        for (int j = i + 1; j < n; ++j) {
          block *= q;
          if (block > opts.point_budget) break;
        }
        points += block;
        if (points > opts.point_budget) {
          over_budget = true;
          break;
        }
      }
    }
    if (over_budget) {
      result.status = IsolatedCheck::Status::INCONCLUSIVE;
      return result;
    }

    // Re-read the defining data over the extension.
    SparsePoly f = H.poly();
    if (e > 1) {
      SparsePoly lifted(Fe, n);
      for (const auto& [m, c] : H.poly().terms())
        lifted.set_canonical(m, Fe.from_int(static_cast<std::int64_t>(c)).canonical());
      f = lifted;
    }
    std::vector<SparsePoly> partials;
    partials.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) partials.push_back(derivative(f, i));

    std::vector<std::uint64_t> point(static_cast<std::size_t>(n), 0);
    for (int lead = 0; lead < n; ++lead) {
      std::fill(point.begin(), point.end(), 0);
      const std::uint64_t tail = static_cast<std::uint64_t>(n - 1 - lead);
      std::uint64_t combos = 1;
      for (std::uint64_t i = 0; i < tail; ++i) combos *= q;
      for (const std::uint64_t rep : reps[static_cast<std::size_t>(lead)]) {
        point[static_cast<std::size_t>(lead)] = rep;
        for (std::uint64_t code = 0; code < combos; ++code) {
          std::uint64_t c = code;
          for (int j = lead + 1; j < n; ++j) {
            point[static_cast<std::size_t>(j)] = c % q;
            c /= q;
          }
          if (detail::eval_poly_canonical(f, point, Fe) != 0) continue;
          bool singular = true;
          for (const auto& g : partials) {
            if (detail::eval_poly_canonical(g, point, Fe) != 0) {
              singular = false;
              break;
            }
          }
          if (singular) {
            result.status = IsolatedCheck::Status::FAIL;
            FVector w;
            w.reserve(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) w.push_back(Fe.from_canonical(point[static_cast<std::size_t>(j)]));
            result.witness = std::move(w);
            result.witness_extension = e;
            return result;
          }
        }
      }
    }
    result.checked_up_to = e;
  }
  result.status = IsolatedCheck::Status::PASS;
  return result;
}

}  // namespace fnil
