#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fnil/fields.hpp"

namespace fnil {

/// Exponent vector; components are kept non-negative in stored terms.
using Monomial = std::vector<std::int32_t>;

struct WeightSystem {
  std::vector<std::int64_t> w;

  WeightSystem() = default;
  explicit WeightSystem(std::vector<std::int64_t> ws) : w(std::move(ws)) {
    if (w.empty()) throw std::invalid_argument("weight system must not be empty");
    for (auto x : w)
      if (x < 1) throw std::invalid_argument("weights must be positive integers");
  }
  std::size_t size() const { return w.size(); }
  std::int64_t operator[](std::size_t i) const { return w[i]; }
  std::int64_t total() const { return std::accumulate(w.begin(), w.end(), std::int64_t{0}); }
  bool operator==(const WeightSystem& o) const { return w == o.w; }
};

inline std::int64_t weighted_degree(const Monomial& m, const WeightSystem& w) {
  if (m.size() != w.size()) throw std::invalid_argument("monomial length does not match the weight system");
  std::int64_t d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<std::int64_t>(m[i]) * w[i];
  return d;
}

namespace detail {
struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : m) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};
}  // namespace detail

/// Sparse multivariate polynomial over a finite field. Terms are stored as a
/// map from exponent vectors to nonzero coefficients in canonical-code form,
/// so iteration order is lexicographic on exponent vectors.
class SparsePoly {
 public:
  SparsePoly() = default;
  SparsePoly(FiniteField f, int nvars) : f_(std::move(f)), n_(nvars) {
    if (nvars < 1) throw std::invalid_argument("polynomial needs at least one variable");
  }

  const FiniteField& field() const { return f_; }
  int nvars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, std::uint64_t>& terms() const { return terms_; }

  void set(const Monomial& m, const FieldElement& c) { set_canonical(m, c.canonical()); }

  void set_canonical(const Monomial& m, std::uint64_t code) {
    check_monomial(m);
    if (code == 0) {
      terms_.erase(m);
    } else {
      terms_[m] = code;
    }
  }

  void add_canonical(const Monomial& m, std::uint64_t code) {
    check_monomial(m);
    if (code == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, code);
      return;
    }
    it->second = f_.can_add(it->second, code);
    if (it->second == 0) terms_.erase(it);
  }

  /// Coefficient lookup; exponent vectors with negative or absent entries give zero.
  FieldElement coefficient(const std::vector<std::int32_t>& m) const {
    if (static_cast<int>(m.size()) != n_) throw std::invalid_argument("exponent vector length mismatch");
    for (auto x : m)
      if (x < 0) return f_.zero();
    auto it = terms_.find(m);
    if (it == terms_.end()) return f_.zero();
    return f_.from_canonical(it->second);
  }

  std::int32_t max_exponent() const {
    std::int32_t mx = 0;
    for (const auto& [m, c] : terms_)
      for (auto x : m) mx = std::max(mx, x);
    return mx;
  }

  SparsePoly operator+(const SparsePoly& o) const {
    check_compatible(o);
    SparsePoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_canonical(m, c);
    return out;
  }

  SparsePoly operator-(const SparsePoly& o) const {
    check_compatible(o);
    SparsePoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_canonical(m, f_.can_neg(c));
    return out;
  }

  SparsePoly scaled(const FieldElement& c) const {
    SparsePoly out(f_, n_);
    const std::uint64_t code = c.canonical();
    if (code == 0) return out;
    for (const auto& [m, cc] : terms_) out.terms_[m] = f_.can_mul(cc, code);
    return out;
  }

  bool operator==(const SparsePoly& o) const { return f_ == o.f_ && n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  std::string str(const std::vector<std::string>& vars) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << f_.from_canonical(c).str();
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        os << "*" << (i < vars.size() ? vars[i] : "x" + std::to_string(i));
        if (m[i] != 1) os << "^" << m[i];
      }
    }
    return os.str();
  }

 private:
  void check_monomial(const Monomial& m) const {
    if (static_cast<int>(m.size()) != n_) throw std::invalid_argument("exponent vector length mismatch");
    for (auto x : m)
      if (x < 0) throw std::invalid_argument("stored exponents must be non-negative");
  }
  void check_compatible(const SparsePoly& o) const {
    if (!(f_ == o.f_) || n_ != o.n_) throw std::invalid_argument("polynomial field or variable-count mismatch");
  }

  FiniteField f_;
  int n_ = 0;
  std::map<Monomial, std::uint64_t> terms_;
};

namespace detail {

enum class MulPath { Auto, Sparse, Dense };

inline SparsePoly multiply_sparse(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out(a.field(), a.nvars());
  const FiniteField& F = a.field();
  std::unordered_map<Monomial, std::uint64_t, MonomialHash> acc;
  acc.reserve(a.term_count() + b.term_count());
  Monomial m(static_cast<std::size_t>(a.nvars()));
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      const std::uint64_t prod = F.can_mul(ca, cb);
      auto [it, inserted] = acc.try_emplace(m, prod);
      if (!inserted) it->second = F.can_add(it->second, prod);
    }
  }
  for (auto& [mm, cc] : acc)
    if (cc != 0) out.set_canonical(mm, cc);
  return out;
}

/// Product of two 3-variable polynomials that are quasi-homogeneous for the
/// weight system w (degrees da, db). The first exponent is determined by the
/// other two, so the accumulator is a dense 2-D array of residues.
inline SparsePoly multiply_dense_3var(const SparsePoly& a, const SparsePoly& b, const WeightSystem& w,
                                      std::int64_t da, std::int64_t db) {
  const FiniteField& F = a.field();
  const std::uint64_t p = static_cast<std::uint64_t>(F.characteristic());
  const std::int64_t D = da + db;
  const std::int64_t b1 = D / w[1], b2 = D / w[2];
  std::vector<std::uint64_t> acc(static_cast<std::size_t>((b1 + 1) * (b2 + 1)), 0);
  const std::int64_t stride = b2 + 1;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const std::int64_t u1 = ma[1] + mb[1];
      const std::int64_t u2 = ma[2] + mb[2];
      std::uint64_t& slot = acc[static_cast<std::size_t>(u1 * stride + u2)];
      slot = (slot + ca * cb) % p;
    }
  }
  SparsePoly out(F, 3);
  for (std::int64_t u1 = 0; u1 <= b1; ++u1) {
    for (std::int64_t u2 = 0; u2 <= b2; ++u2) {
      const std::uint64_t c = acc[static_cast<std::size_t>(u1 * stride + u2)];
      if (c == 0) continue;
      const std::int64_t rem = D - u1 * w[1] - u2 * w[2];
      // rem is a multiple of w[0] for every populated slot by construction
      const std::int64_t u0 = rem / w[0];
      out.set_canonical({static_cast<std::int32_t>(u0), static_cast<std::int32_t>(u1), static_cast<std::int32_t>(u2)}, c);
    }
  }
  return out;
}

}  // namespace detail

/// Weighted degree shared by every term, if one exists. Zero polynomials are rejected.
inline std::optional<std::int64_t> is_quasi_homogeneous(const SparsePoly& f, const WeightSystem& w) {
  if (f.is_zero()) throw std::invalid_argument("quasi-homogeneity is undefined for the zero polynomial");
  if (w.size() != static_cast<std::size_t>(f.nvars()))
    throw std::invalid_argument("weight system length does not match the polynomial");
  std::optional<std::int64_t> d;
  for (const auto& [m, c] : f.terms()) {
    const std::int64_t dm = weighted_degree(m, w);
    if (!d) {
      d = dm;
    } else if (*d != dm) {
      return std::nullopt;
    }
  }
  return d;
}

/// Product with an automatic path choice: sparse hash accumulation normally, a
/// dense 2-D accumulator for large 3-variable quasi-homogeneous products over
/// prime fields. The optional weight hint enables the dense path for non-unit
/// weights; without it, ordinary homogeneity (unit weights) is detected.
inline SparsePoly multiply(const SparsePoly& a, const SparsePoly& b,
                           const std::optional<WeightSystem>& hint = std::nullopt,
                           detail::MulPath path = detail::MulPath::Auto) {
  if (!(a.field() == b.field()) || a.nvars() != b.nvars())
    throw std::invalid_argument("polynomial field or variable-count mismatch");
  if (a.is_zero() || b.is_zero()) return SparsePoly(a.field(), a.nvars());

  const bool dense_eligible = a.nvars() == 3 && a.field().extension_degree() == 1;
  std::optional<WeightSystem> w;
  std::int64_t da = 0, db = 0;
  if (dense_eligible) {
    WeightSystem cand = hint ? *hint : WeightSystem({1, 1, 1});
    if (cand.size() == 3) {
      auto qa = is_quasi_homogeneous(a, cand);
      auto qb = is_quasi_homogeneous(b, cand);
      if (qa && qb) {
        w = cand;
        da = *qa;
        db = *qb;
      }
    }
  }

  bool use_dense = false;
  switch (path) {
    case detail::MulPath::Sparse:
      use_dense = false;
      break;
    case detail::MulPath::Dense:
      if (!w) throw std::invalid_argument("dense product path requires quasi-homogeneous 3-variable factors");
      use_dense = true;
      break;
    case detail::MulPath::Auto: {
      if (w) {
        const std::uint64_t pairs = static_cast<std::uint64_t>(a.term_count()) * b.term_count();
        const std::int64_t D = da + db;
        const std::int64_t slots = (D / (*w)[1] + 1) * (D / (*w)[2] + 1);
        use_dense = pairs > 500000 && slots <= 160000000;
      }
      break;
    }
  }
  return use_dense ? detail::multiply_dense_3var(a, b, *w, da, db) : detail::multiply_sparse(a, b);
}

/// f^m by binary powering. The weight hint only affects the internal product path.
inline SparsePoly poly_pow(const SparsePoly& f, std::uint64_t m,
                           const std::optional<WeightSystem>& hint = std::nullopt) {
  SparsePoly result(f.field(), f.nvars());
  result.set_canonical(Monomial(static_cast<std::size_t>(f.nvars()), 0), f.field().one().canonical());
  SparsePoly base = f;
  while (m) {
    if (m & 1) result = multiply(result, base, hint);
    if (m >>= 1; m) base = multiply(base, base, hint);
  }
  return result;
}

/// f^(p-1) for p the field characteristic. Exponents stay in 32 bits; the
/// guard rejects inputs whose p-fold exponents would leave that range.
inline SparsePoly power_pminus1(const SparsePoly& f, const std::optional<WeightSystem>& hint = std::nullopt) {
  if (f.is_zero()) throw std::invalid_argument("cannot raise the zero polynomial to p-1");
  const std::int64_t p = f.field().characteristic();
  const std::int64_t mx = f.max_exponent();
  if (p * (mx > 0 ? mx : 1) >= (std::int64_t{1} << 31))
    throw std::overflow_error("exponent range overflow: p * max-exponent must stay below 2^31");
  return poly_pow(f, static_cast<std::uint64_t>(p - 1), hint);
}

/// Integer-coefficient polynomial, the prime-independent input form.
struct IntTerm {
  std::int64_t coeff = 0;
  Monomial exponents;
};
struct IntPoly {
  int nvars = 0;
  std::vector<IntTerm> terms;
};

/// Reduction modulo the field characteristic; terms that die are dropped.
inline SparsePoly reduce_mod_p(const IntPoly& f, const FiniteField& field) {
  if (field.extension_degree() != 1) throw std::invalid_argument("reduction targets a prime field");
  SparsePoly out(field, f.nvars);
  for (const auto& t : f.terms) {
    if (static_cast<int>(t.exponents.size()) != f.nvars)
      throw std::invalid_argument("exponent vector length mismatch in integer polynomial");
    out.add_canonical(t.exponents, field.from_int(t.coeff).canonical());
  }
  return out;
}

}  // namespace fnil
