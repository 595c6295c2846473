#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fnil {
namespace detail {

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin. Callers keep n < 2^31, so 64-bit products cannot overflow.
inline bool is_prime_int64(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = static_cast<std::uint64_t>(n - 1);
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod_u64(a, d, static_cast<std::uint64_t>(n));
    if (x == 1 || x == static_cast<std::uint64_t>(n - 1)) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = x * x % static_cast<std::uint64_t>(n);
      if (x == static_cast<std::uint64_t>(n - 1)) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Dense little-endian coefficient vectors over F_p, no trailing zeros.
using PolyFp = std::vector<std::uint32_t>;

inline void poly_trim(PolyFp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyFp poly_mul(const PolyFp& a, const PolyFp& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyFp c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = static_cast<std::uint32_t>((c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  poly_trim(c);
  return c;
}

// Remainder of a modulo a monic m.
inline PolyFp poly_rem(PolyFp a, const PolyFp& m, std::uint64_t p) {
  poly_trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    if (lead) {
      for (std::size_t i = 0; i < dm; ++i) {
        const std::uint64_t sub = lead * m[i] % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
    poly_trim(a);
  }
  return a;
}

inline PolyFp poly_powmod_x(std::uint64_t k, const PolyFp& m, std::uint64_t p) {
  PolyFp result{1};
  PolyFp base = poly_rem(PolyFp{0, 1}, m, p);
  while (k) {
    if (k & 1) result = poly_rem(poly_mul(result, base, p), m, p);
    base = poly_rem(poly_mul(base, base, p), m, p);
    k >>= 1;
  }
  poly_trim(result);
  return result;
}

inline PolyFp poly_gcd(PolyFp a, PolyFp b, std::uint64_t p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = powmod_u64(b.back(), p - 2, p);
    PolyFp bm = b;
    for (auto& c : bm) c = static_cast<std::uint32_t>(c * inv % p);
    PolyFp r = poly_rem(a, bm, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin irreducibility test for a monic m over F_p. Requires p^deg(m) to fit in 64 bits;
// field construction caps the cardinality well below that.
inline bool poly_is_irreducible(const PolyFp& m, std::uint64_t p) {
  if (m.size() < 2) return false;
  const std::size_t d = m.size() - 1;
  if (d == 1) return true;
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < d; ++i) q *= p;
  const PolyFp x = poly_rem(PolyFp{0, 1}, m, p);
  if (poly_powmod_x(q, m, p) != x) return false;
  for (std::size_t r = 2; r <= d; ++r) {
    if (d % r != 0) continue;
    bool r_prime = true;
    for (std::size_t t = 2; t * t <= r; ++t) {
      if (r % t == 0) {
        r_prime = false;
        break;
      }
    }
    if (!r_prime) continue;
    std::uint64_t qr = 1;
    for (std::size_t i = 0; i < d / r; ++i) qr *= p;
    PolyFp diff = poly_powmod_x(qr, m, p);
    // diff -= x
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
    poly_trim(diff);
    PolyFp g = poly_gcd(m, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

// Deterministic default modulus for F_{p^e}: the first monic degree-e polynomial,
// enumerating coefficient vectors least-significant digit first, that is irreducible.
// Memoized; the same (p, e) always yields the same modulus.
inline PolyFp default_modulus(std::int64_t p, int e) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>, PolyFp> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, e});
  if (it != cache.end()) return it->second;
  std::uint64_t total = 1;
  for (int i = 0; i < e; ++i) total *= static_cast<std::uint64_t>(p);
  for (std::uint64_t count = 0; count < total; ++count) {
    PolyFp m(static_cast<std::size_t>(e) + 1, 0);
    std::uint64_t c = count;
    for (int i = 0; i < e; ++i) {
      m[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(c % static_cast<std::uint64_t>(p));
      c /= static_cast<std::uint64_t>(p);
    }
    m[static_cast<std::size_t>(e)] = 1;
    if (poly_is_irreducible(m, static_cast<std::uint64_t>(p))) {
      cache[{p, e}] = m;
      return m;
    }
  }
  throw std::logic_error("no irreducible modulus found");  // unreachable: count >= 1 always
}

}  // namespace detail

class FieldElement;

/// A finite field F_{p^e}. Prime fields carry no modulus; extensions are
/// F_p[t]/(m) for a monic irreducible m of degree e. Values are immutable and
/// cheap to copy; two fields compare equal iff they have the same (p, e, m).
class FiniteField {
 public:
  FiniteField() = default;

  /// Extensions (e >= 2) are capped at p^e <= 65536; a missing modulus is
  /// filled from the deterministic default table.
  static FiniteField make(std::int64_t p, int e = 1,
                          const std::optional<std::vector<std::int64_t>>& modulus = std::nullopt);

  bool valid() const { return static_cast<bool>(d_); }
  std::int64_t characteristic() const { return data().p; }
  int extension_degree() const { return data().e; }
  std::uint64_t cardinality() const {
    std::uint64_t q = 1;
    for (int i = 0; i < data().e; ++i) q *= static_cast<std::uint64_t>(data().p);
    return q;
  }
  /// Monic modulus, little-endian, size e+1. Only meaningful for e >= 2.
  const detail::PolyFp& modulus() const { return data().modulus; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t v) const;
  /// Element with the given coordinate vector (length e) over F_p.
  FieldElement element(const std::vector<std::int64_t>& coords) const;
  /// Element from its canonical code sum_i c_i p^i, 0 <= code < p^e.
  FieldElement from_canonical(std::uint64_t code) const;
  /// All field elements in canonical-code order. Guarded for small fields.
  std::vector<FieldElement> all_elements() const;

  // Arithmetic on canonical codes; the prime-field case reduces to machine residues.
  std::uint64_t can_add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t can_sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t can_neg(std::uint64_t a) const;
  std::uint64_t can_mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t can_pow(std::uint64_t a, std::uint64_t k) const;
  std::uint64_t can_inv(std::uint64_t a) const;

  bool operator==(const FiniteField& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    return d_->p == o.d_->p && d_->e == o.d_->e && d_->modulus == o.d_->modulus;
  }
  bool operator!=(const FiniteField& o) const { return !(*this == o); }

  std::string str() const {
    std::ostringstream os;
    if (data().e == 1) {
      os << "F_" << data().p;
    } else {
      os << "F_{" << data().p << "^" << data().e << "}";
    }
    return os.str();
  }

 private:
  struct Data {
    std::int64_t p = 0;
    int e = 1;
    detail::PolyFp modulus;  // empty for e == 1
  };
  std::shared_ptr<const Data> d_;

  const Data& data() const {
    if (!d_) throw std::logic_error("use of a default-constructed FiniteField");
    return *d_;
  }
  std::vector<std::uint32_t> decode(std::uint64_t code) const;
  std::uint64_t encode(const std::vector<std::uint32_t>& c) const;

  friend class FieldElement;
};

/// An element of a FiniteField, stored as a coordinate vector over F_p.
class FieldElement {
 public:
  FieldElement() = default;

  bool valid() const { return f_.valid(); }
  const FiniteField& field() const { return f_; }
  bool is_zero() const {
    for (auto c : c_)
      if (c) return false;
    return true;
  }
  const std::vector<std::uint32_t>& coords() const { return c_; }
  std::uint64_t canonical() const { return f_.encode(c_); }
  /// Residue value; prime fields only.
  std::int64_t as_int() const {
    if (f_.extension_degree() != 1) throw std::logic_error("as_int on an extension-field element");
    return static_cast<std::int64_t>(c_[0]);
  }

  FieldElement operator+(const FieldElement& o) const {
    check_same(o);
    const std::uint64_t p = static_cast<std::uint64_t>(f_.characteristic());
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
      r[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(c_[i]) + o.c_[i]) % p);
    return FieldElement(f_, std::move(r));
  }
  FieldElement operator-(const FieldElement& o) const {
    check_same(o);
    const std::uint64_t p = static_cast<std::uint64_t>(f_.characteristic());
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
      r[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(c_[i]) + p - o.c_[i]) % p);
    return FieldElement(f_, std::move(r));
  }
  FieldElement operator-() const {
    const std::uint64_t p = static_cast<std::uint64_t>(f_.characteristic());
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
      r[i] = static_cast<std::uint32_t>((p - c_[i]) % p);
    return FieldElement(f_, std::move(r));
  }
  FieldElement operator*(const FieldElement& o) const {
    check_same(o);
    const std::uint64_t p = static_cast<std::uint64_t>(f_.characteristic());
    if (f_.extension_degree() == 1) {
      return FieldElement(f_, {static_cast<std::uint32_t>(static_cast<std::uint64_t>(c_[0]) * o.c_[0] % p)});
    }
    detail::PolyFp prod = detail::poly_mul(c_, o.c_, p);
    prod = detail::poly_rem(std::move(prod), f_.modulus(), p);
    prod.resize(static_cast<std::size_t>(f_.extension_degree()), 0);
    return FieldElement(f_, std::move(prod));
  }
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

  bool operator==(const FieldElement& o) const {
    if (!valid() && !o.valid()) return true;
    if (!valid() || !o.valid()) return false;
    return f_ == o.f_ && c_ == o.c_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement pow(std::uint64_t k) const {
    FieldElement r = f_.one();
    FieldElement b = *this;
    while (k) {
      if (k & 1) r = r * b;
      b = b * b;
      k >>= 1;
    }
    return r;
  }
  FieldElement inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return pow(f_.cardinality() - 2);
  }

  std::string str() const {
    if (f_.extension_degree() == 1) return std::to_string(c_[0]);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0) {
        os << c_[i];
      } else {
        if (c_[i] != 1) os << c_[i] << "*";
        os << "t";
        if (i > 1) os << "^" << i;
      }
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  friend class FiniteField;
  FieldElement(FiniteField f, std::vector<std::uint32_t> c) : f_(std::move(f)), c_(std::move(c)) {}

  void check_same(const FieldElement& o) const {
    if (!(f_ == o.f_)) throw std::invalid_argument("field mismatch between elements");
  }

  FiniteField f_;
  std::vector<std::uint32_t> c_;
};

inline FiniteField FiniteField::make(std::int64_t p, int e,
                                     const std::optional<std::vector<std::int64_t>>& modulus) {
  if (p >= (std::int64_t{1} << 31)) throw std::invalid_argument("characteristic too large: " + std::to_string(p));
  if (!detail::is_prime_int64(p)) throw std::invalid_argument("characteristic must be prime: " + std::to_string(p));
  if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
  Data d;
  d.p = p;
  d.e = e;
  if (e >= 2) {
    std::uint64_t q = 1;
    for (int i = 0; i < e; ++i) {
      q *= static_cast<std::uint64_t>(p);
      if (q > 65536) throw std::invalid_argument("extension too large: require p^e <= 65536");
    }
    detail::PolyFp m;
    if (modulus) {
      m.resize(modulus->size());
      for (std::size_t i = 0; i < modulus->size(); ++i) {
        std::int64_t c = (*modulus)[i] % p;
        if (c < 0) c += p;
        m[i] = static_cast<std::uint32_t>(c);
      }
      detail::poly_trim(m);
      if (m.size() != static_cast<std::size_t>(e) + 1)
        throw std::invalid_argument("modulus degree must equal the extension degree");
      if (m.back() != 1) {
        const std::uint64_t inv =
            detail::powmod_u64(m.back(), static_cast<std::uint64_t>(p - 2), static_cast<std::uint64_t>(p));
        for (auto& c : m) c = static_cast<std::uint32_t>(c * inv % static_cast<std::uint64_t>(p));
      }
      if (!detail::poly_is_irreducible(m, static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("modulus is reducible");
    } else {
      m = detail::default_modulus(p, e);
    }
    d.modulus = std::move(m);
  } else if (modulus) {
    detail::PolyFp m(modulus->size());
    for (std::size_t i = 0; i < modulus->size(); ++i) {
      std::int64_t c = (*modulus)[i] % p;
      if (c < 0) c += p;
      m[i] = static_cast<std::uint32_t>(c);
    }
    detail::poly_trim(m);
    if (m.size() != 2) throw std::invalid_argument("modulus degree must equal the extension degree");
    // A degree-1 modulus pins down F_p itself; nothing to store.
  }
  FiniteField f;
  f.d_ = std::make_shared<const Data>(std::move(d));
  return f;
}

inline std::vector<std::uint32_t> FiniteField::decode(std::uint64_t code) const {
  const auto& d = data();
  std::vector<std::uint32_t> c(static_cast<std::size_t>(d.e));
  for (int i = 0; i < d.e; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(code % static_cast<std::uint64_t>(d.p));
    code /= static_cast<std::uint64_t>(d.p);
  }
  return c;
}

inline std::uint64_t FiniteField::encode(const std::vector<std::uint32_t>& c) const {
  const auto& d = data();
  std::uint64_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) code = code * static_cast<std::uint64_t>(d.p) + c[i];
  return code;
}

inline FieldElement FiniteField::zero() const {
  return FieldElement(*this, std::vector<std::uint32_t>(static_cast<std::size_t>(data().e), 0));
}

inline FieldElement FiniteField::one() const {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(data().e), 0);
  c[0] = 1;
  return FieldElement(*this, std::move(c));
}

inline FieldElement FiniteField::from_int(std::int64_t v) const {
  const auto& d = data();
  std::int64_t r = v % d.p;
  if (r < 0) r += d.p;
  std::vector<std::uint32_t> c(static_cast<std::size_t>(d.e), 0);
  c[0] = static_cast<std::uint32_t>(r);
  return FieldElement(*this, std::move(c));
}

inline FieldElement FiniteField::element(const std::vector<std::int64_t>& coords) const {
  const auto& d = data();
  if (coords.size() != static_cast<std::size_t>(d.e))
    throw std::invalid_argument("coordinate vector length must equal the extension degree");
  std::vector<std::uint32_t> c(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    std::int64_t r = coords[i] % d.p;
    if (r < 0) r += d.p;
    c[i] = static_cast<std::uint32_t>(r);
  }
  return FieldElement(*this, std::move(c));
}

inline FieldElement FiniteField::from_canonical(std::uint64_t code) const {
  if (code >= cardinality()) throw std::out_of_range("canonical code out of range");
  return FieldElement(*this, decode(code));
}

inline std::vector<FieldElement> FiniteField::all_elements() const {
  const std::uint64_t q = cardinality();
  if (q > (std::uint64_t{1} << 20)) throw std::domain_error("field too large to enumerate");
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(q));
  for (std::uint64_t code = 0; code < q; ++code) out.push_back(from_canonical(code));
  return out;
}

inline std::uint64_t FiniteField::can_add(std::uint64_t a, std::uint64_t b) const {
  const auto& d = data();
  if (d.e == 1) return (a + b) % static_cast<std::uint64_t>(d.p);
  auto ca = decode(a), cb = decode(b);
  for (std::size_t i = 0; i < ca.size(); ++i)
    ca[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(ca[i]) + cb[i]) % static_cast<std::uint64_t>(d.p));
  return encode(ca);
}

inline std::uint64_t FiniteField::can_sub(std::uint64_t a, std::uint64_t b) const {
  return can_add(a, can_neg(b));
}

inline std::uint64_t FiniteField::can_neg(std::uint64_t a) const {
  const auto& d = data();
  if (d.e == 1) return a == 0 ? 0 : static_cast<std::uint64_t>(d.p) - a;
  auto c = decode(a);
  for (auto& x : c) x = static_cast<std::uint32_t>((static_cast<std::uint64_t>(d.p) - x) % static_cast<std::uint64_t>(d.p));
  return encode(c);
}

inline std::uint64_t FiniteField::can_mul(std::uint64_t a, std::uint64_t b) const {
  const auto& d = data();
  if (d.e == 1) return a * b % static_cast<std::uint64_t>(d.p);
  detail::PolyFp pa = decode(a), pb = decode(b);
  detail::PolyFp prod = detail::poly_mul(pa, pb, static_cast<std::uint64_t>(d.p));
  prod = detail::poly_rem(std::move(prod), d.modulus, static_cast<std::uint64_t>(d.p));
  prod.resize(static_cast<std::size_t>(d.e), 0);
  return encode(prod);
}

inline std::uint64_t FiniteField::can_pow(std::uint64_t a, std::uint64_t k) const {
  std::uint64_t r = encode(one().coords());
  while (k) {
    if (k & 1) r = can_mul(r, a);
    a = can_mul(a, a);
    k >>= 1;
  }
  return r;
}

inline std::uint64_t FiniteField::can_inv(std::uint64_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return can_pow(a, cardinality() - 2);
}

/// The field Frobenius x -> x^p. The identity on prime fields.
inline FieldElement frobenius(const FieldElement& x) {
  if (x.field().extension_degree() == 1) return x;
  return x.pow(static_cast<std::uint64_t>(x.field().characteristic()));
}

/// k-fold Frobenius x -> x^{p^k}.
inline FieldElement frobenius_iter(const FieldElement& x, int k) {
  FieldElement r = x;
  if (x.field().extension_degree() == 1) return r;
  const int e = x.field().extension_degree();
  for (int i = 0; i < k % e; ++i) r = frobenius(r);
  return r;
}

}  // namespace fnil
