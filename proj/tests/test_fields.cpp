#include <catch2/catch_amalgamated.hpp>

#include <fnil/fields.hpp>

using fnil::FieldElement;
using fnil::FiniteField;
using fnil::frobenius;
using fnil::frobenius_iter;

namespace {

// Every (p, e) with p^e <= bound, constructed with the default modulus.
std::vector<FiniteField> small_fields(std::uint64_t bound) {
  std::vector<FiniteField> out;
  for (std::int64_t p = 2; static_cast<std::uint64_t>(p) <= bound; ++p) {
    if (!fnil::detail::is_prime_int64(p)) continue;
    std::uint64_t q = static_cast<std::uint64_t>(p);
    for (int e = 1; q <= bound; ++e, q *= static_cast<std::uint64_t>(p)) {
      out.push_back(FiniteField::make(p, e));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("prime field construction and basics", "[fields]") {
  const FiniteField F5 = FiniteField::make(5);
  REQUIRE(F5.characteristic() == 5);
  REQUIRE(F5.extension_degree() == 1);
  REQUIRE(F5.cardinality() == 5);
  REQUIRE(F5.from_int(7).as_int() == 2);
  REQUIRE(F5.from_int(-1).as_int() == 4);
  REQUIRE(F5.zero().is_zero());
  REQUIRE_FALSE(F5.one().is_zero());
  REQUIRE(F5.from_int(3) + F5.from_int(4) == F5.from_int(2));
  REQUIRE(F5.from_int(3) * F5.from_int(4) == F5.from_int(2));
  REQUIRE(-F5.from_int(2) == F5.from_int(3));
}

TEST_CASE("construction rejects bad parameters", "[fields]") {
  REQUIRE_THROWS_AS(FiniteField::make(4), std::invalid_argument);
  REQUIRE_THROWS_AS(FiniteField::make(1), std::invalid_argument);
  REQUIRE_THROWS_AS(FiniteField::make(-7), std::invalid_argument);
  REQUIRE_THROWS_AS(FiniteField::make(5, 0), std::invalid_argument);
  // t^2 + 1 = (t+1)^2 over F_2
  REQUIRE_THROWS_AS(FiniteField::make(2, 2, std::vector<std::int64_t>{1, 0, 1}), std::invalid_argument);
  // modulus degree must match e
  REQUIRE_THROWS_AS(FiniteField::make(2, 3, std::vector<std::int64_t>{1, 1, 1}), std::invalid_argument);
  // extension cardinality capped at 2^16
  REQUIRE_THROWS_AS(FiniteField::make(251, 3), std::invalid_argument);
  REQUIRE_NOTHROW(FiniteField::make(251, 2));
}

TEST_CASE("F_4 with the standard modulus", "[fields]") {
  const FiniteField F4 = FiniteField::make(2, 2, std::vector<std::int64_t>{1, 1, 1});
  REQUIRE(F4.cardinality() == 4);
  const FieldElement t = F4.element({0, 1});
  const FieldElement t_plus_1 = F4.element({1, 1});
  // t^2 = t + 1 modulo t^2 + t + 1
  REQUIRE(t * t == t_plus_1);
  REQUIRE(frobenius(t) == t_plus_1);
  REQUIRE(frobenius(t_plus_1) == t);
  // multiplicative order three
  REQUIRE(t.pow(3) == F4.one());
  REQUIRE(t.inverse() == t * t);

  // the default modulus table picks the same polynomial
  const FiniteField F4_default = FiniteField::make(2, 2);
  REQUIRE(F4_default == F4);
}

TEST_CASE("frobenius is the identity on prime fields", "[fields]") {
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    const FiniteField F = FiniteField::make(p);
    for (const auto& x : F.all_elements()) REQUIRE(frobenius(x) == x);
  }
}

TEST_CASE("frobenius is an automorphism and e-fold iteration is the identity", "[fields]") {
  for (const auto& F : small_fields(81)) {
    const auto elems = F.all_elements();
    for (const auto& x : elems) {
      for (const auto& y : elems) {
        REQUIRE(frobenius(x + y) == frobenius(x) + frobenius(y));
        REQUIRE(frobenius(x * y) == frobenius(x) * frobenius(y));
      }
      REQUIRE(frobenius_iter(x, F.extension_degree()) == x);
    }
  }
}

TEST_CASE("frobenius moves some element of a proper extension", "[fields]") {
  for (const auto& F : small_fields(81)) {
    if (F.extension_degree() == 1) continue;
    bool moved = false;
    for (const auto& x : F.all_elements())
      if (frobenius(x) != x) moved = true;
    REQUIRE(moved);
  }
}

TEST_CASE("field axioms hold exhaustively on small fields", "[fields]") {
  for (const auto& F : small_fields(49)) {
    const auto elems = F.all_elements();
    REQUIRE(elems.size() == F.cardinality());
    for (const auto& a : elems) {
      REQUIRE(a + F.zero() == a);
      REQUIRE(a * F.one() == a);
      REQUIRE((a - a).is_zero());
      if (!a.is_zero()) {
        REQUIRE(a * a.inverse() == F.one());
        REQUIRE(a.inverse() * a == F.one());
      }
      for (const auto& b : elems) {
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        for (const auto& c : elems) {
          if (&c != &elems.front() && F.cardinality() > 9) break;  // cubic loop only for tiny fields
          REQUIRE((a + b) + c == a + (b + c));
          REQUIRE((a * b) * c == a * (b * c));
          REQUIRE(a * (b + c) == a * b + a * c);
        }
      }
    }
  }
}

TEST_CASE("inverses are two-sided on every field up to 256 elements", "[fields]") {
  for (const auto& F : small_fields(256)) {
    for (const auto& a : F.all_elements()) {
      if (a.is_zero()) {
        REQUIRE_THROWS_AS(a.inverse(), std::domain_error);
        continue;
      }
      REQUIRE(a * a.inverse() == F.one());
      REQUIRE(a.inverse() * a == F.one());
    }
  }
}

TEST_CASE("canonical-code arithmetic matches element arithmetic", "[fields]") {
  for (const auto& F : small_fields(27)) {
    const auto elems = F.all_elements();
    for (const auto& a : elems) {
      REQUIRE(F.from_canonical(a.canonical()) == a);
      for (const auto& b : elems) {
        REQUIRE(F.can_add(a.canonical(), b.canonical()) == (a + b).canonical());
        REQUIRE(F.can_mul(a.canonical(), b.canonical()) == (a * b).canonical());
      }
      REQUIRE(F.can_neg(a.canonical()) == (-a).canonical());
      if (!a.is_zero()) REQUIRE(F.can_inv(a.canonical()) == a.inverse().canonical());
    }
  }
}

TEST_CASE("fields compare by content, not identity", "[fields]") {
  REQUIRE(FiniteField::make(7) == FiniteField::make(7));
  REQUIRE(FiniteField::make(7) != FiniteField::make(11));
  REQUIRE(FiniteField::make(3, 2) == FiniteField::make(3, 2));
  REQUIRE(FiniteField::make(3, 2) != FiniteField::make(3, 1));
  const FiniteField A = FiniteField::make(5);
  REQUIRE(A.from_int(2) == FiniteField::make(5).from_int(2));
}

TEST_CASE("element arithmetic rejects mixed fields", "[fields]") {
  const auto a = FiniteField::make(3).one();
  const auto b = FiniteField::make(5).one();
  REQUIRE_THROWS_AS(a + b, std::invalid_argument);
  REQUIRE_THROWS_AS(a * b, std::invalid_argument);
}
