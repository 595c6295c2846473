#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include <fnil/fields.hpp>
#include <fnil/linalg.hpp>
#include <fnil/semilinear.hpp>

using fnil::FieldElement;
using fnil::FiniteField;
using fnil::FMatrix;
using fnil::FVector;
using fnil::SemilinearOperator;

namespace {

// Deterministic matrix filled from a simple LCG so runs are reproducible.
FMatrix pseudo_random_matrix(const FiniteField& F, std::size_t n, std::uint64_t seed) {
  std::uint64_t state = seed;
  auto next = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  };
  FMatrix m(F, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = F.from_canonical(next() % F.cardinality());
  return m;
}

}  // namespace

TEST_CASE("rref and rank on a hand-solved system", "[linalg]") {
  const FiniteField F5 = FiniteField::make(5);
  // rows (1 2 3; 2 4 2) over F_5: row2 - 2 row1 = (0 0 1), so rank 2 and the
  // nullspace is spanned by (3, 1, 0) from x0 + 2 x1 = 0, x2 = 0.
  FMatrix m(F5, 2, 3);
  m.at(0, 0) = F5.from_int(1);
  m.at(0, 1) = F5.from_int(2);
  m.at(0, 2) = F5.from_int(3);
  m.at(1, 0) = F5.from_int(2);
  m.at(1, 1) = F5.from_int(4);
  m.at(1, 2) = F5.from_int(2);
  REQUIRE(fnil::rank(m) == 2);
  const auto null_basis = fnil::nullspace_basis(m);
  REQUIRE(null_basis.size() == 1);
  // every basis vector actually lies in the kernel
  for (const auto& v : null_basis) {
    for (const auto& entry : m.apply(v)) REQUIRE(entry.is_zero());
  }
  REQUIRE(null_basis[0][0] == F5.from_int(-2));
  REQUIRE(null_basis[0][1] == F5.one());
  REQUIRE(null_basis[0][2].is_zero());
}

TEST_CASE("nullspace dimension matches rank deficiency on random matrices", "[linalg]") {
  for (std::int64_t p : {2, 3, 7}) {
    const FiniteField F = FiniteField::make(p);
    for (std::size_t n : {1u, 2u, 4u, 6u}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const FMatrix m = pseudo_random_matrix(F, n, seed * 97 + p);
        const auto null_basis = fnil::nullspace_basis(m);
        REQUIRE(fnil::rank(m) + null_basis.size() == n);
        for (const auto& v : null_basis)
          for (const auto& entry : m.apply(v)) REQUIRE(entry.is_zero());
      }
    }
  }
}

TEST_CASE("column space basis columns are original columns and span the image", "[linalg]") {
  const FiniteField F3 = FiniteField::make(3);
  const FMatrix m = pseudo_random_matrix(F3, 5, 42);
  const auto cols = fnil::column_space_basis(m);
  REQUIRE(cols.size() == fnil::rank(m));
  REQUIRE(fnil::span_rank(F3, cols, 5) == cols.size());
}

TEST_CASE("semilinear apply twists coordinates before the matrix", "[semilinear]") {
  // Frozen example over F_4 = F_2(t), t^2 + t + 1 = 0:
  // A = [t] as a p-semilinear operator sends t to t * t^2 = t^3 = 1.
  const FiniteField F4 = FiniteField::make(2, 2, std::vector<std::int64_t>{1, 1, 1});
  const FieldElement t = F4.element({0, 1});
  FMatrix a(F4, 1, 1);
  a.at(0, 0) = t;
  const SemilinearOperator op(a);
  const FVector image = op.apply({t});
  REQUIRE(image.size() == 1);
  REQUIRE(image[0] == F4.one());

  // power_matrix(2) = A * A^(p) = t * t^2 = 1, so the operator is bijective.
  const FMatrix p2 = fnil::power_matrix(op, 2);
  REQUIRE(p2.at(0, 0) == F4.one());
  const auto split = fnil::fitting_decomposition(op);
  REQUIRE(split.ss_dim == 1);
  REQUIRE(split.nil_dim == 0);
  REQUIRE_FALSE(fnil::is_nilpotent(op));

  // fixed points of v -> t v^2: v = 0 and v = t^2 (t * t^4 = t^5 = t^2).
  const auto fixed = fnil::fixed_points(op);
  REQUIRE(fixed.size() == 1);  // F_2-dimension one, two fixed vectors total
  const FieldElement tsq = t * t;
  bool hits_tsq = fixed[0][0] == tsq;
  REQUIRE(hits_tsq);

  const auto brute = fnil::brute_force_oracle(op);
  REQUIRE(brute.fixed.size() == 2);
  REQUIRE_FALSE(brute.nilpotent);
}

TEST_CASE("semilinear composition rule for iterated powers", "[semilinear]") {
  // Applying op m times equals multiplying by power_matrix(m) after m twists.
  const FiniteField F9 = FiniteField::make(3, 2);
  const FMatrix a = pseudo_random_matrix(F9, 3, 7);
  const SemilinearOperator op(a);
  for (std::size_t m = 1; m <= 4; ++m) {
    const FMatrix pm = fnil::power_matrix(op, m);
    for (std::uint64_t code = 0; code < 30; ++code) {
      FVector v{F9.from_canonical(code % 9), F9.from_canonical((code / 3) % 9),
               F9.from_canonical((code * 5 + 2) % 9)};
      FVector iterated = v;
      for (std::size_t k = 0; k < m; ++k) iterated = op.apply(iterated);
      FVector twisted = v;
      for (auto& entry : twisted) entry = fnil::frobenius_iter(entry, m);
      const FVector direct = pm.apply(twisted);
      REQUIRE(iterated == direct);
    }
  }
}

TEST_CASE("power matrix rank stabilizes at the dimension", "[semilinear]") {
  for (std::int64_t p : {2, 3, 5}) {
    const FiniteField F = FiniteField::make(p);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const std::size_t n = 4;
      const SemilinearOperator op(pseudo_random_matrix(F, n, seed * 31 + p));
      const std::size_t stable = fnil::rank(fnil::power_matrix(op, n));
      for (std::size_t m = n; m <= n + 3; ++m)
        REQUIRE(fnil::rank(fnil::power_matrix(op, m)) == stable);
    }
  }
}

TEST_CASE("fitting dimensions fill the space and ss part is stable", "[semilinear]") {
  for (std::int64_t p : {2, 3}) {
    for (int e = 1; e <= 2; ++e) {
      const FiniteField F = FiniteField::make(p, e);
      for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const std::size_t n = 3;
        const SemilinearOperator op(pseudo_random_matrix(F, n, seed * 13 + p + e));
        const auto split = fnil::fitting_decomposition(op);
        REQUIRE(split.ss_dim + split.nil_dim == n);
        REQUIRE(split.ss_image_basis.size() == split.ss_dim);
        // op maps the semisimple image into itself without dropping rank
        std::vector<FVector> images;
        for (const auto& v : split.ss_image_basis) images.push_back(op.apply(v));
        std::vector<FVector> both = split.ss_image_basis;
        both.insert(both.end(), images.begin(), images.end());
        REQUIRE(fnil::span_rank(F, both, n) == split.ss_dim);
        REQUIRE(fnil::span_rank(F, images, n) == split.ss_dim);
      }
    }
  }
}

TEST_CASE("nilpotence agrees with brute force on all tiny cases", "[semilinear]") {
  // every 2x2 matrix over F_2 and a sample of 2x2 matrices over F_3
  const FiniteField F2 = FiniteField::make(2);
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    FMatrix m(F2, 2, 2);
    m.at(0, 0) = F2.from_canonical(mask & 1);
    m.at(0, 1) = F2.from_canonical((mask >> 1) & 1);
    m.at(1, 0) = F2.from_canonical((mask >> 2) & 1);
    m.at(1, 1) = F2.from_canonical((mask >> 3) & 1);
    const SemilinearOperator op(m);
    const auto brute = fnil::brute_force_oracle(op);
    REQUIRE(fnil::is_nilpotent(op) == brute.nilpotent);
    const auto fixed = fnil::fixed_points(op);
    // brute fixed count = p^(F_p-dimension of the fixed space)
    std::size_t expect = 1;
    for (std::size_t i = 0; i < fixed.size(); ++i) expect *= 2;
    REQUIRE(brute.fixed.size() == expect);
  }
  const FiniteField F3 = FiniteField::make(3);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SemilinearOperator op(pseudo_random_matrix(F3, 2, seed));
    const auto brute = fnil::brute_force_oracle(op);
    REQUIRE(fnil::is_nilpotent(op) == brute.nilpotent);
  }
}

TEST_CASE("fixed points match brute force over an extension field", "[semilinear]") {
  const FiniteField F4 = FiniteField::make(2, 2);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const SemilinearOperator op(pseudo_random_matrix(F4, 2, seed * 5));
    const auto fixed = fnil::fixed_points(op);
    const auto brute = fnil::brute_force_oracle(op);
    std::size_t expect = 1;
    for (std::size_t i = 0; i < fixed.size(); ++i) expect *= 2;
    REQUIRE(brute.fixed.size() == expect);
    // each reported basis vector really is fixed
    for (const auto& v : fixed) REQUIRE(op.apply(v) == v);
    // and the fixed space sits inside the semisimple part
    const auto split = fnil::fitting_decomposition(op);
    REQUIRE(fixed.size() <= split.ss_dim * F4.extension_degree());
  }
}

TEST_CASE("strictly upper triangular operators are nilpotent", "[semilinear]") {
  const FiniteField F7 = FiniteField::make(7);
  FMatrix m(F7, 3, 3);
  m.at(0, 1) = F7.from_int(4);
  m.at(0, 2) = F7.from_int(6);
  m.at(1, 2) = F7.from_int(2);
  const SemilinearOperator op(m);
  REQUIRE(fnil::is_nilpotent(op));
  const auto split = fnil::fitting_decomposition(op);
  REQUIRE(split.ss_dim == 0);
  REQUIRE(split.nil_dim == 3);
  REQUIRE(fnil::fixed_points(op).empty());
}

TEST_CASE("zero-dimensional operators count as nilpotent", "[semilinear]") {
  const FiniteField F5 = FiniteField::make(5);
  const SemilinearOperator op(FMatrix(F5, 0, 0));
  REQUIRE(fnil::is_nilpotent(op));
  const auto split = fnil::fitting_decomposition(op);
  REQUIRE(split.ss_dim == 0);
  REQUIRE(split.nil_dim == 0);
}

TEST_CASE("identity operator is semisimple with full prime-field fixed space", "[semilinear]") {
  for (std::int64_t p : {2, 5}) {
    const FiniteField F = FiniteField::make(p);
    const SemilinearOperator op(FMatrix::identity(F, 3));
    REQUIRE_FALSE(fnil::is_nilpotent(op));
    const auto split = fnil::fitting_decomposition(op);
    REQUIRE(split.ss_dim == 3);
    // fixed points of v -> v^[p] over F_p: everything
    REQUIRE(fnil::fixed_points(op).size() == 3);
  }
}
