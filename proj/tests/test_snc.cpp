#include <catch2/catch_amalgamated.hpp>

#include <fnil/snc.hpp>

using fnil::Component;
using fnil::DualGraph;
using fnil::ExplicitComponent;
using fnil::IntPoly;
using fnil::PlaneCurveComponent;
using fnil::RationalComponent;
using fnil::SncConfig;

namespace {

Component rational(std::string id) { return Component{std::move(id), RationalComponent{}}; }

Component fermat_curve(std::string id, int d) {
  PlaneCurveComponent pc;
  pc.degree = d;
  pc.poly.nvars = 3;
  pc.poly.terms.push_back({1, {d, 0, 0}});
  pc.poly.terms.push_back({1, {0, d, 0}});
  pc.poly.terms.push_back({1, {0, 0, d}});
  return Component{std::move(id), std::move(pc)};
}

Component explicit_matrix(std::string id, std::vector<std::vector<std::int64_t>> m) {
  return Component{std::move(id), ExplicitComponent{std::move(m)}};
}

}  // namespace

TEST_CASE("betti number of chains, cycles and forests", "[snc]") {
  DualGraph chain{{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}};
  REQUIRE(fnil::graph_component_count(chain) == 1);
  REQUIRE(fnil::betti1(chain) == 0);

  DualGraph two_cycle{{"a", "b"}, {{"a", "b"}, {"a", "b"}}};  // parallel edges
  REQUIRE(fnil::betti1(two_cycle) == 1);

  DualGraph triangle{{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}};
  REQUIRE(fnil::betti1(triangle) == 1);

  DualGraph forest{{"a", "b", "c", "d"}, {{"a", "b"}}};
  REQUIRE(fnil::graph_component_count(forest) == 3);
  REQUIRE(fnil::betti1(forest) == 0);

  DualGraph theta{{"a", "b"}, {{"a", "b"}, {"a", "b"}, {"a", "b"}}};
  REQUIRE(fnil::betti1(theta) == 2);
}

TEST_CASE("graph validation rejects loops, duplicates and stray endpoints", "[snc]") {
  REQUIRE_THROWS_AS(fnil::betti1(DualGraph{{"a"}, {{"a", "a"}}}), std::invalid_argument);
  REQUIRE_THROWS_AS(fnil::graph_component_count(DualGraph{{"a", "a"}, {}}), std::invalid_argument);
  REQUIRE_THROWS_AS(fnil::graph_component_count(DualGraph{{"a"}, {{"a", "zz"}}}), std::invalid_argument);
  REQUIRE_THROWS_AS(SncConfig({rational("a")}, {{"a", "a"}}, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(SncConfig({rational("a"), rational("a")}, {}, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(SncConfig({rational("a")}, {}, 6), std::invalid_argument);
  REQUIRE_THROWS_AS(SncConfig({}, {}, 5), std::invalid_argument);
}

TEST_CASE("adding a leaf to a tree changes nothing", "[snc]") {
  std::vector<Component> comps{rational("a"), rational("b"), rational("c")};
  std::vector<std::pair<std::string, std::string>> edges{{"a", "b"}, {"b", "c"}};
  const auto before = fnil::classify_surface(SncConfig(comps, edges, 7));
  comps.push_back(rational("leaf"));
  edges.push_back({"c", "leaf"});
  const auto after = fnil::classify_surface(SncConfig(comps, edges, 7));
  REQUIRE(before.h1.graph_part == after.h1.graph_part);
  REQUIRE(before.h1.ss_dim() == after.h1.ss_dim());
  REQUIRE(before.h1.dim() == after.h1.dim());
  REQUIRE(before.verdict == after.verdict);
}

TEST_CASE("a tree of rational curves is always nilpotent", "[snc]") {
  for (std::int64_t p : {2, 3, 5, 101}) {
    const SncConfig z({rational("a"), rational("b"), rational("c")}, {{"a", "b"}, {"b", "c"}}, p);
    const auto v = fnil::classify_surface(z);
    REQUIRE(v.verdict == fnil::Verdict::F_NILPOTENT);
    REQUIRE(v.h1.dim() == 0);
    REQUIRE_FALSE(v.graph_obstruction);
    REQUIRE_FALSE(v.component_obstruction);
    REQUIRE(v.connected);
  }
}

TEST_CASE("a cycle of rational curves obstructs nilpotence in every characteristic", "[snc]") {
  for (std::int64_t p : {2, 3, 5, 101}) {
    const SncConfig z({rational("a"), rational("b")}, {{"a", "b"}, {"a", "b"}}, p);
    const auto v = fnil::classify_surface(z);
    REQUIRE(v.verdict == fnil::Verdict::NOT_F_NILPOTENT);
    REQUIRE(v.h1.graph_part == 1);
    REQUIRE(v.h1.ss_dim() == 1);
    REQUIRE(v.h1.nil_dim() == 0);
    REQUIRE(v.graph_obstruction);
    REQUIRE_FALSE(v.component_obstruction);
  }
}

TEST_CASE("plane-curve component dimension follows the genus count", "[snc]") {
  // degree d cone piece has dimension (d-1)(d-2)/2
  struct Case {
    int d;
    int dim;
  };
  for (const Case c : {Case{1, 0}, Case{2, 0}, Case{3, 1}, Case{4, 3}, Case{5, 6}}) {
    const auto op = fnil::component_h1_frobenius(fermat_curve("e", c.d), 7);
    REQUIRE(op.dim() == static_cast<std::size_t>(c.dim));
  }
}

TEST_CASE("cubic component follows the p mod 3 split", "[snc]") {
  // ordinary primes keep a semisimple direction, supersingular ones do not
  const SncConfig ordinary({fermat_curve("e", 3)}, {}, 7);
  const auto vo = fnil::classify_surface(ordinary);
  REQUIRE(vo.verdict == fnil::Verdict::NOT_F_NILPOTENT);
  REQUIRE(vo.h1.component_ss == 1);
  REQUIRE(vo.component_obstruction);
  REQUIRE_FALSE(vo.graph_obstruction);
  REQUIRE(vo.h1.per_component.size() == 1);
  REQUIRE(vo.h1.per_component[0].kind == std::string("plane_curve"));
  REQUIRE(vo.h1.per_component[0].smooth == fnil::IsolatedCheck::Status::PASS);

  const SncConfig supersingular({fermat_curve("e", 3)}, {}, 5);
  const auto vs = fnil::classify_surface(supersingular);
  REQUIRE(vs.verdict == fnil::Verdict::F_NILPOTENT);
  REQUIRE(vs.h1.component_nil == 1);
  REQUIRE(vs.h1.ss_dim() == 0);
}

TEST_CASE("h1 adds graph and component contributions", "[snc]") {
  // cubic + quartic joined by one edge plus a parallel second edge:
  // betti1 = 1, cubic at 7 gives ss 1, quartic at 7 (3 mod 4) gives nil 3.
  const SncConfig z({fermat_curve("c3", 3), fermat_curve("c4", 4)},
                    {{"c3", "c4"}, {"c3", "c4"}}, 7);
  const auto v = fnil::classify_surface(z);
  REQUIRE(v.h1.graph_part == 1);
  REQUIRE(v.h1.component_ss == 1);
  REQUIRE(v.h1.component_nil == 3);
  REQUIRE(v.h1.dim() == 5);
  REQUIRE(v.h1.ss_dim() == 2);
  REQUIRE(v.verdict == fnil::Verdict::NOT_F_NILPOTENT);
  REQUIRE(v.graph_obstruction);
  REQUIRE(v.component_obstruction);
}

TEST_CASE("explicit components are taken mod p as stated", "[snc]") {
  // strictly upper triangular: nilpotent regardless of entries
  const SncConfig nilz({explicit_matrix("m", {{0, 11}, {0, 0}})}, {}, 5);
  const auto vn = fnil::classify_surface(nilz);
  REQUIRE(vn.verdict == fnil::Verdict::F_NILPOTENT);
  REQUIRE(vn.h1.component_nil == 2);

  const SncConfig ssz({explicit_matrix("m", {{1, 0}, {0, 6}})}, {}, 5);
  const auto vs = fnil::classify_surface(ssz);
  REQUIRE(vs.verdict == fnil::Verdict::NOT_F_NILPOTENT);
  REQUIRE(vs.h1.component_ss == 2);

  // 6 = 1 mod 5 but 6 = 0 mod 2: reduction matters
  const SncConfig mod2({explicit_matrix("m", {{6}})}, {}, 2);
  REQUIRE(fnil::classify_surface(mod2).verdict == fnil::Verdict::F_NILPOTENT);

  REQUIRE_THROWS_AS(fnil::component_h1_frobenius(explicit_matrix("m", {{1, 2}}), 5),
                    std::invalid_argument);
}

TEST_CASE("plane-curve component validation", "[snc]") {
  PlaneCurveComponent bad_degree;
  bad_degree.degree = 3;
  bad_degree.poly.nvars = 3;
  bad_degree.poly.terms.push_back({1, {2, 0, 0}});  // degree 2 term under declared 3
  REQUIRE_THROWS_AS(fnil::component_h1_frobenius(Component{"e", bad_degree}, 5),
                    std::invalid_argument);

  PlaneCurveComponent vanishes;
  vanishes.degree = 3;
  vanishes.poly.nvars = 3;
  vanishes.poly.terms.push_back({5, {3, 0, 0}});
  REQUIRE_THROWS_AS(fnil::component_h1_frobenius(Component{"e", vanishes}, 5),
                    std::invalid_argument);
}

TEST_CASE("smooth probe flags a cuspidal curve without blocking", "[snc]") {
  // x^3 - y^2 z is singular at (0:0:1); the cone check reports FAIL and the
  // classification still returns a verdict.
  PlaneCurveComponent cusp;
  cusp.degree = 3;
  cusp.poly.nvars = 3;
  cusp.poly.terms.push_back({1, {3, 0, 0}});
  cusp.poly.terms.push_back({-1, {0, 2, 1}});
  const Component comp{"cusp", cusp};
  REQUIRE(fnil::component_smooth_check(comp, 7) == fnil::IsolatedCheck::Status::FAIL);
  const SncConfig z({comp}, {}, 7);
  const auto v = fnil::classify_surface(z);
  REQUIRE(v.h1.per_component[0].smooth == fnil::IsolatedCheck::Status::FAIL);
  REQUIRE(v.h1.dim() == 1);
}

TEST_CASE("disconnected configurations classify with a flag", "[snc]") {
  const SncConfig z({rational("a"), rational("b")}, {}, 5);
  REQUIRE_FALSE(z.connected());
  const auto v = fnil::classify_surface(z);
  REQUIRE_FALSE(v.connected);
  REQUIRE(v.verdict == fnil::Verdict::F_NILPOTENT);
  // two separate cycles still add up
  const SncConfig zz({rational("a"), rational("b"), rational("c"), rational("d")},
                     {{"a", "b"}, {"a", "b"}, {"c", "d"}, {"c", "d"}}, 5);
  REQUIRE_FALSE(zz.connected());
  REQUIRE(fnil::classify_surface(zz).h1.graph_part == 2);
}
