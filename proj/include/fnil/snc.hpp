#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fnil/lochom.hpp"

namespace fnil {

/// A component of an exceptional curve configuration. Smooth rational curves
/// contribute nothing to H^1; smooth plane curves contribute through the
/// degree-zero Frobenius matrix of their cone; an explicit matrix covers
/// curves presented by precomputed data.
struct RationalComponent {};

struct PlaneCurveComponent {
  IntPoly poly;  // homogeneous in three variables
  int degree = 0;
};

struct ExplicitComponent {
  std::vector<std::vector<std::int64_t>> matrix;  // square, entries taken mod p
};

struct Component {
  std::string id;
  std::variant<RationalComponent, PlaneCurveComponent, ExplicitComponent> data;
};

inline const char* component_kind_name(const Component& c) {
  if (std::holds_alternative<RationalComponent>(c.data)) return "rational";
  if (std::holds_alternative<PlaneCurveComponent>(c.data)) return "plane_curve";
  return "explicit";
}

/// Dual graph of the configuration: one vertex per component, one edge per
/// intersection point. Parallel edges encode components meeting twice; loops
/// are rejected because a simple-normal-crossing component cannot meet itself.
struct DualGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};

namespace detail {
inline std::map<std::string, std::size_t> vertex_index(const DualGraph& g) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (!idx.emplace(g.vertices[i], i).second)
      throw std::invalid_argument("duplicate vertex id: " + g.vertices[i]);
  }
  return idx;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};
}  // namespace detail

inline int graph_component_count(const DualGraph& g) {
  auto idx = detail::vertex_index(g);
  detail::UnionFind uf(g.vertices.size());
  for (const auto& [a, b] : g.edges) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end())
      throw std::invalid_argument("edge endpoint is not a declared vertex");
    uf.unite(ia->second, ib->second);
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) roots.insert(uf.find(i));
  return static_cast<int>(roots.size());
}

/// First Betti number of the dual graph: |E| - |V| + #components. This is the
/// dimension of the cycle space, the graph-theoretic obstruction to nilpotence.
inline int betti1(const DualGraph& g) {
  for (const auto& [a, b] : g.edges)
    if (a == b) throw std::invalid_argument("loop edge in dual graph: " + a);
  return static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) + graph_component_count(g);
}

/// A configuration of exceptional curves over F_p together with its dual graph.
class SncConfig {
 public:
  SncConfig(std::vector<Component> components, std::vector<std::pair<std::string, std::string>> edges,
            std::int64_t p)
      : components_(std::move(components)), p_(p) {
    if (!detail::is_prime_int64(p_)) throw std::invalid_argument("configuration characteristic must be prime");
    if (components_.empty()) throw std::invalid_argument("configuration needs at least one component");
    graph_.edges = std::move(edges);
    for (const auto& c : components_) graph_.vertices.push_back(c.id);
    detail::vertex_index(graph_);  // rejects duplicate ids
    for (const auto& [a, b] : graph_.edges) {
      if (a == b) throw std::invalid_argument("loop edge in dual graph: " + a);
    }
    betti1(graph_);  // validates endpoints
    connected_ = graph_component_count(graph_) == 1;
  }

  const std::vector<Component>& components() const { return components_; }
  const DualGraph& graph() const { return graph_; }
  std::int64_t p() const { return p_; }
  /// Disconnected exceptional sets are unusual but allowed; callers may warn.
  bool connected() const { return connected_; }

 private:
  std::vector<Component> components_;
  DualGraph graph_;
  std::int64_t p_ = 0;
  bool connected_ = true;
};

/// Frobenius on H^1 of a single component over F_p. Rational curves give the
/// zero-dimensional operator; plane curves of degree d give the cone matrix on
/// a space of dimension (d-1)(d-2)/2.
inline SemilinearOperator component_h1_frobenius(const Component& comp, std::int64_t p) {
  const FiniteField F = FiniteField::make(p);
  if (std::holds_alternative<RationalComponent>(comp.data)) {
    return SemilinearOperator(FMatrix(F, 0, 0));
  }
  if (const auto* pc = std::get_if<PlaneCurveComponent>(&comp.data)) {
    if (pc->poly.nvars != 3)
      throw std::invalid_argument("plane-curve component must use three variables (" + comp.id + ")");
    if (pc->degree < 1) throw std::invalid_argument("plane-curve degree must be positive (" + comp.id + ")");
    for (const auto& t : pc->poly.terms) {
      std::int64_t deg = 0;
      for (auto e : t.exponents) {
        if (e < 0) throw std::invalid_argument("negative exponent in plane-curve component " + comp.id);
        deg += e;
      }
      if (deg != pc->degree)
        throw std::invalid_argument("plane-curve polynomial is not homogeneous of the declared degree (" +
                                    comp.id + ")");
    }
    SparsePoly f = reduce_mod_p(pc->poly, F);
    if (f.is_zero())
      throw std::invalid_argument("plane-curve polynomial vanishes mod p (" + comp.id + ")");
    HypersurfaceData H(WeightSystem({1, 1, 1}), std::move(f));
    return frobenius_on_degree_zero(H);
  }
  const auto& ex = std::get<ExplicitComponent>(comp.data);
  const int n = static_cast<int>(ex.matrix.size());
  FMatrix M(F, n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(ex.matrix[static_cast<std::size_t>(i)].size()) != n)
      throw std::invalid_argument("explicit component matrix is not square (" + comp.id + ")");
    for (int j = 0; j < n; ++j)
      M.at(i, j) = F.from_int(ex.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return SemilinearOperator(std::move(M));
}

/// Smoothness probe for a plane-curve component: the isolated-locus search on
/// its cone. Annotates only; it never blocks the computation.
inline IsolatedCheck::Status component_smooth_check(const Component& comp, std::int64_t p) {
  const auto* pc = std::get_if<PlaneCurveComponent>(&comp.data);
  if (!pc) return IsolatedCheck::Status::PASS;
  const FiniteField F = FiniteField::make(p);
  SparsePoly f = reduce_mod_p(pc->poly, F);
  if (f.is_zero()) return IsolatedCheck::Status::FAIL;
  try {
    HypersurfaceData H(WeightSystem({1, 1, 1}), std::move(f));
    return isolated_check(H).status;
  } catch (const std::exception&) {
    return IsolatedCheck::Status::INCONCLUSIVE;
  }
}

struct ComponentH1 {
  std::string id;
  std::string kind;
  int dim = 0;
  int ss_dim = 0;
  int nil_dim = 0;
  IsolatedCheck::Status smooth = IsolatedCheck::Status::PASS;
};

/// Frobenius structure of H^1 of the whole configuration. The graph part has
/// dimension betti1 and carries a bijective (identity on cochain
/// representatives) Frobenius, so it lands entirely in the semisimple part;
/// the component part is the block-diagonal sum over components.
struct SncH1 {
  int graph_part = 0;      // betti1 of the dual graph, all semisimple
  int component_ss = 0;
  int component_nil = 0;
  std::vector<ComponentH1> per_component;

  int ss_dim() const { return graph_part + component_ss; }
  int nil_dim() const { return component_nil; }
  int dim() const { return graph_part + component_ss + component_nil; }
};

inline SncH1 h1_frobenius(const SncConfig& z) {
  SncH1 out;
  out.graph_part = betti1(z.graph());
  for (const auto& comp : z.components()) {
    const SemilinearOperator op = component_h1_frobenius(comp, z.p());
    const FittingSplit split = fitting_decomposition(op);
    ComponentH1 row;
    row.id = comp.id;
    row.kind = component_kind_name(comp);
    row.dim = op.dim();
    row.ss_dim = split.ss_dim;
    row.nil_dim = split.nil_dim;
    row.smooth = component_smooth_check(comp, z.p());
    out.component_ss += split.ss_dim;
    out.component_nil += split.nil_dim;
    out.per_component.push_back(std::move(row));
  }
  return out;
}

struct SurfaceVerdict {
  Verdict verdict = Verdict::F_NILPOTENT;
  SncH1 h1;
  bool graph_obstruction = false;      // cycles in the dual graph
  bool component_obstruction = false;  // a component with semisimple part
  bool connected = true;
};

/// The singularity resolved by the configuration is F-nilpotent exactly when
/// Frobenius is nilpotent on H^1, i.e. the semisimple part vanishes. A tree of
/// rational curves has no H^1 at all and is always F-nilpotent.
inline SurfaceVerdict classify_surface(const SncConfig& z) {
  SurfaceVerdict v;
  v.h1 = h1_frobenius(z);
  v.graph_obstruction = v.h1.graph_part > 0;
  v.component_obstruction = v.h1.component_ss > 0;
  v.connected = z.connected();
  v.verdict = (v.h1.ss_dim() == 0) ? Verdict::F_NILPOTENT : Verdict::NOT_F_NILPOTENT;
  return v;
}

}  // namespace fnil
