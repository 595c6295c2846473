#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fnil/snc.hpp"
#include "fnil/sweep.hpp"

namespace fnil {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Hypersurface model schema:
//   {"variables": ["x", ...], "weights": [w0, ...],
//    "terms": [{"coeff": c, "exponents": [e0, ...]}, ...]}
// ---------------------------------------------------------------------------

inline IntegerModel parse_model(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("model must be a JSON object");
  if (!j.contains("variables") || !j.contains("weights") || !j.contains("terms"))
    throw std::invalid_argument("model needs 'variables', 'weights' and 'terms'");
  std::vector<std::string> variables;
  for (const auto& v : j.at("variables")) {
    if (!v.is_string()) throw std::invalid_argument("variable names must be strings");
    variables.push_back(v.get<std::string>());
  }
  std::vector<std::int64_t> weights;
  for (const auto& w : j.at("weights")) {
    if (!w.is_number_integer()) throw std::invalid_argument("weights must be integers");
    weights.push_back(w.get<std::int64_t>());
  }
  IntPoly poly;
  poly.nvars = static_cast<int>(variables.size());
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("exponents"))
      throw std::invalid_argument("each term needs 'coeff' and 'exponents'");
    IntTerm term;
    if (!t.at("coeff").is_number_integer()) throw std::invalid_argument("term coefficients must be integers");
    term.coeff = t.at("coeff").get<std::int64_t>();
    for (const auto& e : t.at("exponents")) {
      if (!e.is_number_integer()) throw std::invalid_argument("exponents must be integers");
      const std::int64_t v = e.get<std::int64_t>();
      if (v < 0 || v > INT32_MAX) throw std::invalid_argument("exponents must fit in [0, 2^31)");
      term.exponents.push_back(static_cast<std::int32_t>(v));
    }
    poly.terms.push_back(std::move(term));
  }
  return make_model(std::move(variables), WeightSystem(std::move(weights)), std::move(poly));
}

inline IntegerModel parse_model_text(const std::string& text) { return parse_model(json::parse(text)); }

inline json model_to_json(const IntegerModel& m) {
  json terms = json::array();
  for (const auto& t : m.poly.terms) {
    json exps = json::array();
    for (auto e : t.exponents) exps.push_back(e);
    terms.push_back(json{{"coeff", t.coeff}, {"exponents", exps}});
  }
  json weights = json::array();
  for (auto w : m.weights.w) weights.push_back(w);
  return json{{"variables", m.variables}, {"weights", weights}, {"terms", terms}};
}

// ---------------------------------------------------------------------------
// Curve-configuration schema:
//   {"prime": p,
//    "components": [{"id": "...", "kind": "rational"},
//                   {"id": "...", "kind": "plane_curve",
//                    "data": {"degree": d, "terms": [...]}},
//                   {"id": "...", "kind": "explicit",
//                    "data": {"matrix": [[...], ...]}}],
//    "edges": [["a", "b"], ...]}
// ---------------------------------------------------------------------------

inline SncConfig parse_snc(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("configuration must be a JSON object");
  if (!j.contains("prime") || !j.contains("components") || !j.contains("edges"))
    throw std::invalid_argument("configuration needs 'prime', 'components' and 'edges'");
  if (!j.at("prime").is_number_integer()) throw std::invalid_argument("'prime' must be an integer");
  const std::int64_t p = j.at("prime").get<std::int64_t>();

  std::vector<Component> components;
  for (const auto& c : j.at("components")) {
    if (!c.is_object() || !c.contains("id") || !c.contains("kind"))
      throw std::invalid_argument("each component needs 'id' and 'kind'");
    Component comp;
    comp.id = c.at("id").get<std::string>();
    const std::string kind = c.at("kind").get<std::string>();
    if (kind == "rational") {
      comp.data = RationalComponent{};
    } else if (kind == "plane_curve") {
      if (!c.contains("data")) throw std::invalid_argument("plane_curve component needs 'data'");
      const json& d = c.at("data");
      PlaneCurveComponent pc;
      if (!d.contains("degree") || !d.at("degree").is_number_integer())
        throw std::invalid_argument("plane_curve data needs an integer 'degree'");
      pc.degree = d.at("degree").get<int>();
      pc.poly.nvars = 3;
      if (!d.contains("terms")) throw std::invalid_argument("plane_curve data needs 'terms'");
      for (const auto& t : d.at("terms")) {
        IntTerm term;
        term.coeff = t.at("coeff").get<std::int64_t>();
        for (const auto& e : t.at("exponents")) term.exponents.push_back(e.get<std::int32_t>());
        if (term.exponents.size() != 3)
          throw std::invalid_argument("plane_curve terms must have three exponents");
        pc.poly.terms.push_back(std::move(term));
      }
      comp.data = std::move(pc);
    } else if (kind == "explicit") {
      if (!c.contains("data") || !c.at("data").contains("matrix"))
        throw std::invalid_argument("explicit component needs 'data.matrix'");
      ExplicitComponent ex;
      for (const auto& row : c.at("data").at("matrix")) {
        std::vector<std::int64_t> r;
        for (const auto& x : row) r.push_back(x.get<std::int64_t>());
        ex.matrix.push_back(std::move(r));
      }
      comp.data = std::move(ex);
    } else {
      throw std::invalid_argument("unknown component kind: " + kind);
    }
    components.push_back(std::move(comp));
  }

  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("each edge must join exactly two components");
    edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  return SncConfig(std::move(components), std::move(edges), p);
}

inline SncConfig parse_snc_text(const std::string& text) { return parse_snc(json::parse(text)); }

// ---------------------------------------------------------------------------
// Verdict records
// ---------------------------------------------------------------------------

inline json isolated_to_json(const IsolatedCheck& c) {
  json out{{"status", isolated_status_name(c.status)}};
  if (c.witness) {
    json w = json::array();
    for (const auto& x : *c.witness) w.push_back(x.str());
    out["witness"] = w;
    out["witness_extension"] = c.witness_extension;
  }
  out["checked_up_to"] = c.checked_up_to;
  return out;
}

inline json graded_verdict_to_json(const GradedVerdict& g, std::int64_t prime,
                                   const std::optional<IsolatedCheck>& isolated) {
  json out{
      {"verdict", verdict_name(g.verdict)}, {"basis_dim", g.basis_dim}, {"ss_dim", g.ss_dim},
      {"nil_dim", g.nil_dim},               {"a_invariant", g.a_inv},   {"prime", prime},
      {"assumptions", g.assumptions},
  };
  out["isolated"] = isolated ? isolated_to_json(*isolated) : json{{"status", "NONE"}};
  if (g.fixed_witness) {
    json w = json::array();
    for (const auto& x : *g.fixed_witness) w.push_back(x.str());
    out["fixed_witness"] = w;
  }
  return out;
}

inline json surface_verdict_to_json(const SurfaceVerdict& v, std::int64_t prime) {
  json per = json::array();
  for (const auto& c : v.h1.per_component) {
    per.push_back(json{{"id", c.id},
                       {"kind", c.kind},
                       {"dim", c.dim},
                       {"ss_dim", c.ss_dim},
                       {"nil_dim", c.nil_dim},
                       {"smooth_check", isolated_status_name(c.smooth)}});
  }
  json out{
      {"verdict", verdict_name(v.verdict)},
      {"prime", prime},
      {"betti1", v.h1.graph_part},
      {"ss_dim", v.h1.ss_dim()},
      {"nil_dim", v.h1.nil_dim()},
      {"dim", v.h1.dim()},
      {"graph_obstruction", v.graph_obstruction},
      {"component_obstruction", v.component_obstruction},
      {"per_component", per},
  };
  json warnings = json::array();
  if (!v.connected) warnings.push_back("dual graph is disconnected");
  out["warnings"] = warnings;
  return out;
}

// ---------------------------------------------------------------------------
// Sweep report export / import
// ---------------------------------------------------------------------------

enum class ExportFormat { CSV, JSON };

struct ExportOptions {
  /// Exports are byte-deterministic by default: the runtime column is written
  /// as zero. Opting into timings trades determinism for diagnostics.
  bool include_timings = false;
};

namespace detail {
inline std::string csv_sanitize(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}
}  // namespace detail

inline json report_to_json(const SweepReport& r, const ExportOptions& opts = {}) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    json row{{"prime", v.p}};
    switch (v.status) {
      case PrimeVerdict::Status::NILPOTENT: row["status"] = "NILPOTENT"; break;
      case PrimeVerdict::Status::NON_NILPOTENT: row["status"] = "NON_NILPOTENT"; break;
      default:
        row["status"] = "SKIPPED";
        row["skip_reason"] = v.skip_reason;
        break;
    }
    if (v.status != PrimeVerdict::Status::SKIPPED) {
      row["basis_dim"] = v.basis_dim;
      row["ss_dim"] = v.ss_dim;
      row["nil_dim"] = v.nil_dim;
      row["isolated"] = v.isolated;
      row["runtime_ms"] = opts.include_timings ? v.runtime_ms : 0;
    }
    verdicts.push_back(std::move(row));
  }
  json skip_listed = json::array();
  for (auto p : r.policy.skip) skip_listed.push_back(p);
  json out{
      {"schema", "fnil.sweep.v1"},
      {"model", model_to_json(r.model)},
      {"range", json{{"from", r.lo}, {"to", r.hi}}},
      {"skip_policy", json{{"bound", r.skip_bound},
                           {"listed", skip_listed},
                           {"skip_coefficient_divisors", r.policy.skip_coefficient_divisors}}},
      {"isolated_depth", r.isolated_depth},
      {"verdicts", verdicts},
  };
  if (r.aggregate) {
    out["aggregate"] = json{{"kind", aggregate_kind_name(r.aggregate->kind)},
                            {"nilpotent_fraction", r.aggregate->nilpotent_fraction},
                            {"threshold", r.aggregate->threshold},
                            {"caveat", r.aggregate->caveat}};
  } else {
    out["aggregate"] = nullptr;
  }
  return out;
}

inline std::string export_report(const SweepReport& r, ExportFormat format, const ExportOptions& opts = {}) {
  if (format == ExportFormat::JSON) return report_to_json(r, opts).dump(2) + "\n";
  std::string out = "prime,status,basis_dim,ss_dim,nil_dim,isolated,runtime_ms\n";
  for (const auto& v : r.verdicts) {
    out += std::to_string(v.p);
    out += ',';
    if (v.status == PrimeVerdict::Status::SKIPPED) {
      out += "SKIPPED(" + detail::csv_sanitize(v.skip_reason) + "),,,,,";
    } else {
      out += verdict_status_string(v);
      out += ',' + std::to_string(v.basis_dim);
      out += ',' + std::to_string(v.ss_dim);
      out += ',' + std::to_string(v.nil_dim);
      out += ',' + v.isolated;
      out += ',' + std::to_string(opts.include_timings ? v.runtime_ms : 0);
    }
    out += '\n';
  }
  return out;
}

inline SweepReport import_report(const json& j) {
  if (!j.is_object() || j.value("schema", "") != "fnil.sweep.v1")
    throw std::invalid_argument("not a sweep report (missing schema tag)");
  SweepReport r;
  r.model = parse_model(j.at("model"));
  r.lo = j.at("range").at("from").get<std::int64_t>();
  r.hi = j.at("range").at("to").get<std::int64_t>();
  const json& sp = j.at("skip_policy");
  r.skip_bound = sp.at("bound").get<std::int64_t>();
  r.policy.small_prime_bound = r.skip_bound;
  for (const auto& p : sp.at("listed")) r.policy.skip.insert(p.get<std::int64_t>());
  r.policy.skip_coefficient_divisors = sp.at("skip_coefficient_divisors").get<bool>();
  r.isolated_depth = j.at("isolated_depth").get<int>();
  for (const auto& row : j.at("verdicts")) {
    PrimeVerdict v;
    v.p = row.at("prime").get<std::int64_t>();
    const std::string status = row.at("status").get<std::string>();
    if (status == "NILPOTENT") {
      v.status = PrimeVerdict::Status::NILPOTENT;
    } else if (status == "NON_NILPOTENT") {
      v.status = PrimeVerdict::Status::NON_NILPOTENT;
    } else if (status == "SKIPPED") {
      v.status = PrimeVerdict::Status::SKIPPED;
      v.skip_reason = row.at("skip_reason").get<std::string>();
    } else {
      throw std::invalid_argument("unknown verdict status: " + status);
    }
    if (v.status != PrimeVerdict::Status::SKIPPED) {
      v.basis_dim = row.at("basis_dim").get<int>();
      v.ss_dim = row.at("ss_dim").get<int>();
      v.nil_dim = row.at("nil_dim").get<int>();
      v.isolated = row.at("isolated").get<std::string>();
      v.runtime_ms = row.at("runtime_ms").get<std::int64_t>();
    }
    r.verdicts.push_back(std::move(v));
  }
  if (!j.at("aggregate").is_null()) {
    const json& a = j.at("aggregate");
    Aggregate agg;
    const std::string kind = a.at("kind").get<std::string>();
    if (kind == "EMPIRICALLY_F_NILPOTENT_TYPE") {
      agg.kind = Aggregate::Kind::F_NILPOTENT_TYPE;
    } else if (kind == "EMPIRICALLY_DENSE_TYPE") {
      agg.kind = Aggregate::Kind::DENSE_TYPE;
    } else if (kind == "EMPIRICALLY_NOT") {
      agg.kind = Aggregate::Kind::NOT_TYPE;
    } else {
      throw std::invalid_argument("unknown aggregate kind: " + kind);
    }
    agg.nilpotent_fraction = a.at("nilpotent_fraction").get<double>();
    agg.threshold = a.at("threshold").get<std::int64_t>();
    agg.caveat = a.at("caveat").get<std::string>();
    r.aggregate = agg;
  }
  return r;
}

inline SweepReport import_report_text(const std::string& text) { return import_report(json::parse(text)); }

}  // namespace fnil
