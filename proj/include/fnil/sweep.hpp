#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fnil/lochom.hpp"

namespace fnil {

/// A hypersurface model over the integers: the prime-independent input that a
/// sweep reduces modulo each prime in a range. Terms with equal exponents are
/// merged and zero terms dropped at construction.
struct IntegerModel {
  std::vector<std::string> variables;
  WeightSystem weights;
  IntPoly poly;
  std::int64_t weighted_deg = 0;
};

inline IntegerModel make_model(std::vector<std::string> variables, WeightSystem weights, IntPoly poly) {
  IntegerModel m;
  if (poly.nvars < 2) throw std::invalid_argument("model needs at least two variables");
  if (weights.size() != static_cast<std::size_t>(poly.nvars))
    throw std::invalid_argument("weight count does not match the variable count");
  if (variables.size() != static_cast<std::size_t>(poly.nvars))
    throw std::invalid_argument("variable-name count does not match the variable count");

  std::map<Monomial, std::int64_t> merged;
  for (const auto& t : poly.terms) {
    if (static_cast<int>(t.exponents.size()) != poly.nvars)
      throw std::invalid_argument("exponent vector length mismatch in model");
    for (auto e : t.exponents)
      if (e < 0) throw std::invalid_argument("model exponents must be non-negative");
    if (t.coeff == 0) continue;
    merged[t.exponents] += t.coeff;
  }
  IntPoly clean;
  clean.nvars = poly.nvars;
  std::optional<std::int64_t> d;
  for (const auto& [mon, c] : merged) {
    if (c == 0) continue;
    const std::int64_t dm = weighted_degree(mon, weights);
    if (!d) {
      d = dm;
    } else if (*d != dm) {
      throw std::invalid_argument("model polynomial is not quasi-homogeneous for the given weights");
    }
    clean.terms.push_back({c, mon});
  }
  if (!d) throw std::invalid_argument("model polynomial must be nonzero");
  if (*d < 1) throw std::invalid_argument("model polynomial must be non-constant");

  m.variables = std::move(variables);
  m.weights = std::move(weights);
  m.poly = std::move(clean);
  m.weighted_deg = *d;
  return m;
}

/// Primes in [lo, hi] by sieve. Bounds are validated: 2 <= lo <= hi <= 10^6.
inline std::vector<std::int64_t> enumerate_primes(std::int64_t lo, std::int64_t hi) {
  if (lo < 2) throw std::invalid_argument("prime range must start at 2 or above");
  if (hi < lo) throw std::invalid_argument("prime range is reversed");
  if (hi > 1000000) throw std::invalid_argument("prime range too large: upper bound capped at 10^6");
  std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
  std::vector<std::int64_t> out;
  for (std::int64_t n = 2; n <= hi; ++n) {
    if (composite[static_cast<std::size_t>(n)]) continue;
    if (n >= lo) out.push_back(n);
    for (std::int64_t k = n * n; k <= hi; k += n) composite[static_cast<std::size_t>(k)] = true;
  }
  return out;
}

/// Which primes a sweep classifies and which it records as skipped. The
/// default small-prime bound is max(largest weight, weighted degree); an
/// explicit bound (including 0, meaning none) overrides it.
struct SkipPolicy {
  std::optional<std::int64_t> small_prime_bound{};
  std::set<std::int64_t> skip{};
  bool skip_coefficient_divisors = true;

  std::int64_t effective_bound(const IntegerModel& m) const {
    if (small_prime_bound) return *small_prime_bound;
    std::int64_t b = m.weighted_deg;
    for (auto w : m.weights.w) b = std::max(b, w);
    return b;
  }
};

struct SweepOptions {
  SkipPolicy policy{};
  int isolated_depth = 1;  // 0 disables the per-prime isolated-locus probe
  int threads = 1;
  std::optional<std::int64_t> aggregate_threshold{};
};

struct PrimeVerdict {
  enum class Status { NILPOTENT, NON_NILPOTENT, SKIPPED };

  std::int64_t p = 0;
  Status status = Status::SKIPPED;
  std::string skip_reason;  // set only when skipped
  int basis_dim = 0;
  int ss_dim = 0;
  int nil_dim = 0;
  std::string isolated = "NONE";  // PASS / FAIL / INCONCLUSIVE / NONE
  std::int64_t runtime_ms = 0;    // measured; deterministic exports write zero
};

inline std::string verdict_status_string(const PrimeVerdict& v) {
  switch (v.status) {
    case PrimeVerdict::Status::NILPOTENT: return "NILPOTENT";
    case PrimeVerdict::Status::NON_NILPOTENT: return "NON_NILPOTENT";
    default: return "SKIPPED(" + v.skip_reason + ")";
  }
}

inline const char* aggregate_caveat() {
  return "finite-evidence verdict: computed from the sampled primes only; a genuine type "
         "classification concerns almost all primes and cannot be certified by a finite sweep";
}

struct Aggregate {
  enum class Kind { F_NILPOTENT_TYPE, DENSE_TYPE, NOT_TYPE };
  Kind kind = Kind::NOT_TYPE;
  double nilpotent_fraction = 0.0;
  std::int64_t threshold = 0;
  std::string caveat = aggregate_caveat();
};

inline const char* aggregate_kind_name(Aggregate::Kind k) {
  switch (k) {
    case Aggregate::Kind::F_NILPOTENT_TYPE: return "EMPIRICALLY_F_NILPOTENT_TYPE";
    case Aggregate::Kind::DENSE_TYPE: return "EMPIRICALLY_DENSE_TYPE";
    default: return "EMPIRICALLY_NOT";
  }
}

struct SweepReport {
  IntegerModel model;
  std::int64_t lo = 0, hi = 0;
  SkipPolicy policy;
  std::int64_t skip_bound = 0;  // the bound the sweep actually applied
  int isolated_depth = 1;
  std::vector<PrimeVerdict> verdicts;  // ascending primes
  std::optional<Aggregate> aggregate;
};

/// Summary over the non-skipped verdicts. Small primes (at or below the
/// threshold) may disagree without spoiling a nilpotent-type verdict, but a
/// threshold that excludes all evidence falls back to the plain fraction.
inline Aggregate aggregate_verdict(const SweepReport& r, std::optional<std::int64_t> threshold = std::nullopt) {
  std::int64_t total = 0, nil = 0, above = 0, above_nil = 0;
  const std::int64_t T = threshold.value_or(r.skip_bound);
  for (const auto& v : r.verdicts) {
    if (v.status == PrimeVerdict::Status::SKIPPED) continue;
    ++total;
    const bool is_nil = v.status == PrimeVerdict::Status::NILPOTENT;
    if (is_nil) ++nil;
    if (v.p > T) {
      ++above;
      if (is_nil) ++above_nil;
    }
  }
  if (total == 0) throw std::domain_error("no non-skipped verdicts to aggregate");
  Aggregate agg;
  agg.threshold = T;
  agg.nilpotent_fraction = static_cast<double>(nil) / static_cast<double>(total);
  if ((above > 0 && above_nil == above) || nil == total) {
    agg.kind = Aggregate::Kind::F_NILPOTENT_TYPE;
  } else if (nil > 0) {
    agg.kind = Aggregate::Kind::DENSE_TYPE;
  } else {
    agg.kind = Aggregate::Kind::NOT_TYPE;
  }
  return agg;
}

namespace detail {
inline PrimeVerdict verdict_for_prime(const IntegerModel& model, std::int64_t p, std::int64_t bound,
                                      const SkipPolicy& policy, int isolated_depth) {
  const auto start = std::chrono::steady_clock::now();
  PrimeVerdict v;
  v.p = p;
  auto finish = [&]() {
    v.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return v;
  };

  if (policy.skip.count(p)) {
    v.status = PrimeVerdict::Status::SKIPPED;
    v.skip_reason = "listed";
    return finish();
  }
  if (p <= bound) {
    v.status = PrimeVerdict::Status::SKIPPED;
    v.skip_reason = "small_prime";
    return finish();
  }
  if (policy.skip_coefficient_divisors) {
    for (const auto& t : model.poly.terms) {
      if (t.coeff % p == 0) {
        v.status = PrimeVerdict::Status::SKIPPED;
        v.skip_reason = "divides_coefficient";
        return finish();
      }
    }
  }
  try {
    const FiniteField F = FiniteField::make(p);
    SparsePoly f = reduce_mod_p(model.poly, F);
    if (f.is_zero()) {
      v.status = PrimeVerdict::Status::SKIPPED;
      v.skip_reason = "reduction_zero";
      return finish();
    }
    HypersurfaceData H(model.weights, std::move(f));
    const GradedVerdict g = classify_graded(H);
    v.basis_dim = g.basis_dim;
    v.ss_dim = g.ss_dim;
    v.nil_dim = g.nil_dim;
    v.status = (g.verdict == Verdict::F_NILPOTENT) ? PrimeVerdict::Status::NILPOTENT
                                                   : PrimeVerdict::Status::NON_NILPOTENT;
    if (isolated_depth > 0) {
      IsolatedCheckOptions opts;
      opts.max_extension = isolated_depth;
      v.isolated = isolated_status_name(isolated_check(H, opts).status);
    } else {
      v.isolated = "NONE";
    }
  } catch (const std::exception& ex) {
    v.status = PrimeVerdict::Status::SKIPPED;
    v.skip_reason = std::string("error: ") + ex.what();
  }
  return finish();
}
}  // namespace detail

/// Classifies the reduction of the model at every prime in [lo, hi], honoring
/// the skip policy. The result is independent of the thread count: each prime
/// is classified in isolation and results land in prime order.
inline SweepReport sweep_hypersurface(const IntegerModel& model, std::int64_t lo, std::int64_t hi,
                                      const SweepOptions& opts = {}) {
  const std::vector<std::int64_t> primes = enumerate_primes(lo, hi);
  SweepReport report;
  report.model = model;
  report.lo = lo;
  report.hi = hi;
  report.policy = opts.policy;
  report.skip_bound = opts.policy.effective_bound(model);
  report.isolated_depth = opts.isolated_depth;
  report.verdicts.resize(primes.size());

  const int nthreads = std::max(1, std::min<int>(opts.threads, static_cast<int>(primes.size())));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < primes.size(); ++i)
      report.verdicts[i] =
          detail::verdict_for_prime(model, primes[i], report.skip_bound, opts.policy, opts.isolated_depth);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
      workers.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= primes.size()) return;
          report.verdicts[i] =
              detail::verdict_for_prime(model, primes[i], report.skip_bound, opts.policy, opts.isolated_depth);
        }
      });
    }
    for (auto& w : workers) w.join();
  }

  bool any = false;
  for (const auto& v : report.verdicts)
    if (v.status != PrimeVerdict::Status::SKIPPED) {
      any = true;
      break;
    }
  if (any) report.aggregate = aggregate_verdict(report, opts.aggregate_threshold);
  return report;
}

struct ResidueRow {
  std::int64_t residue = 0;
  int nilpotent = 0;
  int non_nilpotent = 0;
};

/// Counts of verdicts per residue class coprime to m, classes ascending.
/// Skipped primes and primes sharing a factor with m are excluded.
inline std::vector<ResidueRow> residue_breakdown(const SweepReport& r, std::int64_t m) {
  if (m < 2) throw std::invalid_argument("residue modulus must be at least 2");
  std::vector<ResidueRow> rows;
  std::map<std::int64_t, std::size_t> index;
  for (std::int64_t res = 1; res < m; ++res) {
    if (std::gcd(res, m) != 1) continue;
    index[res] = rows.size();
    rows.push_back({res, 0, 0});
  }
  for (const auto& v : r.verdicts) {
    if (v.status == PrimeVerdict::Status::SKIPPED) continue;
    auto it = index.find(v.p % m);
    if (it == index.end()) continue;
    if (v.status == PrimeVerdict::Status::NILPOTENT) {
      ++rows[it->second].nilpotent;
    } else {
      ++rows[it->second].non_nilpotent;
    }
  }
  return rows;
}

}  // namespace fnil
