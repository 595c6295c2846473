// Command-line front end: classify one reduction, dump a degree-zero Frobenius
// matrix, classify a curve configuration, or sweep a prime range.
//
// Exit codes: 0 = F_NILPOTENT (or sweep finished), 1 = NOT_F_NILPOTENT,
// 2 = input or usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <fnil/fnil.hpp>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << bytes;
}

std::string format_monomial(const fnil::Monomial& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(m[i]);
  }
  return s + ")";
}

int run_classify(const std::string& input, std::int64_t prime, int isolated_depth) {
  const fnil::IntegerModel model = fnil::parse_model_text(read_file(input));
  const fnil::FiniteField F = fnil::FiniteField::make(prime);
  fnil::SparsePoly f = fnil::reduce_mod_p(model.poly, F);
  if (f.is_zero()) throw std::invalid_argument("polynomial vanishes mod " + std::to_string(prime));
  const fnil::HypersurfaceData H(model.weights, std::move(f));
  const fnil::GradedVerdict g = fnil::classify_graded(H);
  std::optional<fnil::IsolatedCheck> iso;
  if (isolated_depth > 0) {
    fnil::IsolatedCheckOptions opts;
    opts.max_extension = isolated_depth;
    iso = fnil::isolated_check(H, opts);
  }
  std::cout << fnil::graded_verdict_to_json(g, prime, iso).dump(2) << "\n";
  return g.verdict == fnil::Verdict::F_NILPOTENT ? 0 : 1;
}

int run_hasse_witt(const std::string& input, std::int64_t prime) {
  const fnil::IntegerModel model = fnil::parse_model_text(read_file(input));
  const fnil::FiniteField F = fnil::FiniteField::make(prime);
  fnil::SparsePoly f = fnil::reduce_mod_p(model.poly, F);
  if (f.is_zero()) throw std::invalid_argument("polynomial vanishes mod " + std::to_string(prime));
  const fnil::HypersurfaceData H(model.weights, std::move(f));
  const auto basis = fnil::neg_monomials(H, H.weighted_deg());
  const fnil::SemilinearOperator op = fnil::frobenius_on_degree_zero(H);
  std::cout << "p " << prime << "\n";
  std::cout << "basis_dim " << op.dim() << "\n";
  std::cout << "basis";
  for (const auto& m : basis) std::cout << " " << format_monomial(m);
  std::cout << "\n";
  for (int i = 0; i < op.dim(); ++i) {
    for (int j = 0; j < op.dim(); ++j) {
      if (j) std::cout << " ";
      std::cout << op.matrix().at(i, j).as_int();
    }
    std::cout << "\n";
  }
  return 0;
}

int run_snc(const std::string& input) {
  const fnil::SncConfig cfg = fnil::parse_snc_text(read_file(input));
  if (!cfg.connected()) std::cerr << "warning: dual graph is disconnected\n";
  const fnil::SurfaceVerdict v = fnil::classify_surface(cfg);
  std::cout << fnil::surface_verdict_to_json(v, cfg.p()).dump(2) << "\n";
  return v.verdict == fnil::Verdict::F_NILPOTENT ? 0 : 1;
}

struct SweepArgs {
  std::string input;
  std::int64_t from = 0, to = 0;
  std::vector<std::int64_t> skip;
  std::optional<std::int64_t> mod;
  std::string format;  // "", "csv", "json"
  std::string out = "sweep_report";
  int threads = 1;
  int isolated_depth = 1;
  bool no_default_skips = false;
  std::optional<std::int64_t> skip_bound;
  std::optional<std::int64_t> threshold;
  bool timings = false;
};

int run_sweep(const SweepArgs& a) {
  const fnil::IntegerModel model = fnil::parse_model_text(read_file(a.input));
  fnil::SweepOptions opts;
  for (auto p : a.skip) opts.policy.skip.insert(p);
  if (a.skip_bound) {
    opts.policy.small_prime_bound = *a.skip_bound;
  } else if (a.no_default_skips) {
    opts.policy.small_prime_bound = 0;
  }
  opts.threads = a.threads;
  opts.isolated_depth = a.isolated_depth;
  opts.aggregate_threshold = a.threshold;

  const fnil::SweepReport report = fnil::sweep_hypersurface(model, a.from, a.to, opts);
  if (report.verdicts.empty()) throw std::invalid_argument("empty prime range: no primes in the interval");

  fnil::ExportOptions eopts;
  eopts.include_timings = a.timings;
  if (a.format.empty() || a.format == "csv")
    write_file(a.out + ".csv", fnil::export_report(report, fnil::ExportFormat::CSV, eopts));
  if (a.format.empty() || a.format == "json")
    write_file(a.out + ".json", fnil::export_report(report, fnil::ExportFormat::JSON, eopts));

  if (report.aggregate) {
    const auto& agg = *report.aggregate;
    std::cout << "aggregate " << fnil::aggregate_kind_name(agg.kind) << " nilpotent_fraction="
              << agg.nilpotent_fraction << " threshold=" << agg.threshold << "\n";
    std::cout << "note: " << agg.caveat << "\n";
  } else {
    std::cout << "aggregate NONE (every prime in range was skipped)\n";
  }
  if (a.mod) {
    std::cout << "residues mod " << *a.mod << "\n";
    for (const auto& row : fnil::residue_breakdown(report, *a.mod)) {
      std::cout << "  " << row.residue << ": nilpotent=" << row.nilpotent
                << " non_nilpotent=" << row.non_nilpotent << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"F-nilpotence classification of quasi-homogeneous hypersurface singularities and "
               "exceptional curve configurations over finite fields"};
  app.require_subcommand(1);

  std::string input;
  std::int64_t prime = 0;
  int isolated_depth = 1;

  auto* classify = app.add_subcommand("classify", "classify one hypersurface reduction");
  classify->add_option("input", input, "hypersurface model JSON file")->required();
  classify->add_option("--prime", prime, "characteristic to reduce at")->required();
  classify->add_option("--isolated-check-depth", isolated_depth,
                       "max field extension for the isolated-locus probe (0 = off)");

  auto* hw = app.add_subcommand("hasse-witt", "print the degree-zero Frobenius matrix");
  hw->add_option("input", input, "hypersurface model JSON file")->required();
  hw->add_option("--prime", prime, "characteristic to reduce at")->required();

  auto* snc = app.add_subcommand("snc", "classify an exceptional curve configuration");
  snc->add_option("input", input, "curve configuration JSON file")->required();

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "classify reductions across a prime range");
  sweep->add_option("input", sa.input, "hypersurface model JSON file")->required();
  sweep->add_option("--from", sa.from, "lower end of the prime range")->required();
  sweep->add_option("--to", sa.to, "upper end of the prime range")->required();
  sweep->add_option("--skip", sa.skip, "primes to record as skipped");
  std::int64_t mod_val = 0;
  sweep->add_option("--mod", mod_val, "print a residue-class breakdown for this modulus");
  sweep->add_option("--format", sa.format, "write only this report format (csv or json)")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", sa.out, "output file basename (default sweep_report)");
  sweep->add_option("--threads", sa.threads, "worker threads (output is identical for any value)");
  sweep->add_option("--isolated-check-depth", sa.isolated_depth,
                    "max field extension for the per-prime isolated-locus probe (0 = off)");
  sweep->add_flag("--no-default-skips", sa.no_default_skips,
                  "disable the default small-prime bound (max weight / weighted degree)");
  std::int64_t skip_bound_val = -1;
  sweep->add_option("--skip-bound", skip_bound_val, "skip primes at or below this bound (overrides default)");
  std::int64_t threshold_val = -1;
  sweep->add_option("--threshold", threshold_val, "aggregate threshold (default: the skip bound)");
  sweep->add_flag("--timings", sa.timings, "write measured runtimes (breaks byte determinism of exports)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (classify->parsed()) return run_classify(input, prime, isolated_depth);
    if (hw->parsed()) return run_hasse_witt(input, prime);
    if (snc->parsed()) return run_snc(input);
    if (sweep->parsed()) {
      if (sweep->count("--mod")) sa.mod = mod_val;
      if (sweep->count("--skip-bound")) sa.skip_bound = skip_bound_val;
      if (sweep->count("--threshold")) sa.threshold = threshold_val;
      return run_sweep(sa);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
