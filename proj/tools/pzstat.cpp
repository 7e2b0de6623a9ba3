// pzstat: command-line front end producing covariance curves, zero-gap
// histograms, conditional probability curves, and the self-check gate
// report, as CSV/JSON.  Exit codes: 0 success, 1 runtime/data error or
// failed verification, 2 usage error.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pzeta/characters.hpp"
#include "pzeta/curve.hpp"
#include "pzeta/parallel.hpp"
#include "pzeta/prime_zeta.hpp"
#include "pzeta/primes.hpp"
#include "pzeta/repulsion.hpp"
#include "pzeta/sampling.hpp"
#include "pzeta/verify.hpp"
#include "pzeta/version.hpp"
#include "pzeta/zeros.hpp"
#include "pzeta/zeta.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Inclusive uniform grid; the endpoint is kept when it lies within a
// relative step tolerance, so --delta-min 0 --delta-max 10 --step 1
// yields 11 points.
std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw CLI::ValidationError("--step", "must be positive and finite");
  if (!(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw CLI::ValidationError("--delta-min/--delta-max",
                               "need finite min <= max");
  std::vector<double> grid;
  for (std::uint64_t k = 0;; ++k) {
    const double d = lo + static_cast<double>(k) * step;
    if (d > hi + 1e-9 * step) break;
    grid.push_back(d);
    if (grid.size() > 50'000'000)
      throw CLI::ValidationError("--step", "grid would exceed 5e7 points");
  }
  return grid;
}

std::string resolve_zeros_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("PZSTAT_ZEROS"); env && *env)
    return env;
  throw std::runtime_error(
      "no zero table: pass --zeros <path> or set PZSTAT_ZEROS");
}

// Every file output gets a <path>.manifest.json sidecar recording the
// command, the effective parameter set, the seed, the library version,
// and the wall-clock duration.
void write_manifest(const std::string& out_path, const std::string& command,
                    const ordered_json& params, std::uint64_t seed,
                    double duration_seconds) {
  ordered_json m;
  m["command"] = command;
  m["parameters"] = params;
  m["seed"] = seed;
  m["version"] = pzeta::version;
  m["duration_seconds"] = duration_seconds;
  const std::string path = out_path + ".manifest.json";
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << m.dump(2) << '\n';
}

// Writes through either a file or stdout when path is "-".
class OutStream {
 public:
  explicit OutStream(const std::string& path) : path_(path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& get() { return path_ == "-" ? std::cout : file_; }
  bool is_file() const { return path_ != "-"; }

 private:
  std::string path_;
  std::ofstream file_;
};

std::int64_t parse_i64_field(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw CLI::ValidationError(
        "--char", std::string("bad ") + what + " in character spec");
  }
}

// --char <modulus>:<generator>=<num>/<den>[,<generator>=<num>/<den>...]
// where each generator maps to e^{2 pi i num/den}.
pzeta::DirichletCharacter parse_character(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError(
        "--char", "expected <modulus>:<generator>=<num>/<den>[,...]");
  const std::int64_t modulus =
      parse_i64_field(spec.substr(0, colon), "modulus");

  std::map<std::int64_t, pzeta::UnitPhase> gens;
  std::string rest = spec.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    std::size_t comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = rest.substr(pos, comma - pos);
    pos = comma + 1;
    const std::size_t eq = item.find('=');
    const std::size_t slash = item.find('/');
    if (eq == std::string::npos || slash == std::string::npos || slash < eq)
      throw CLI::ValidationError(
          "--char", "expected <generator>=<num>/<den> in '" + item + "'");
    const std::int64_t g = parse_i64_field(item.substr(0, eq), "generator");
    const std::int64_t num =
        parse_i64_field(item.substr(eq + 1, slash - eq - 1), "numerator");
    const std::int64_t den =
        parse_i64_field(item.substr(slash + 1), "denominator");
    gens[g] = {num, den};
  }
  if (gens.empty())
    throw CLI::ValidationError("--char", "no generators in character spec");
  try {
    return pzeta::build_character(modulus, gens);
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--char", e.what());
  }
}

struct CovCurveArgs {
  std::uint64_t nth_prime_limit = 1'000'000;
  std::uint64_t limit = 0;
  bool limit_given = false;
  double delta_min = 2.0, delta_max = 100.0, step = 0.05;
  std::string char_spec;
  std::string out;
};

// delta,covariance,log_abs_zeta rows on the requested grid.  The
// reference column carries log|zeta(1 + i delta)|; at the pole it
// prints "inf".
int run_cov_curve(const CovCurveArgs& a) {
  const auto start = Clock::now();
  const std::uint64_t t_limit =
      a.limit_given ? a.limit : pzeta::nth_prime(a.nth_prime_limit);
  pzeta::PrimeTable table = pzeta::sieve_primes(t_limit);
  if (!a.char_spec.empty()) {
    const auto chi = parse_character(a.char_spec);
    table = pzeta::character_prime_table(chi, table);
  }

  const auto grid = make_grid(a.delta_min, a.delta_max, a.step);
  const pzeta::Curve curve = pzeta::covariance_curve(table, grid);

  OutStream out(a.out);
  auto& os = out.get();
  os << "delta,covariance,log_abs_zeta\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = grid[i];
    const double ref = std::abs(d) > 1e-3
                           ? pzeta::log_abs_zeta_1line(d)
                           : std::numeric_limits<double>::infinity();
    os << pzeta::format_sig12(d) << ',' << pzeta::format_sig12(curve.values[i])
       << ',' << pzeta::format_sig12(ref) << '\n';
  }
  os.flush();

  if (out.is_file()) {
    ordered_json params;
    params["prime_limit"] = t_limit;
    if (!a.limit_given) params["nth_prime_limit"] = a.nth_prime_limit;
    params["delta_min"] = a.delta_min;
    params["delta_max"] = a.delta_max;
    params["step"] = a.step;
    if (!a.char_spec.empty()) params["char"] = a.char_spec;
    params["out"] = a.out;
    write_manifest(a.out, "cov-curve", params, 0, seconds_since(start));
  }
  return 0;
}

struct ZeroHistArgs {
  std::string zeros;
  double lo = 0.0, hi = 0.0, bin_width = 0.0;
  std::uint64_t count = 0;
  std::vector<double> troughs;
  double half_width = 0.15, window = 1.0;
  std::string out;
  std::string trough_out;
};

int run_zero_hist(const ZeroHistArgs& a) {
  const auto start = Clock::now();
  const std::string zeros_path = resolve_zeros_path(a.zeros);
  pzeta::ZeroTable zeros = pzeta::load_zeros_file(zeros_path);
  if (a.count > 0) {
    if (a.count > zeros.ordinates.size())
      throw std::runtime_error("zero table has only " +
                               std::to_string(zeros.ordinates.size()) +
                               " ordinates");
    zeros.ordinates.resize(a.count);
  }

  const pzeta::DiffHistogram hist =
      pzeta::diff_histogram(zeros, a.lo, a.hi, a.bin_width);

  // Scored centers: --troughs verbatim (unscorable centers are an
  // error), otherwise whichever of the first three ordinates the
  // histogram can score.
  std::vector<double> scored_centers;
  ordered_json troughs = ordered_json::array();
  if (!a.troughs.empty()) {
    for (double c : a.troughs) {
      const double s = pzeta::trough_score(hist, c, a.half_width, a.window);
      troughs.push_back({{"center", c}, {"score", s}});
      scored_centers.push_back(c);
    }
  } else {
    for (std::size_t i = 0; i < zeros.ordinates.size() && i < 3; ++i) {
      const double c = zeros.ordinates[i];
      try {
        const double s = pzeta::trough_score(hist, c, a.half_width, a.window);
        troughs.push_back({{"center", c}, {"score", s}});
        scored_centers.push_back(c);
      } catch (const std::domain_error&) {
        // default center does not fit this histogram; skip it
      }
    }
  }
  ordered_json report;
  report["zeros"] = zeros_path;
  report["ordinates_used"] = zeros.ordinates.size();
  report["lo"] = hist.lo;
  report["hi"] = hist.hi;
  report["bin_width"] = hist.bin_width;
  report["half_width"] = a.half_width;
  report["window"] = a.window;
  report["troughs"] = troughs;

  {
    OutStream out(a.out);
    auto& os = out.get();
    os << "bin_left,count\n";
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
      const double left = hist.lo + static_cast<double>(b) * hist.bin_width;
      os << pzeta::format_sig12(left) << ',' << hist.counts[b] << '\n';
    }
    os.flush();
  }

  std::string trough_path = a.trough_out;
  if (trough_path.empty())
    trough_path = a.out == "-" ? "-" : a.out + ".troughs.json";
  {
    OutStream out(trough_path);
    out.get() << report.dump(2) << '\n';
    out.get().flush();
  }

  ordered_json params;
  params["zeros"] = zeros_path;
  params["lo"] = a.lo;
  params["hi"] = a.hi;
  params["bin_width"] = a.bin_width;
  params["count"] = a.count;
  params["troughs"] = scored_centers;
  params["half_width"] = a.half_width;
  params["window"] = a.window;
  params["out"] = a.out;
  params["trough_out"] = trough_path;
  const double dur = seconds_since(start);
  if (a.out != "-") write_manifest(a.out, "zero-hist", params, 0, dur);
  if (trough_path != "-")
    write_manifest(trough_path, "zero-hist", params, 0, dur);
  return 0;
}

struct CondProbArgs {
  std::string zeros;
  double tau = 0.0;
  bool tau_given = false;
  std::uint64_t zero_index = 100'000;  // 1-based
  double sigmas = 3.0;
  std::string convention = "std";
  double delta_min = 2.0, delta_max = 100.0, step = 0.05;
  std::string out;
};

int run_cond_prob(const CondProbArgs& a) {
  const auto start = Clock::now();
  double tau = a.tau;
  std::string zeros_path;
  if (!a.tau_given) {
    zeros_path = resolve_zeros_path(a.zeros);
    const pzeta::ZeroTable zeros = pzeta::load_zeros_file(zeros_path);
    if (a.zero_index < 1 || a.zero_index > zeros.ordinates.size())
      throw std::runtime_error(
          "zero index " + std::to_string(a.zero_index) +
          " outside table of " + std::to_string(zeros.ordinates.size()));
    tau = zeros.ordinates[a.zero_index - 1];
  }

  const auto convention = a.convention == "std"
                              ? pzeta::SigmaConvention::stddev
                              : pzeta::SigmaConvention::variance_literal;
  const auto grid = make_grid(a.delta_min, a.delta_max, a.step);
  const pzeta::Curve curve =
      pzeta::extreme_prob_curve(grid, tau, a.sigmas, convention);

  OutStream out(a.out);
  pzeta::write_curve_csv(out.get(), curve, "probability");
  out.get().flush();

  if (out.is_file()) {
    ordered_json params;
    if (!zeros_path.empty()) {
      params["zeros"] = zeros_path;
      params["zero_index"] = a.zero_index;
    }
    params["tau"] = tau;
    params["sigmas"] = a.sigmas;
    params["sigma_convention"] = a.convention;
    params["delta_min"] = a.delta_min;
    params["delta_max"] = a.delta_max;
    params["step"] = a.step;
    params["out"] = a.out;
    write_manifest(a.out, "cond-prob", params, 0, seconds_since(start));
  }
  return 0;
}

struct VerifyArgs {
  std::string zeros;
  std::string level = "fast";
  std::uint64_t seed = 1;
  double tolerance_scale = 1.0;
};

// JSON gate report on stdout; exit 0 iff every gate passes.  Durations
// stay out of the report so a fixed seed reproduces it byte for byte.
int run_verify(const VerifyArgs& a) {
  pzeta::VerifyOptions opt;
  opt.level = a.level == "full" ? pzeta::VerifyLevel::full
                                : pzeta::VerifyLevel::fast;
  opt.seed = a.seed;
  opt.zeros_path = resolve_zeros_path(a.zeros);
  opt.tolerance_scale = a.tolerance_scale;

  pzeta::NormalityCheck moments;
  const bool full = opt.level == pzeta::VerifyLevel::full;
  const pzeta::VerifyReport rep =
      pzeta::run_gates(opt, full ? &moments : nullptr);

  ordered_json doc;
  doc["command"] = "verify";
  doc["version"] = pzeta::version;
  doc["level"] = a.level;
  doc["seed"] = a.seed;
  doc["zeros"] = opt.zeros_path;
  if (a.tolerance_scale != 1.0) doc["tolerance_scale"] = a.tolerance_scale;
  if (full) {
    const pzeta::SampleConfig cfg = pzeta::moments_sample_config(opt.seed);
    doc["config"] = {{"height_T", cfg.height_T},
                     {"n_samples", cfg.n_samples},
                     {"stream_seed", cfg.seed},
                     {"sigma", cfg.sigma}};
    doc["moments"] = {{"mean", moments.moments.mean},
                      {"variance", moments.moments.variance},
                      {"skewness", moments.moments.skewness},
                      {"excess_kurtosis", moments.moments.excess_kurtosis},
                      {"n", moments.moments.n},
                      {"scale_variance", moments.scale_variance}};
  }
  doc["gates"] = ordered_json::array();
  for (const auto& g : rep.gates) {
    doc["gates"].push_back({{"check", g.check},
                            {"name", g.name},
                            {"target", g.target},
                            {"estimate", g.estimate},
                            {"stderr", g.std_error},
                            {"tolerance", g.tolerance},
                            {"pass", g.pass}});
  }
  doc["all_pass"] = rep.all_pass;
  std::cout << doc.dump(2) << '\n';
  return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime sum statistics and zero-gap repulsion toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pzeta::version);

  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "worker thread cap (0 = hardware concurrency); results do "
                 "not depend on it");

  CovCurveArgs cov;
  auto* cmd_cov = app.add_subcommand(
      "cov-curve", "covariance curve with a log|zeta(1+i delta)| reference");
  auto* opt_nth = cmd_cov->add_option("--nth-prime-limit", cov.nth_prime_limit,
                                      "truncate at the n-th prime");
  auto* opt_lim =
      cmd_cov->add_option("--limit", cov.limit, "truncate at this prime bound");
  opt_nth->excludes(opt_lim);
  opt_lim->excludes(opt_nth);
  cmd_cov->add_option("--delta-min", cov.delta_min, "grid start");
  cmd_cov->add_option("--delta-max", cov.delta_max, "grid end (inclusive)");
  cmd_cov->add_option("--step", cov.step, "grid step");
  cmd_cov->add_option("--char", cov.char_spec,
                      "Dirichlet character <modulus>:<gen>=<num>/<den>[,...]; "
                      "drops primes dividing the modulus");
  cmd_cov->add_option("--out", cov.out, "output CSV path, - for stdout")
      ->required();
  cmd_cov->callback([&] { cov.limit_given = opt_lim->count() > 0; });

  ZeroHistArgs zh;
  auto* cmd_zh = app.add_subcommand(
      "zero-hist", "zero-difference histogram with trough scores");
  cmd_zh->add_option("--zeros", zh.zeros,
                     "zero table path (default: PZSTAT_ZEROS)");
  cmd_zh->add_option("--lo", zh.lo, "difference range start")->required();
  cmd_zh->add_option("--hi", zh.hi, "difference range end")->required();
  cmd_zh->add_option("--bin-width", zh.bin_width, "bin width")->required();
  cmd_zh->add_option("--count", zh.count,
                     "use only the first N ordinates (0 = all)");
  cmd_zh->add_option("--troughs", zh.troughs,
                     "centers to score (default: first three ordinates "
                     "that fit the range)");
  cmd_zh->add_option("--half-width", zh.half_width, "trough core half width");
  cmd_zh->add_option("--window", zh.window, "trough flank window");
  cmd_zh->add_option("--out", zh.out, "histogram CSV path, - for stdout")
      ->required();
  cmd_zh->add_option("--trough-out", zh.trough_out,
                     "trough report path (default: <out>.troughs.json)");

  CondProbArgs cp;
  auto* cmd_cp = app.add_subcommand(
      "cond-prob", "probability of an extreme sum value near a zero");
  cmd_cp->add_option("--zeros", cp.zeros,
                     "zero table path (default: PZSTAT_ZEROS)");
  auto* opt_tau = cmd_cp->add_option("--tau", cp.tau, "height tau directly");
  cmd_cp->add_option("--zero-index", cp.zero_index,
                     "1-based ordinate index used for tau");
  cmd_cp->add_option("--sigmas", cp.sigmas, "threshold in sigma units");
  cmd_cp->add_option("--sigma-convention", cp.convention,
                     "std: threshold times sqrt(variance); paper-caption: "
                     "threshold times variance")
      ->check(CLI::IsMember({"std", "paper-caption"}));
  cmd_cp->add_option("--delta-min", cp.delta_min, "grid start");
  cmd_cp->add_option("--delta-max", cp.delta_max, "grid end (inclusive)");
  cmd_cp->add_option("--step", cp.step, "grid step");
  cmd_cp->add_option("--out", cp.out, "output CSV path, - for stdout")
      ->required();
  cmd_cp->callback([&] { cp.tau_given = opt_tau->count() > 0; });

  VerifyArgs vf;
  auto* cmd_vf = app.add_subcommand(
      "verify", "run every acceptance gate and report pass/fail as JSON");
  cmd_vf->add_option("--zeros", vf.zeros,
                     "zero table path (default: PZSTAT_ZEROS)");
  cmd_vf->add_option("--level", vf.level, "fast: deterministic gates only; "
                                          "full: adds Monte Carlo gates")
      ->check(CLI::IsMember({"fast", "full"}));
  cmd_vf->add_option("--seed", vf.seed, "master seed for Monte Carlo gates");
  cmd_vf->add_option("--tolerance-scale", vf.tolerance_scale,
                     "test hook: scales every bound and tolerance")
      ->group("");

  try {
    app.parse(argc, argv);
    pzeta::default_thread_cap() = threads;
    if (cmd_cov->parsed()) return run_cov_curve(cov);
    if (cmd_zh->parsed()) return run_zero_hist(zh);
    if (cmd_cp->parsed()) return run_cond_prob(cp);
    return run_verify(vf);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
      return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pzstat: " << e.what() << '\n';
    return 1;
  }
}
