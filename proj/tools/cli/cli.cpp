#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "specgap/constants.hpp"
#include "specgap/errors.hpp"
#include "specgap/lemma_scan.hpp"
#include "specgap/operator_lab.hpp"
#include "specgap/partition_optimizer.hpp"
#include "specgap/serialization.hpp"

#ifndef SPECGAP_VERSION
#define SPECGAP_VERSION "unknown"
#endif

namespace specgap::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegPerRad = 180.0 / kPi;
constexpr double kRankOneTolerance = 1e-10;

struct Common {
  QuadratureConfig quad{};
  double root_tol = 1e-12;
  std::uint64_t seed = 0;
};

using Settings = std::vector<std::pair<std::string, std::string>>;

std::string num(double x) { return format_number(x); }

std::string angle_text(Angle a) { return fmt::format("{:.10g} rad ({:.10g} deg)", a, a * kDegPerRad); }

void header(std::ostream& out, const char* command, const Common& c, const Settings& extra) {
  fmt::print(out, "# specgap {} {}\n", SPECGAP_VERSION, command);
  fmt::print(out, "# quadrature.abs_tolerance = {}\n", num(c.quad.abs_tolerance));
  fmt::print(out, "# quadrature.max_subdivisions = {}\n", c.quad.max_subdivisions);
  fmt::print(out, "# root_tolerance = {}\n", num(c.root_tol));
  fmt::print(out, "# seed = {}\n", c.seed);
  for (const auto& [key, value] : extra) fmt::print(out, "# {} = {}\n", key, value);
}

// Files are opened in binary mode so line endings stay LF on every platform.
std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DomainError("cannot open output file " + path);
  return file;
}

std::pair<double, double> parse_range(const std::string& text, const char* what) {
  std::string s = text;
  std::size_t pos = s.find("..");
  std::size_t skip = 2;
  if (pos == std::string::npos) {
    pos = s.find(':');
    skip = 1;
  }
  try {
    std::size_t used = 0;
    if (pos == std::string::npos) {
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {v, v};
    }
    const std::string lo = s.substr(0, pos);
    const std::string hi = s.substr(pos + skip);
    const double a = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    const double b = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
    return {a, b};
  } catch (const std::exception&) {
    throw DomainError(std::string(what) + ": expected LO:HI, got '" + text + "'");
  }
}

// ---------------------------------------------------------------- constants

struct ConstantsArgs {
  std::optional<double> tolerance;
  double margin = kStrictMargin;
  std::string expected_path;
  std::string format = "text";
};

struct Expected {
  double c_off = published::kCOff;
  double lambda_star = published::kLambdaStar;
  std::array<double, 5> tau = published::kTauLowerBounds;
  double c_crit = published::kCCrit;
  double am14_bound = published::kAm14Bound;
};

Expected load_expected(const std::string& path) {
  Expected e;
  if (path.empty()) return e;
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read expected table " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& ex) {
    throw DomainError("expected table " + path + " is not valid JSON: " + ex.what());
  }
  if (doc.contains("c_off")) e.c_off = doc["c_off"].get<double>();
  if (doc.contains("lambda_star")) e.lambda_star = doc["lambda_star"].get<double>();
  if (doc.contains("tau")) {
    const auto tau = doc["tau"].get<std::vector<double>>();
    if (tau.size() != 5) throw DomainError("expected table: tau needs five entries");
    std::copy(tau.begin(), tau.end(), e.tau.begin());
  }
  if (doc.contains("c_crit")) e.c_crit = doc["c_crit"].get<double>();
  if (doc.contains("am14_bound")) e.am14_bound = doc["am14_bound"].get<double>();
  return e;
}

struct Row {
  std::string name;
  double computed;
  double published;
  std::string check;
  bool passed;
};

int cmd_constants(const Common& c, const ConstantsArgs& a, std::ostream& out) {
  const Expected exp = load_expected(a.expected_path);
  const double tol_c = a.tolerance.value_or(1e-6);
  const double tol_l = a.tolerance.value_or(1e-7);
  const GapConstants pc = compute_gap_constants(c.quad, c.root_tol);

  std::vector<Row> rows;
  rows.push_back({"c_off", pc.c_off, exp.c_off, fmt::format("|diff| <= {}", num(tol_c)),
                  std::abs(pc.c_off - exp.c_off) <= tol_c});
  rows.push_back({"lambda_star", pc.lambda_star, exp.lambda_star, fmt::format("|diff| <= {}", num(tol_l)),
                  std::abs(pc.lambda_star - exp.lambda_star) <= tol_l});
  for (std::size_t j = 0; j < 5; ++j) {
    rows.push_back({fmt::format("tau_{}", j + 1), pc.tau[j], exp.tau[j],
                    fmt::format("exceeds by >= {}", num(a.margin)), pc.tau[j] - exp.tau[j] >= a.margin});
  }
  rows.push_back({"c*_off", pc.c_off_star, exp.tau[4], fmt::format("exceeds by >= {}", num(a.margin)),
                  pc.c_off_star - exp.tau[4] >= a.margin});
  rows.push_back({"c_crit", exp.c_crit, exp.c_crit, "reference; c_crit < c_off", exp.c_crit < pc.c_off});
  rows.push_back({"am14_bound", exp.am14_bound, exp.am14_bound, "reference; c_off < it < c*_off",
                  pc.c_off < exp.am14_bound && exp.am14_bound < pc.c_off_star});

  bool all = true;
  for (const Row& r : rows) all = all && r.passed;

  if (a.format == "json") {
    Json doc;
    doc["rows"] = Json::array();
    for (const Row& r : rows) {
      doc["rows"].push_back(Json{{"name", r.name},
                                 {"computed", r.computed},
                                 {"published", r.published},
                                 {"check", r.check},
                                 {"passed", r.passed}});
    }
    doc["passed"] = all;
    out << doc.dump(2) << '\n';
  } else {
    header(out, "constants", c,
           {{"tolerance.c_off", num(tol_c)}, {"tolerance.lambda_star", num(tol_l)},
            {"strict_margin", num(a.margin)},
            {"expected", a.expected_path.empty() ? "published" : a.expected_path}});
    fmt::print(out, "{:<12} {:>20} {:>12}  {:<32} {}\n", "name", "computed", "published", "check", "status");
    for (const Row& r : rows) {
      fmt::print(out, "{:<12} {:>20.15f} {:>12.7f}  {:<32} {}\n", r.name, r.computed, r.published, r.check,
                 r.passed ? "PASS" : "FAIL");
    }
    fmt::print(out, "{}\n", all ? "all constants reproduced" : "reproduction FAILED");
  }
  return all ? kPass : kCheckFailed;
}

// -------------------------------------------------------------------- bound

struct BoundArgs {
  double t = 0.0;
  std::string format = "text";
};

int cmd_bound(const Common& c, const BoundArgs& a, std::ostream& out) {
  if (!(a.t >= 0.0) || !(a.t < kGapLimit)) {
    throw DomainError("bound: t must lie in [0, sqrt(3)/2)");
  }
  const GapConstants& pc = gap_constants();
  const PiecewiseBound pw = make_piecewise_bound(pc);
  std::optional<Angle> n_star;
  std::optional<Angle> ms;
  std::optional<Angle> general;
  if (a.t <= pc.c_off_star) n_star = n_off_star(a.t, pw, c.quad);
  if (a.t < pc.c_off) ms = ms_bound(0.0, a.t, c.quad);
  if (a.t <= kMaxStepRatio) general = step_bound(a.t);

  if (a.format == "json") {
    const auto opt = [](const std::optional<Angle>& v) { return v ? Json(*v) : Json(nullptr); };
    Json doc{{"t", a.t}, {"n_off_star", opt(n_star)}, {"ms_bound", opt(ms)}, {"general_bound", opt(general)}};
    out << doc.dump(2) << '\n';
  } else {
    header(out, "bound", c, {{"t", num(a.t)}});
    fmt::print(out, "t                = {:.10g}\n", a.t);
    if (n_star) {
      fmt::print(out, "N*_off(t)        = {}\n", angle_text(*n_star));
    } else {
      fmt::print(out, "N*_off(t)        = unavailable: t exceeds c*_off = {:.10g}\n", pc.c_off_star);
    }
    if (ms) {
      fmt::print(out, "integral bound   = {}\n", angle_text(*ms));
    } else {
      fmt::print(out, "integral bound   = unavailable: it reaches pi/2 at c_off = {:.10g}\n", pc.c_off);
    }
    if (general) {
      fmt::print(out, "general bound    = {}\n", angle_text(*general));
    } else {
      fmt::print(out, "general bound    = unavailable: t exceeds 1/pi\n");
    }
  }
  return n_star ? kPass : kUsageError;
}

// -------------------------------------------------------------------- curve

struct CurveArgs {
  double from = 0.0;
  double to = 0.69;
  double step = 1e-3;
  std::string out_path;
};

int cmd_curve(const Common& c, const CurveArgs& a, std::ostream& out) {
  if (!(a.step > 0.0) || !(a.from >= 0.0) || !(a.to >= a.from) || !(a.to <= kEndpointCap)) {
    throw DomainError("curve: need 0 <= from <= to < sqrt(3)/2 and step > 0");
  }
  const GapConstants& pc = gap_constants();
  const PiecewiseBound pw = make_piecewise_bound(pc);
  const auto rows = static_cast<std::size_t>(std::floor((a.to - a.from) / a.step + 1e-9)) + 1;

  std::ostringstream csv;
  csv << "t,n_off_star,ms_bound,general_bound\n";
  std::size_t violations = 0;
  std::optional<double> prev_n;
  for (std::size_t k = 0; k < rows; ++k) {
    const double t = a.from + a.step * static_cast<double>(k);
    const double ms = ms_bound(0.0, t, c.quad);
    csv << num(t) << ',';
    if (t <= pc.c_off_star) {
      const double n = n_off_star(t, pw, c.quad);
      csv << num(n);
      const bool ordered = t <= pc.tau[0] ? std::abs(n - ms) <= 1e-9 : n < ms;
      if (!ordered || (prev_n && !(n > *prev_n))) ++violations;
      prev_n = n;
    }
    csv << ',' << num(ms) << ',';
    if (t <= kMaxStepRatio) csv << num(step_bound(t));
    csv << '\n';
  }

  if (a.out_path.empty() || a.out_path == "-") {
    out << csv.str();
  } else {
    open_output(a.out_path) << csv.str();
    header(out, "curve", c,
           {{"from", num(a.from)}, {"to", num(a.to)}, {"step", num(a.step)}, {"out", a.out_path}});
    fmt::print(out, "rows = {}\nviolations = {}\n", rows, violations);
  }
  return violations == 0 ? kPass : kCheckFailed;
}

// ----------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::size_t steps = 4;
  double budget = kDefaultBudget;
  int restarts = 20;
  bool sweep = false;
  std::string out_path;
};

int cmd_optimize(const Common& c, const OptimizeArgs& a, std::ostream& out) {
  OptimizerConfig opt;
  opt.seed = c.seed;
  opt.restarts = a.restarts;
  header(out, "optimize", c,
         {{"steps", std::to_string(a.steps)},
          {"budget", num(a.budget)},
          {"restarts", std::to_string(a.restarts)},
          {"nelder_mead.max_evaluations", std::to_string(opt.nelder_mead.max_evaluations)},
          {"nelder_mead.f_tolerance", num(opt.nelder_mead.f_tolerance)},
          {"nelder_mead.x_tolerance", num(opt.nelder_mead.x_tolerance)}});

  std::optional<OptimizationResult> best;
  if (a.sweep) {
    fmt::print(out, "{:>5} {:>18} {:>12}\n", "steps", "reach", "converged");
    for (std::size_t n = 0; n <= a.steps; ++n) {
      if (best) opt.warm_starts = {best->allocation};
      best = maximize_reach(n, a.budget, c.quad, opt);
      fmt::print(out, "{:>5} {:>18.15f} {:>12}\n", n, best->certificate.reach, best->converged ? "yes" : "no");
    }
  } else {
    best = maximize_reach(a.steps, a.budget, c.quad, opt);
  }
  const OptimizationResult& result = *best;

  const BoundCertificate& cert = result.certificate;
  const Json doc = certificate_to_json(cert, CertificateMeta{c.quad, c.root_tol, c.seed});
  bool verified = true;
  try {
    (void)certificate_from_json(doc);
  } catch (const ValidityError&) {
    verified = false;
  }

  fmt::print(out, "integral step angle = {}\n", angle_text(result.allocation.lambda0_budget));
  for (std::size_t j = 0; j < result.allocation.step_budgets.size(); ++j) {
    fmt::print(out, "step {:<2} angle      = {}\n", j + 1, angle_text(result.allocation.step_budgets[j]));
  }
  fmt::print(out, "points = [");
  for (std::size_t j = 0; j < cert.partition.points().size(); ++j) {
    fmt::print(out, "{}{:.15f}", j ? ", " : "", cert.partition.points()[j]);
  }
  fmt::print(out, "]\n");
  fmt::print(out, "bound = {}, pi/2 - bound = {:.3e}\n", angle_text(cert.bound), kPi / 2.0 - cert.bound);
  fmt::print(out, "achieved constant = {:.15f}\n", cert.reach);
  fmt::print(out, "gain over c*_off = {:.3e}\n", cert.reach - gap_constants().c_off_star);
  fmt::print(out, "optimizer converged = {}, evaluations = {}\n", result.converged ? "yes" : "no",
             result.evaluations);
  fmt::print(out, "certificate re-verified = {}\n", verified ? "yes" : "no");

  if (!a.out_path.empty()) open_output(a.out_path) << doc.dump(2) << '\n';

  bool ok = verified && cert.admissible();
  if (a.steps >= 4 && a.budget == kDefaultBudget) ok = ok && cert.reach >= published::kTauLowerBounds[4];
  fmt::print(out, "{}\n", ok ? "PASS" : "FAIL");
  return ok ? kPass : kCheckFailed;
}

// -------------------------------------------------------------- lemma-check

struct LemmaArgs {
  std::size_t grid = 10'000;
  double r_lo = 0.05;
  double r_hi = 0.8;
  std::size_t r_grid = 100;
  std::size_t samples = 64;
};

int cmd_lemma_check(const Common& c, const LemmaArgs& a, std::ostream& out) {
  header(out, "lemma-check", c,
         {{"grid", std::to_string(a.grid)},
          {"r_range", num(a.r_lo) + ":" + num(a.r_hi)},
          {"r_grid", std::to_string(a.r_grid)},
          {"samples", std::to_string(a.samples)}});
  const OriginScan origin = scan_origin(a.grid, c.quad);
  fmt::print(out, "origin scan: h_0(s) < 0 on {} points of (0, 1/pi]\n", origin.points);
  fmt::print(out, "  min margin = {:.6e} at s = {:.10g}, violations = {}  {}\n", origin.min_margin,
             origin.worst_s, origin.violations, origin.passed() ? "PASS" : "FAIL");
  const UniformEpsilonScan eps = scan_uniform_epsilon(a.r_lo, a.r_hi, a.r_grid, a.samples, c.quad);
  fmt::print(out, "uniform epsilon scan: r in [{:.10g}, {:.10g}], {} points, {} samples per r\n", a.r_lo,
             a.r_hi, eps.r_points, eps.samples);
  fmt::print(out, "  uniform epsilon = {:.6e} (sampled, not maximal)\n", eps.uniform_epsilon);
  fmt::print(out, "  min h_r(r + e) = {:.6e} at r = {:.10g}, violations = {}  {}\n", eps.min_h, eps.worst_r,
             eps.violations, eps.passed() ? "PASS" : "FAIL");
  const bool ok = origin.passed() && eps.passed();
  fmt::print(out, "{}\n", ok ? "PASS" : "FAIL");
  return ok ? kPass : kCheckFailed;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  std::size_t trials = 200;
  std::string dims = "2:32";
  std::string t_range = "0:0.69";
  std::string layout = "both";
  bool no_rotate = false;
  std::size_t buckets = 10;
  std::string out_path;
  std::string summary_path;
};

int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out) {
  const auto [d_lo, d_hi] = parse_range(a.dims, "--dims");
  const auto [t_lo, t_hi] = parse_range(a.t_range, "--t-range");
  if (d_lo != std::floor(d_lo) || d_hi != std::floor(d_hi)) throw DomainError("--dims: expected integers");
  TrialConfig tc;
  tc.trials = a.trials;
  tc.dim_lo = static_cast<int>(d_lo);
  tc.dim_hi = static_cast<int>(d_hi);
  tc.t_lo = t_lo;
  tc.t_hi = t_hi;
  tc.seed = c.seed;
  tc.rotate = !a.no_rotate;
  tc.layouts = a.layout == "subordinated" ? LayoutChoice::subordinated
               : a.layout == "interlaced" ? LayoutChoice::interlaced
                                          : LayoutChoice::both;
  header(out, "verify", c,
         {{"trials", std::to_string(a.trials)},
          {"dims", a.dims},
          {"t_range", a.t_range},
          {"layout", a.layout},
          {"rotate", tc.rotate ? "yes" : "no"},
          {"bound_tolerance", num(kBoundTolerance)},
          {"rank_one_tolerance", num(kRankOneTolerance)}});

  const std::vector<BoundsReport> reports = run_trials(tc, c.quad);

  std::size_t n_star_fail = 0, other_bound_fail = 0, enclosure_fail = 0, gap_fail = 0, rank_fail = 0;
  std::size_t rank_one = 0, rank_one_fail = 0;
  double min_slack = INFINITY;
  double max_theta = 0.0;
  double rank_one_err = 0.0;
  for (const BoundsReport& r : reports) {
    if (r.n_off_star) {
      if (!r.n_off_star->passed) ++n_star_fail;
      min_slack = std::min(min_slack, r.n_off_star->slack);
    }
    if ((r.ms_bound && !r.ms_bound->passed) || (r.general_bound && !r.general_bound->passed)) ++other_bound_fail;
    if (!r.enclosure_ok) ++enclosure_fail;
    if (!r.gap_ok) ++gap_fail;
    if (!r.rank_ok) ++rank_fail;
    max_theta = std::max(max_theta, r.theta);
    if (r.dim_sigma == 1 && r.dim_Sigma == 1) {
      ++rank_one;
      const double err = std::abs(r.theta - 0.5 * std::atan(2.0 * r.t));
      rank_one_err = std::max(rank_one_err, err);
      if (!(err <= kRankOneTolerance)) ++rank_one_fail;
    }
  }

  if (!a.out_path.empty()) {
    std::ofstream file = open_output(a.out_path);
    write_trial_lines(file, reports);
  }
  if (!a.summary_path.empty()) {
    std::ofstream file = open_output(a.summary_path);
    write_slack_summary(file, reports, t_lo, t_hi, a.buckets);
  }

  fmt::print(out, "instances = {}\n", reports.size());
  fmt::print(out, "max theta = {}\n", angle_text(max_theta));
  if (std::isfinite(min_slack)) fmt::print(out, "min N*_off slack = {:.6e}\n", min_slack);
  fmt::print(out, "N*_off violations = {}\n", n_star_fail);
  fmt::print(out, "integral/general bound violations = {}\n", other_bound_fail);
  fmt::print(out, "enclosure failures = {}\n", enclosure_fail);
  fmt::print(out, "gap failures = {}\n", gap_fail);
  fmt::print(out, "rank failures = {}\n", rank_fail);
  if (rank_one > 0) {
    fmt::print(out, "rank-one instances = {}, max |theta - atan(2t)/2| = {:.3e}, failures = {}\n", rank_one,
               rank_one_err, rank_one_fail);
  }
  const bool ok = n_star_fail == 0 && other_bound_fail == 0 && enclosure_fail == 0 && gap_fail == 0 &&
                  rank_fail == 0 && rank_one_fail == 0;
  fmt::print(out, "{}\n", ok ? "PASS" : "FAIL");
  return ok ? kPass : kCheckFailed;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Angle bounds for spectral subspaces under off-diagonal perturbations", "specgap"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--quad-tol", common.quad.abs_tolerance, "Absolute quadrature tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--max-subdivisions", common.quad.max_subdivisions, "Quadrature interval cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--root-tol", common.root_tol, "Root finder tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "Random seed (default 0, or $SPECGAP_SEED)")
      ->envname("SPECGAP_SEED")
      ->capture_default_str();

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "Reproduce the published constants");
  constants->add_option("--tolerance", ca.tolerance, "Match tolerance for c_off and lambda_star")
      ->check(CLI::PositiveNumber);
  constants->add_option("--margin", ca.margin, "Required excess over published lower bounds")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  constants->add_option("--expected", ca.expected_path, "JSON file overriding the published table")
      ->check(CLI::ExistingFile);
  constants->add_option("--format", ca.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Evaluate the angle bounds at t = ||V||/d");
  bound->add_option("--t", ba.t, "Perturbation ratio")->required();
  bound->add_option("--format", ba.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  CurveArgs cu;
  auto* curve = app.add_subcommand("curve", "Export bound curves as CSV");
  curve->add_option("--from", cu.from)->capture_default_str();
  curve->add_option("--to", cu.to)->capture_default_str();
  curve->add_option("--step", cu.step)->capture_default_str();
  curve->add_option("--out", cu.out_path, "CSV file (default stdout)");

  OptimizeArgs oa;
  auto* optimize = app.add_subcommand("optimize", "Maximize the reach of an n-step partition");
  optimize->add_option("--steps", oa.steps)->capture_default_str();
  optimize->add_option("--budget", oa.budget, "Total angle, at most pi/2 - 1e-9")->capture_default_str();
  optimize->add_option("--restarts", oa.restarts)->capture_default_str()->check(CLI::NonNegativeNumber);
  optimize->add_flag("--sweep", oa.sweep, "Also report the best reach for every step count up to --steps");
  optimize->add_option("--out", oa.out_path, "Certificate JSON file");

  LemmaArgs la;
  auto* lemma = app.add_subcommand("lemma-check", "Scan the single-step versus integral bound inequalities");
  lemma->add_option("--grid", la.grid, "Points in (0, 1/pi]")->capture_default_str()->check(CLI::PositiveNumber);
  lemma->add_option("--r-lo", la.r_lo)->capture_default_str();
  lemma->add_option("--r-hi", la.r_hi)->capture_default_str();
  lemma->add_option("--r-grid", la.r_grid)->capture_default_str()->check(CLI::PositiveNumber);
  lemma->add_option("--samples", la.samples)->capture_default_str()->check(CLI::PositiveNumber);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check the bounds on random finite-dimensional operators");
  verify->add_option("--trials", va.trials)->capture_default_str();
  verify->add_option("--dims", va.dims, "Total dimension range LO:HI")->capture_default_str();
  verify->add_option("--t-range", va.t_range, "Range LO:HI of ||V||/d")->capture_default_str();
  verify->add_option("--layout", va.layout)
      ->check(CLI::IsMember({"both", "subordinated", "interlaced"}))
      ->capture_default_str();
  verify->add_flag("--no-rotate", va.no_rotate, "Keep the spectral basis axis-aligned");
  verify->add_option("--buckets", va.buckets, "t buckets in the summary")->capture_default_str();
  verify->add_option("--out", va.out_path, "JSON-lines trial report");
  verify->add_option("--summary", va.summary_path, "CSV slack summary");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    common.quad.validate();
    if (constants->parsed()) return cmd_constants(common, ca, out);
    if (bound->parsed()) return cmd_bound(common, ba, out);
    if (curve->parsed()) return cmd_curve(common, cu, out);
    if (optimize->parsed()) return cmd_optimize(common, oa, out);
    if (lemma->parsed()) return cmd_lemma_check(common, la, out);
    if (verify->parsed()) return cmd_verify(common, va, out);
  } catch (const DomainError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsageError;
  } catch (const ValidityError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsageError;
  } catch (const InfeasibleError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    fmt::print(err, "check failed: {}\n", e.what());
    return kCheckFailed;
  }
  return kUsageError;
}

} // namespace specgap::cli
