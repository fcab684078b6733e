// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specgap/constants.hpp"
#include "specgap/errors.hpp"
#include "specgap/lemma_scan.hpp"
#include "specgap/operator_lab.hpp"
#include "specgap/partition_optimizer.hpp"

namespace {

using namespace specgap;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const char* fmt, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, args...);
    notes.emplace_back(std::string(ok ? "ok   " : "FAIL ") + buf);
    passed = passed && ok;
  }
};

bool run(int id, const char* title, double time_limit, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, "unexpected exception: %s", e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(secs < time_limit, "runtime %.3f s < %.0f s", secs, time_limit);
  std::printf("%s  criterion %d: %s\n", out.passed ? "PASS" : "FAIL", id, title);
  for (const auto& n : out.notes) std::printf("        %s\n", n.c_str());
  std::fflush(stdout);
  return out.passed;
}

Partition tau_partition(const GapConstants& pc) {
  return Partition({0.0, pc.tau[0], pc.tau[1], pc.tau[2], pc.tau[3], pc.tau[4]});
}

void constant_reproduction(Outcome& out) {
  const GapConstants pc = compute_gap_constants();
  out.require(std::abs(pc.c_off - published::kCOff) <= 1e-6, "c_off = %.15f, |diff| <= 1e-6", pc.c_off);
  out.require(std::abs(pc.lambda_star - published::kLambdaStar) <= 1e-7,
              "lambda_star = %.15f, |diff| <= 1e-7", pc.lambda_star);
  for (std::size_t j = 0; j < 5; ++j) {
    const double margin = pc.tau[j] - published::kTauLowerBounds[j];
    out.require(margin >= 1e-9, "tau_%zu = %.15f exceeds %.7f by %.3e (need >= 1e-9)", j + 1, pc.tau[j],
                published::kTauLowerBounds[j], margin);
  }
}

void piecewise_endpoints(Outcome& out) {
  const GapConstants& pc = gap_constants();
  const PiecewiseBound pw = make_piecewise_bound(pc);
  out.require(n_off_star(0.0, pw) == 0.0, "N*(0) = %.3e", n_off_star(0.0, pw));
  const double at_tau1 = n_off_star(pc.tau[0], pw);
  out.require(std::abs(at_tau1 - 1.0 / 3.0) <= 1e-10, "N*(tau_1) - 1/3 = %.3e", at_tau1 - 1.0 / 3.0);
  const double at_end = n_off_star(pw.domain_end, pw);
  out.require(std::abs(at_end - kPi / 2.0) <= 1e-10, "N*(c*_off) - pi/2 = %.3e", at_end - kPi / 2.0);
  // Left limit at tau_{j+1}: the segment starting at tau_j evaluated at its end.
  for (std::size_t j = 1; j < 4; ++j) {
    const double prev = pc.tau[j - 1];
    const double offset = 1.0 / 3.0 + static_cast<double>(j - 1) * (3.0 * kPi - 2.0) / 24.0;
    const double lam = (pc.tau[j] - prev) / (2.0 - std::sqrt(1.0 + 4.0 * prev * prev));
    const double left = offset + 0.5 * std::asin(std::min(1.0, kPi * lam));
    const double gap = std::abs(n_off_star(pc.tau[j], pw) - left);
    out.require(gap <= 1e-10, "continuity gap at tau_%zu = %.3e", j + 1, gap);
  }
}

void lemma_scans(Outcome& out) {
  const OriginScan a = scan_origin(10'000);
  out.require(a.violations == 0 && a.min_margin > 0.0,
              "h_0(s) < 0 on 10^4 points of (0, 1/pi]: min margin %.3e at s = %.6f, %zu violations",
              a.min_margin, a.worst_s, a.violations);
  const UniformEpsilonScan b = scan_uniform_epsilon(0.05, 0.8, 100);
  out.require(b.passed(), "uniform epsilon on r in [0.05, 0.8]: eps = %.6e, min h = %.3e, %zu violations",
              b.uniform_epsilon, b.min_h, b.violations);
}

void refinement_property(Outcome& out) {
  const GapConstants& pc = gap_constants();
  std::mt19937_64 rng(2023);
  std::uniform_real_distribution<double> first(0.01, pc.c_off);
  std::uniform_real_distribution<double> lam(0.02, 1.0 / kPi);
  std::uniform_int_distribution<int> steps(0, 6);

  std::vector<Partition> cases;
  while (cases.size() < 50) {
    std::vector<Ratio> pts{0.0, first(rng)};
    const int n = steps(rng);
    for (int j = 0; j < n; ++j) {
      const Ratio next = pts.back() + lam(rng) * gap_shrink(pts.back());
      if (!(next < 0.85)) break;
      pts.push_back(next);
    }
    cases.emplace_back(std::move(pts));
  }
  cases.push_back(tau_partition(pc));

  int failures = 0;
  double min_gain = INFINITY;
  for (const Partition& p : cases) {
    try {
      const Refinement r = refine(p);
      if (!(r.new_bound < r.old_bound)) ++failures;
      min_gain = std::min(min_gain, r.improvement());
    } catch (const std::logic_error&) {
      ++failures;
    }
  }
  out.require(failures == 0, "%zu partitions (50 random + tau-chain): %d failures, smallest gain %.3e",
              cases.size(), failures, min_gain);
  const Refinement tau = refine(cases.back());
  out.require(tau.new_bound < kPi / 2.0, "refined tau-chain bound pi/2 - %.3e", kPi / 2.0 - tau.new_bound);
}

void optimizer_floor(Outcome& out) {
  const OptimizationResult r4 = maximize_reach(4, kDefaultBudget);
  OptimizerConfig opt;
  opt.warm_starts = {r4.allocation};
  const OptimizationResult r8 = maximize_reach(8, kDefaultBudget, {}, opt);
  out.require(r4.certificate.reach >= published::kTauLowerBounds[4], "reach(4) = %.12f >= 0.6940725",
              r4.certificate.reach);
  out.require(r8.certificate.reach - r4.certificate.reach >= 1e-6, "reach(8) = %.12f, gain over n=4 %.3e",
              r8.certificate.reach, r8.certificate.reach - r4.certificate.reach);
  for (const auto* r : {&r4, &r8}) {
    const double again = evaluate(r->certificate.partition).bound;
    out.require(std::abs(again - r->certificate.bound) <= 1e-12 && r->certificate.admissible(),
                "n=%zu certificate re-evaluates to %.3e of recorded bound, bound = pi/2 - %.3e",
                r->certificate.partition.steps(), std::abs(again - r->certificate.bound),
                kPi / 2.0 - r->certificate.bound);
  }
}

void bound_comparison(Outcome& out) {
  const GapConstants& pc = gap_constants();
  const PiecewiseBound pw = make_piecewise_bound(pc);
  int bad = 0;
  double worst = INFINITY;
  for (int k = 1; k <= 1000; ++k) {
    const double t = pc.tau[0] + (pc.c_off - pc.tau[0]) * k / 1000.0;
    const double diff = ms_bound(0.0, t) - n_off_star(t, pw);
    worst = std::min(worst, diff);
    if (!(diff > 0.0)) ++bad;
  }
  out.require(bad == 0, "N*(t) < MS(0, t) on 1000 points of (tau_1, c_off]: min gap %.3e, %d violations",
              worst, bad);
  bad = 0;
  worst = INFINITY;
  for (int k = 1; k <= 1000; ++k) {
    const double s = k / (1000.0 * kPi);
    const double diff = step_bound(s) - ms_bound(0.0, s);
    worst = std::min(worst, diff);
    if (!(diff > 0.0)) ++bad;
  }
  out.require(bad == 0, "MS(0, s) < arcsin(pi s)/2 on 1000 points of (0, 1/pi]: min gap %.3e, %d violations",
              worst, bad);
}

void operator_lab(Outcome& out) {
  TrialConfig tc;
  tc.trials = 200;
  tc.dim_lo = 2;
  tc.dim_hi = 32;
  tc.t_lo = 0.0;
  tc.t_hi = 0.69;
  const auto reports = run_trials(tc);
  int bound_fail = 0;
  int encl_fail = 0;
  int gap_fail = 0;
  int layouts[2] = {0, 0};
  double min_slack = INFINITY;
  for (const auto& r : reports) {
    if (!r.n_off_star || !r.n_off_star->passed) ++bound_fail;
    else min_slack = std::min(min_slack, r.n_off_star->slack);
    if (!r.enclosure_ok) ++encl_fail;
    if (!r.gap_ok) ++gap_fail;
    ++layouts[r.layout == SpectralLayout::interlaced ? 1 : 0];
  }
  out.require(reports.size() >= 200 && layouts[0] > 0 && layouts[1] > 0,
              "%zu instances (%d subordinated, %d interlaced)", reports.size(), layouts[0], layouts[1]);
  out.require(bound_fail == 0, "theta <= N*(t) + 1e-9: %d violations, min slack %.3e", bound_fail, min_slack);
  out.require(encl_fail == 0, "spectral enclosure: %d failures", encl_fail);
  out.require(gap_fail == 0, "dist(omega_t, Omega_t) >= 1 - 2 delta_t - 1e-9: %d failures", gap_fail);

  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double t = 0.04 * k + 0.01;
    const OperatorInstance inst = generate(500 + k, 1, 1, t, SpectralLayout::subordinated);
    worst = std::max(worst, std::abs(measure(inst).theta - oracle::two_by_two_angle(t)));
  }
  out.require(worst <= 1e-10, "rank-one (1,1) instances vs closed form: max error %.3e", worst);
}

void path_check(Outcome& out) {
  const GapConstants& pc = gap_constants();
  const Partition part = tau_partition(pc);
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> scale(pc.tau[0], pc.tau[4]);
  std::uniform_int_distribution<int> dim(1, 16);
  int tri = 0;
  int step = 0;
  int checked_steps = 0;
  for (int k = 0; k < 20; ++k) {
    const auto layout = k % 2 ? SpectralLayout::interlaced : SpectralLayout::subordinated;
    const OperatorInstance inst = generate(rng(), dim(rng), dim(rng), scale(rng), layout);
    const PathReport p = path_measure(inst, part);
    if (!p.triangle_ok) ++tri;
    for (const auto& s : p.steps) {
      ++checked_steps;
      if (!s.ok) ++step;
    }
  }
  out.require(tri == 0, "triangle inequality over the tau-chain: %d violations in 20 instances", tri);
  out.require(step == 0, "per-step arcsin bound: %d violations in %d steps", step, checked_steps);
}

} // namespace

int main() {
  bool all = true;
  all &= run(1, "constant reproduction", 1.0, constant_reproduction);
  all &= run(2, "piecewise bound endpoints and continuity", 60.0, piecewise_endpoints);
  all &= run(3, "lemma scans (origin grid, uniform epsilon)", 10.0, lemma_scans);
  all &= run(4, "refinement strictly lowers the bound", 60.0, refinement_property);
  all &= run(5, "optimizer floor and certificate re-verification", 60.0, optimizer_floor);
  all &= run(6, "bound comparison grids", 60.0, bound_comparison);
  all &= run(7, "operator lab verification", 60.0, operator_lab);
  all &= run(8, "triangle-inequality path check", 60.0, path_check);
  std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: some criteria failed");
  return all ? 0 : 1;
}
