#include "specgap/bound_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "detail/gauss_kronrod.hpp"
#include "detail/roots.hpp"
#include "specgap/errors.hpp"

namespace specgap {

namespace {

constexpr double kPi = std::numbers::pi;
// Table nodes stop short of the singularity; beyond this point values are
// integrated directly.
constexpr double kTableEnd = 0.85;
// Step ratios built as (r + e - r)/g with e = g/pi may overshoot 1/pi by rounding.
constexpr double kStepRatioSlack = 1.0 + 1e-14;
constexpr double kSqrt3 = std::numbers::sqrt3;

// 2 - sqrt(1+4t^2). Near sqrt(3)/2 the difference cancels, so there it is
// evaluated as (sqrt3 - 2t)(sqrt3 + 2t) / (2 + sqrt(1+4t^2)), whose first factor
// is exact; the plain form keeps gap_shrink(0) == 1 exactly.
double shrink(double t) noexcept {
  const double root = std::sqrt(1.0 + 4.0 * t * t);
  if (t < 0.75) return 2.0 - root;
  return (kSqrt3 - 2.0 * t) * (kSqrt3 + 2.0 * t) / (2.0 + root);
}

void require_ratio(Ratio t, Ratio hi, const char* what) {
  if (!(t >= 0.0) || !(t <= hi)) {
    throw DomainError(std::string(what) + ": argument " + std::to_string(t) +
                      " outside [0, " + std::to_string(hi) + "]");
  }
}

double integrate(double a, double b, const QuadratureConfig& cfg) {
  const detail::QuadratureResult r =
      detail::integrate_adaptive(gap_integrand, a, b, cfg.abs_tolerance, cfg.max_subdivisions);
  if (!r.converged) {
    char err[32];
    std::snprintf(err, sizeof err, "%.3e", r.error);
    throw ConvergenceError(std::string("gap_integral: error estimate ") + err +
                           " above tolerance on [" + std::to_string(a) + ", " + std::to_string(b) +
                           "] after " + std::to_string(r.intervals) + " subdivisions");
  }
  return r.value;
}

} // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tolerance > 0.0)) throw DomainError("QuadratureConfig: abs_tolerance must be > 0");
  if (max_subdivisions < 1) throw DomainError("QuadratureConfig: max_subdivisions must be >= 1");
}

Ratio delta(Ratio t) {
  require_ratio(t, kGapLimit, "delta");
  // (sqrt(1+4t^2) - 1)/2 rationalized; no cancellation for small t.
  const double value = 2.0 * t * t / (std::sqrt(1.0 + 4.0 * t * t) + 1.0);
  return std::min(value, 0.5);
}

Ratio gap_shrink(Ratio t) {
  require_ratio(t, kGapLimit, "gap_shrink");
  return std::max(0.0, shrink(t));
}

Ratio enclosure_radius(Ratio t) { return delta(t); }

double gap_integrand(double tau) noexcept { return 1.0 / shrink(tau); }

double gap_integral(Ratio a, Ratio b, const QuadratureConfig& cfg) {
  cfg.validate();
  require_ratio(b, kEndpointCap, "gap_integral");
  require_ratio(a, b, "gap_integral");
  return integrate(a, b, cfg);
}

Angle ms_bound(Ratio s, Ratio t, const QuadratureConfig& cfg) {
  return 0.5 * kPi * gap_integral(s, t, cfg);
}

Ratio inverse_ms_bound(Angle angle, const QuadratureConfig& cfg, double root_tol) {
  if (!(angle >= 0.0)) throw DomainError("inverse_ms_bound: negative angle");
  if (angle == 0.0) return 0.0;
  const double target = angle / (0.5 * kPi);
  const auto f = [&](double x) { return gap_integral(0.0, x, cfg) - target; };
  const double f_table_end = f(kTableEnd);
  if (f_table_end >= 0.0) {
    return detail::bracketed_root(f, 0.0, kTableEnd, -target, f_table_end, root_tol, "inverse_ms_bound");
  }
  return detail::bracketed_root(f, kTableEnd, kEndpointCap, f_table_end, f(kEndpointCap), root_tol,
                        "inverse_ms_bound");
}

Angle step_bound(Ratio lambda) {
  if (!(lambda >= 0.0) || lambda > kMaxStepRatio * kStepRatioSlack) {
    throw DomainError("step_bound: step ratio " + std::to_string(lambda) +
                      " outside [0, 1/pi]");
  }
  return 0.5 * std::asin(std::min(1.0, kPi * lambda));
}

Ratio step_ratio(Ratio t_lo, Ratio t_hi) {
  require_ratio(t_hi, kGapLimit, "step_ratio");
  require_ratio(t_lo, t_hi, "step_ratio");
  if (t_hi >= kGapLimit) throw DomainError("step_ratio: end point must be < sqrt(3)/2");
  return (t_hi - t_lo) / gap_shrink(t_lo);
}

double lemma_h(Ratio r, Ratio s, const QuadratureConfig& cfg) {
  const Ratio lambda = step_ratio(r, s);
  if (lambda > kMaxStepRatio * kStepRatioSlack) {
    throw DomainError("lemma_h: arcsin argument exceeds 1");
  }
  return ms_bound(r, s, cfg) - step_bound(lambda);
}

double lemma_h_prime(Ratio r, Ratio s) {
  require_ratio(s, kEndpointCap, "lemma_h_prime");
  require_ratio(r, s, "lemma_h_prime");
  const double g_r = gap_shrink(r);
  const double radicand = g_r * g_r - kPi * kPi * (s - r) * (s - r);
  if (!(radicand > 0.0)) throw DomainError("lemma_h_prime: non-positive radicand");
  return 0.5 * kPi * (1.0 / gap_shrink(s) - 1.0 / std::sqrt(radicand));
}

double iteration_margin(Ratio r) {
  // kGapLimit is the double just below sqrt(3)/2, so it is inside the domain.
  require_ratio(r, kGapLimit, "iteration_margin");
  return 8.0 * r * std::max(0.0, shrink(r)) / std::sqrt(1.0 + 4.0 * r * r);
}

GapIntegralTable::GapIntegralTable(const QuadratureConfig& cfg, std::size_t cells)
    : cfg_(cfg), step_(kTableEnd / static_cast<double>(std::max<std::size_t>(cells, 1))) {
  cfg_.validate();
  const std::size_t n = std::max<std::size_t>(cells, 1);
  nodes_.resize(n + 1);
  cumulative_.resize(n + 1);
  nodes_[0] = 0.0;
  cumulative_[0] = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    nodes_[k] = (k == n) ? kTableEnd : step_ * static_cast<double>(k);
    cumulative_[k] = cumulative_[k - 1] + integrate(nodes_[k - 1], nodes_[k], cfg_);
  }
}

double GapIntegralTable::value(Ratio x) const {
  require_ratio(x, kEndpointCap, "GapIntegralTable::value");
  if (x >= kTableEnd) return cumulative_.back() + integrate(kTableEnd, x, cfg_);
  const auto k = std::min(static_cast<std::size_t>(x / step_), nodes_.size() - 2);
  return cumulative_[k] + integrate(nodes_[k], x, cfg_);
}

Ratio GapIntegralTable::inverse(double target, double root_tol) const {
  if (!(target >= 0.0)) throw DomainError("GapIntegralTable::inverse: negative target");
  if (target == 0.0) return 0.0;
  const auto f = [&](double x) { return value(x) - target; };
  if (target > cumulative_.back()) {
    return detail::bracketed_root(f, kTableEnd, kEndpointCap, cumulative_.back() - target, f(kEndpointCap),
                          root_tol, "GapIntegralTable::inverse");
  }
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), target);
  const auto k = static_cast<std::size_t>(it - cumulative_.begin());
  return detail::bracketed_root(f, nodes_[k - 1], nodes_[k], cumulative_[k - 1] - target,
                        cumulative_[k] - target, root_tol, "GapIntegralTable::inverse");
}

} // namespace specgap
