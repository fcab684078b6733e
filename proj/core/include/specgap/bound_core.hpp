#pragma once

// Scalar building blocks for rotation bounds of spectral subspaces under
// off-diagonal perturbations. Every quantity is normalized by the spectral
// gap d, so a perturbation of norm ||V|| enters as the ratio t = ||V|| / d.

#include <cstddef>
#include <numbers>
#include <vector>

namespace specgap {

/// Dimensionless ratio ||V||/d, a step ratio lambda, or a supporting point tau.
using Ratio = double;
/// Angle in radians.
using Angle = double;

/// Gap non-closing threshold sqrt(3)/2.
inline constexpr Ratio kGapLimit = 0.86602540378443864676;
/// Largest admissible integration end point; the integrand blows up at kGapLimit.
inline constexpr Ratio kEndpointCap = kGapLimit - 1e-9;
/// Largest step ratio for which the single-step arcsin bound applies.
inline constexpr Ratio kMaxStepRatio = std::numbers::inv_pi;

struct QuadratureConfig {
  double abs_tolerance = 1e-12;
  /// Cap on the number of intervals the adaptive bisection may hold.
  int max_subdivisions = 1 << 15;

  /// Throws DomainError unless abs_tolerance > 0 and max_subdivisions >= 1.
  void validate() const;
};

/// Normalized enclosure radius (sqrt(1+4t^2) - 1)/2, evaluated in a
/// cancellation-free algebraic form. Domain [0, sqrt(3)/2].
[[nodiscard]] Ratio delta(Ratio t);

/// Lower bound 1 - 2 delta(t) = 2 - sqrt(1+4t^2) on the normalized distance
/// between the two perturbed spectral components.
[[nodiscard]] Ratio gap_shrink(Ratio t);

/// delta_V / d for t = ||V||/d, i.e. t tan(arctan(2t)/2). Same value as delta().
[[nodiscard]] Ratio enclosure_radius(Ratio t);

/// The integrand 1 / (2 - sqrt(1+4 tau^2)); no domain checks.
[[nodiscard]] double gap_integrand(double tau) noexcept;

/// Integral of 1/gap_shrink over [a, b], 0 <= a <= b <= kEndpointCap.
[[nodiscard]] double gap_integral(Ratio a, Ratio b, const QuadratureConfig& cfg = {});

/// Continuous-path angle bound (pi/2) * gap_integral(s, t).
[[nodiscard]] Angle ms_bound(Ratio s, Ratio t, const QuadratureConfig& cfg = {});

/// Inverse of t -> ms_bound(0, t): the end point whose integral bound equals
/// `angle`. Bracketed root solve on [0, kEndpointCap].
[[nodiscard]] Ratio inverse_ms_bound(Angle angle, const QuadratureConfig& cfg = {},
                                     double root_tol = 1e-12);

/// Single-step bound arcsin(pi lambda)/2, valid for 0 <= lambda <= 1/pi.
[[nodiscard]] Angle step_bound(Ratio lambda);

/// Normalized step (t_hi - t_lo) / gap_shrink(t_lo).
[[nodiscard]] Ratio step_ratio(Ratio t_lo, Ratio t_hi);

/// h_r(s): integral bound on [r, s] minus the single-step bound for the same step.
[[nodiscard]] double lemma_h(Ratio r, Ratio s, const QuadratureConfig& cfg = {});

/// Closed-form derivative of lemma_h with respect to s.
[[nodiscard]] double lemma_h_prime(Ratio r, Ratio s);

/// 8r (2/sqrt(1+4r^2) - 1). Positive on (0, sqrt(3)/2), which is what makes
/// h_r increase right after r.
[[nodiscard]] double iteration_margin(Ratio r);

/// Cumulative gap_integral(0, x) tabulated on a uniform grid, so that values
/// and inverses are obtained from one short-interval integral per query.
/// Immutable after construction.
class GapIntegralTable {
public:
  explicit GapIntegralTable(const QuadratureConfig& cfg = {}, std::size_t cells = 128);

  /// gap_integral(0, x).
  [[nodiscard]] double value(Ratio x) const;
  /// Unique x in [0, kEndpointCap] with gap_integral(0, x) = target.
  [[nodiscard]] Ratio inverse(double target, double root_tol = 1e-13) const;

  [[nodiscard]] const QuadratureConfig& config() const noexcept { return cfg_; }

private:
  QuadratureConfig cfg_;
  double step_;
  std::vector<double> nodes_;
  std::vector<double> cumulative_;
};

} // namespace specgap
