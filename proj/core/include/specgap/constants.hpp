#pragma once

// Published constants for off-diagonal perturbations and the piecewise angle
// bound built on the five supporting points tau_1..tau_5.

#include <array>
#include <optional>
#include <vector>

#include "specgap/bound_core.hpp"

namespace specgap {

/// Published decimals. The tau entries are truncated lower bounds; c_off and
/// lambda_star are truncated approximations.
namespace published {
inline constexpr Ratio kCOff = 0.6759893;
inline constexpr Ratio kLambdaStar = 0.1846204;
inline constexpr std::array<Ratio, 5> kTauLowerBounds = {0.2062031, 0.3757396, 0.5140409,
                                                         0.6184976, 0.6940725};
/// Constant for general (not necessarily off-diagonal) perturbations.
inline constexpr Ratio kCCrit = 0.4548;
/// Earlier lower bound for off-diagonal perturbations.
inline constexpr Ratio kAm14Bound = 0.692834;
} // namespace published

/// A published strict lower bound is reproduced when computed - published >= this.
inline constexpr double kStrictMargin = 1e-10;

struct ReferenceValues {
  Ratio c_crit = published::kCCrit;
  Ratio am14_bound = published::kAm14Bound;
};

struct GapConstants {
  Ratio c_off = 0.0;
  Ratio lambda0 = 0.0;
  Ratio lambda_star = 0.0;
  std::array<Ratio, 5> tau{};
  Ratio c_off_star = 0.0;
  ReferenceValues reference;
};

/// Root of gap_integral(0, x) = 1, bracketed on (0.5, 0.8).
[[nodiscard]] Ratio solve_c_off(const QuadratureConfig& cfg = {}, double root_tol = 1e-12);

/// Root of ms_bound(0, x) = 1/3, bracketed on (0.1, 0.3).
[[nodiscard]] Ratio solve_lambda0(const QuadratureConfig& cfg = {}, double root_tol = 1e-12);

/// sin((3 pi - 2)/12) / pi, the common step ratio with 2 arcsin(pi lambda) = pi/2 - 1/3.
[[nodiscard]] Ratio lambda_star();

/// tau_1 = lambda0, tau_{j+1} = tau_j + lambda_star * gap_shrink(tau_j).
[[nodiscard]] std::array<Ratio, 5> tau_chain(Ratio lambda0, Ratio lambda_star);

[[nodiscard]] GapConstants compute_gap_constants(const QuadratureConfig& cfg = {},
                                                     double root_tol = 1e-12);

/// compute_gap_constants() with default tolerances, computed once.
[[nodiscard]] const GapConstants& gap_constants();

struct PiecewiseBound {
  std::array<Ratio, 4> tau{};             ///< tau_1..tau_4
  Ratio lambda_star = 0.0;
  std::array<Angle, 4> segment_offsets{}; ///< 1/3 + (j-1)(3 pi - 2)/24
  Ratio domain_end = 0.0;                 ///< c*_off = tau_5
};

[[nodiscard]] PiecewiseBound make_piecewise_bound(const GapConstants& constants);

/// Piecewise bound N*_off(t): the integral bound up to tau_1, then one arcsin
/// step from the last supporting point below t. Domain [0, domain_end].
[[nodiscard]] Angle n_off_star(Ratio t, const PiecewiseBound& pw, const QuadratureConfig& cfg = {});

struct BoundCurvePoint {
  Ratio t = 0.0;
  Angle n_off_star = 0.0;
  Angle ms_bound = 0.0;
  std::optional<Angle> general_bound;  ///< arcsin(pi t)/2, only for t <= 1/pi
  bool violation = false;
};

/// Evaluates N*_off, the integral bound and the general bound on a grid of
/// [0, c_off] with the given step (c_off itself always included). Flags points
/// where N*_off fails to match the integral bound (t <= tau_1) or fails to be
/// strictly below it (t > tau_1).
[[nodiscard]] std::vector<BoundCurvePoint> compare_bounds(double grid_step,
                                                          const GapConstants& constants,
                                                          const QuadratureConfig& cfg = {});

} // namespace specgap
