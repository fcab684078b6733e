#include "specgap/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail/roots.hpp"
#include "specgap/errors.hpp"

namespace specgap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSegmentStep = (3.0 * kPi - 2.0) / 24.0;
// Tolerance for the "equal below tau_1" check in compare_bounds.
constexpr double kMatchTolerance = 1e-9;

} // namespace

Ratio solve_c_off(const QuadratureConfig& cfg, double root_tol) {
  const auto f = [&](double x) { return gap_integral(0.0, x, cfg) - 1.0; };
  return detail::bracketed_root(f, 0.5, 0.8, f(0.5), f(0.8), root_tol, "solve_c_off");
}

Ratio solve_lambda0(const QuadratureConfig& cfg, double root_tol) {
  const auto f = [&](double x) { return ms_bound(0.0, x, cfg) - 1.0 / 3.0; };
  return detail::bracketed_root(f, 0.1, 0.3, f(0.1), f(0.3), root_tol, "solve_lambda0");
}

Ratio lambda_star() { return std::sin((3.0 * kPi - 2.0) / 12.0) / kPi; }

std::array<Ratio, 5> tau_chain(Ratio lambda0, Ratio lambda_star) {
  if (!(lambda0 >= 0.0) || !(lambda_star >= 0.0)) {
    throw DomainError("tau_chain: negative input");
  }
  std::array<Ratio, 5> tau{};
  tau[0] = lambda0;
  for (std::size_t j = 0; j + 1 < tau.size(); ++j) {
    if (!(tau[j] < kEndpointCap)) throw DomainError("tau_chain: supporting point reached sqrt(3)/2");
    tau[j + 1] = tau[j] + lambda_star * gap_shrink(tau[j]);
  }
  if (!(tau.back() < kEndpointCap)) throw DomainError("tau_chain: supporting point reached sqrt(3)/2");
  return tau;
}

GapConstants compute_gap_constants(const QuadratureConfig& cfg, double root_tol) {
  GapConstants pc;
  pc.c_off = solve_c_off(cfg, root_tol);
  pc.lambda0 = solve_lambda0(cfg, root_tol);
  pc.lambda_star = lambda_star();
  pc.tau = tau_chain(pc.lambda0, pc.lambda_star);
  pc.c_off_star = pc.tau.back();
  return pc;
}

const GapConstants& gap_constants() {
  static const GapConstants constants = compute_gap_constants();
  return constants;
}

PiecewiseBound make_piecewise_bound(const GapConstants& constants) {
  PiecewiseBound pw;
  std::copy_n(constants.tau.begin(), 4, pw.tau.begin());
  pw.lambda_star = constants.lambda_star;
  for (std::size_t j = 0; j < 4; ++j) {
    pw.segment_offsets[j] = 1.0 / 3.0 + static_cast<double>(j) * kSegmentStep;
  }
  pw.domain_end = constants.c_off_star;
  return pw;
}

Angle n_off_star(Ratio t, const PiecewiseBound& pw, const QuadratureConfig& cfg) {
  if (!(t >= 0.0) || !(t <= pw.domain_end)) {
    throw DomainError("n_off_star: t outside [0, c*_off]");
  }
  if (t <= pw.tau[0]) return ms_bound(0.0, t, cfg);
  // Segment j covers (tau_j, tau_{j+1}].
  std::size_t j = 0;
  while (j + 1 < pw.tau.size() && t > pw.tau[j + 1]) ++j;
  const double arg = kPi * (t - pw.tau[j]) / gap_shrink(pw.tau[j]);
  return pw.segment_offsets[j] + 0.5 * std::asin(std::min(1.0, arg));
}

std::vector<BoundCurvePoint> compare_bounds(double grid_step, const GapConstants& constants,
                                            const QuadratureConfig& cfg) {
  if (!(grid_step > 0.0)) throw DomainError("compare_bounds: grid_step must be > 0");
  const PiecewiseBound pw = make_piecewise_bound(constants);
  const Ratio tau1 = constants.tau[0];

  std::vector<Ratio> grid;
  for (std::size_t k = 0;; ++k) {
    const Ratio t = grid_step * static_cast<double>(k);
    if (t >= constants.c_off) break;
    grid.push_back(t);
  }
  grid.push_back(constants.c_off);

  std::vector<BoundCurvePoint> points;
  points.reserve(grid.size());
  for (const Ratio t : grid) {
    BoundCurvePoint p;
    p.t = t;
    p.n_off_star = n_off_star(t, pw, cfg);
    p.ms_bound = ms_bound(0.0, t, cfg);
    if (t <= kMaxStepRatio) p.general_bound = step_bound(t);
    p.violation = t <= tau1 ? std::abs(p.n_off_star - p.ms_bound) > kMatchTolerance
                            : !(p.ms_bound - p.n_off_star > 0.0);
    points.push_back(p);
  }
  return points;
}

} // namespace specgap
