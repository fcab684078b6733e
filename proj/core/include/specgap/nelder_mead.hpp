#pragma once

#include <functional>
#include <span>
#include <vector>

namespace specgap {

struct NelderMeadOptions {
  int max_evaluations = 20000;
  /// Stop when the spread of simplex values drops below this.
  double f_tolerance = 1e-15;
  /// ... and the simplex diameter (max-norm) below this.
  double x_tolerance = 1e-12;
  double initial_step = 0.05;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free downhill simplex minimization. Constraints are the caller's
/// business: the objective sees raw simplex vertices and is expected to
/// project them onto the feasible set itself.
[[nodiscard]] NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                                           const NelderMeadOptions& opts = {});

} // namespace specgap
