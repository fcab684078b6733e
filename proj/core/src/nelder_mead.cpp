#include "specgap/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace specgap {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

} // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  NelderMeadResult result;
  if (n == 0) {
    result.value = f(x0);
    result.x = std::move(x0);
    result.evaluations = 1;
    result.converged = true;
    return result;
  }

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opts.initial_step;
  std::vector<double> values(n + 1);
  int evaluations = 0;
  const auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    return f(x);
  };
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  const auto along = [&](double coeff, const std::vector<double>& from, std::vector<double>& out) {
    for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + coeff * (from[k] - centroid[k]);
  };

  bool converged = false;
  while (evaluations < opts.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return values[a] < values[b] || (values[a] == values[b] && simplex[a] < simplex[b]);
    });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
      }
    }
    if (values[worst] - values[best] <= opts.f_tolerance && diameter <= opts.x_tolerance) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    along(-kReflect, simplex[worst], trial);
    const double f_reflect = eval(trial);
    if (f_reflect < values[best]) {
      along(-kExpand, simplex[worst], trial2);
      const double f_expand = eval(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }
    // Outside contraction when the reflection helped a little, inside otherwise.
    const bool outside = f_reflect < values[worst];
    along(outside ? -kContract : kContract, simplex[worst], trial2);
    const double f_contract = eval(trial2);
    if (f_contract < (outside ? f_reflect : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = f_contract;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) {
        simplex[i][k] = simplex[best][k] + kShrink * (simplex[i][k] - simplex[best][k]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(best_it - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  result.evaluations = evaluations;
  result.converged = converged;
  return result;
}

} // namespace specgap
