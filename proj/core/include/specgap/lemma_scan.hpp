#pragma once

// Grid scans checking, numerically, that the integral bound beats the single
// step bound from the origin, and that the order flips right after any r > 0.

#include <cstddef>
#include <vector>

#include "specgap/bound_core.hpp"

namespace specgap {

struct OriginScan {
  std::size_t points = 0;
  double min_margin = 0.0;  ///< min over the grid of -lemma_h(0, s)
  Ratio worst_s = 0.0;
  std::size_t violations = 0;

  [[nodiscard]] bool passed() const noexcept { return violations == 0 && min_margin > 0.0; }
};

/// lemma_h(0, s) on s_k = k / (pi * points), k = 1..points.
[[nodiscard]] OriginScan scan_origin(std::size_t points, const QuadratureConfig& cfg = {});

struct UniformEpsilonScan {
  Ratio r_lo = 0.0;
  Ratio r_hi = 0.0;
  std::size_t r_points = 0;
  std::size_t samples = 0;
  std::vector<Ratio> r_values;
  std::vector<Ratio> epsilon_per_r;  ///< largest sampled epsilon found for each r
  Ratio uniform_epsilon = 0.0;       ///< min of epsilon_per_r
  double min_h = 0.0;                ///< min of lemma_h(r, r + e) over the verification pass
  Ratio worst_r = 0.0;
  std::size_t violations = 0;

  [[nodiscard]] bool passed() const noexcept {
    return uniform_epsilon > 0.0 && violations == 0 && min_h > 0.0;
  }
};

/// For r on a uniform grid of [r_lo, r_hi], locates epsilon with lemma_h(r, r + e) > 0
/// at `samples` equally spaced e in (0, epsilon], then re-verifies the smallest such
/// epsilon for every r. The reported epsilons are sampled, not maximal.
[[nodiscard]] UniformEpsilonScan scan_uniform_epsilon(Ratio r_lo, Ratio r_hi, std::size_t r_points,
                                                      std::size_t samples = 64,
                                                      const QuadratureConfig& cfg = {});

} // namespace specgap
