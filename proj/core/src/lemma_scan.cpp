#include "specgap/lemma_scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "specgap/errors.hpp"

namespace specgap {

namespace {

// Largest e on the sampled grid e_k = e_max k / samples with h > 0 for all
// samples up to it; zero when the first sample already fails.
Ratio sampled_epsilon(Ratio r, Ratio e_max, std::size_t samples, const QuadratureConfig& cfg) {
  for (std::size_t k = 1; k <= samples; ++k) {
    const Ratio e = e_max * static_cast<double>(k) / static_cast<double>(samples);
    if (!(lemma_h(r, r + e, cfg) > 0.0)) {
      return e_max * static_cast<double>(k - 1) / static_cast<double>(samples);
    }
  }
  return e_max;
}

} // namespace

OriginScan scan_origin(std::size_t points, const QuadratureConfig& cfg) {
  if (points == 0) throw DomainError("scan_origin: need at least one grid point");
  OriginScan scan;
  scan.points = points;
  scan.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= points; ++k) {
    Ratio s = static_cast<double>(k) / (std::numbers::pi * static_cast<double>(points));
    if (k == points) s = kMaxStepRatio;
    const double margin = -lemma_h(0.0, s, cfg);
    if (!(margin > 0.0)) ++scan.violations;
    if (margin < scan.min_margin) {
      scan.min_margin = margin;
      scan.worst_s = s;
    }
  }
  return scan;
}

UniformEpsilonScan scan_uniform_epsilon(Ratio r_lo, Ratio r_hi, std::size_t r_points,
                                        std::size_t samples, const QuadratureConfig& cfg) {
  if (!(r_lo > 0.0) || !(r_hi >= r_lo) || !(r_hi < kEndpointCap)) {
    throw DomainError("scan_uniform_epsilon: need 0 < r_lo <= r_hi < sqrt(3)/2");
  }
  if (r_points == 0 || samples == 0) {
    throw DomainError("scan_uniform_epsilon: grid sizes must be positive");
  }
  UniformEpsilonScan scan;
  scan.r_lo = r_lo;
  scan.r_hi = r_hi;
  scan.r_points = r_points;
  scan.samples = samples;
  scan.uniform_epsilon = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < r_points; ++i) {
    const Ratio r = r_points == 1 ? r_lo
                                  : r_lo + (r_hi - r_lo) * static_cast<double>(i) /
                                               static_cast<double>(r_points - 1);
    Ratio e_max = std::min(gap_shrink(r) / std::numbers::pi, kEndpointCap - r);
    Ratio e = 0.0;
    // Shrink the search window until the first sample is resolved.
    for (int attempt = 0; attempt < 12 && e == 0.0; ++attempt, e_max *= 0.25) {
      e = sampled_epsilon(r, e_max, samples, cfg);
    }
    scan.r_values.push_back(r);
    scan.epsilon_per_r.push_back(e);
    scan.uniform_epsilon = std::min(scan.uniform_epsilon, e);
  }

  scan.min_h = std::numeric_limits<double>::infinity();
  if (!(scan.uniform_epsilon > 0.0)) {
    scan.uniform_epsilon = 0.0;
    scan.violations = r_points;
    return scan;
  }
  for (const Ratio r : scan.r_values) {
    for (std::size_t k = 1; k <= samples; ++k) {
      const Ratio e = scan.uniform_epsilon * static_cast<double>(k) / static_cast<double>(samples);
      const double h = lemma_h(r, r + e, cfg);
      if (!(h > 0.0)) ++scan.violations;
      if (h < scan.min_h) {
        scan.min_h = h;
        scan.worst_r = r;
      }
    }
  }
  return scan;
}

} // namespace specgap
