#pragma once

// Finite-dimensional test bed: a symmetric A with spectrum sigma u Sigma at
// distance d = 1, plus an off-diagonal V = [[0, W], [W^T, 0]] in the spectral
// basis of A, conjugated by a random orthogonal matrix. Angles between the
// unperturbed and perturbed spectral subspaces are computed exactly and held
// against the analytic bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specgap/bound_core.hpp"
#include "specgap/partition_optimizer.hpp"

namespace specgap {

enum class SpectralLayout {
  subordinated,  ///< sigma in [-3, 0], Sigma in [1, 4]
  interlaced,    ///< sigma in [0, 1] inside a gap of Sigma in [-3, -1] u [2, 4]
};

[[nodiscard]] const char* to_string(SpectralLayout layout) noexcept;

struct OperatorInstance {
  std::uint64_t requested_seed = 0;
  std::uint64_t seed = 0;  ///< seed of the accepted draw
  SpectralLayout layout = SpectralLayout::subordinated;
  int dim_sigma = 0;
  int dim_Sigma = 0;
  std::vector<double> eigs_sigma;
  std::vector<double> eigs_Sigma;
  double d = 1.0;
  Eigen::MatrixXd W;      ///< dim_sigma x dim_Sigma off-diagonal block, ||W|| = t d
  Ratio t = 0.0;
  Eigen::MatrixXd basis;  ///< orthogonal; columns 0..dim_sigma-1 span Ran E_A(sigma)
  std::vector<std::string> rejections;

  [[nodiscard]] int dim() const noexcept { return dim_sigma + dim_Sigma; }
  [[nodiscard]] Eigen::MatrixXd A() const;
  [[nodiscard]] Eigen::MatrixXd V() const;
  /// E_A(sigma).
  [[nodiscard]] Eigen::MatrixXd sigma_projector() const;
  /// B_s = A + s d V / ||V||; equals A when t = 0.
  [[nodiscard]] Eigen::MatrixXd B(Ratio s) const;
  /// Distance from x to the nearest point of sigma.
  [[nodiscard]] double dist_to_sigma(double x) const;
  [[nodiscard]] double dist_to_Sigma(double x) const;
};

/// Deterministic in all arguments. Draws that put a perturbed eigenvalue within
/// 1e-9 of the d/2 classification boundary are redrawn from a shifted seed and
/// the rejection is recorded in the instance.
[[nodiscard]] OperatorInstance generate(std::uint64_t seed, int dim_sigma, int dim_Sigma, Ratio t,
                                        SpectralLayout layout, bool rotate = true);

struct AngleMeasurement {
  Angle theta = 0.0;          ///< arcsin ||P_0 - P_t||
  double projector_gap = 0.0; ///< ||P_0 - P_t||
  std::vector<double> perturbed_spectrum;
  std::vector<int> omega;     ///< indices classified near sigma
  std::vector<int> Omega;
  bool enclosure_ok = false;
  bool rank_ok = false;       ///< rank P_t == dim_sigma
  double component_distance = 0.0;  ///< dist(omega_t, Omega_t)
};

/// Exact angle between Ran E_A(sigma) and the spectral subspace of A + V for
/// the open d/2-neighbourhood of sigma. Throws BoundaryError on ambiguous
/// classification.
[[nodiscard]] AngleMeasurement measure(const OperatorInstance& instance);

/// Same as measure() but for B_s on the straight path from A to A + V.
[[nodiscard]] AngleMeasurement measure_at(const OperatorInstance& instance, Ratio s);

struct BoundCheck {
  Angle bound = 0.0;
  double slack = 0.0;  ///< bound - theta
  bool passed = false;
};

struct BoundsReport {
  std::uint64_t seed = 0;
  int dim_sigma = 0;
  int dim_Sigma = 0;
  SpectralLayout layout = SpectralLayout::subordinated;
  Ratio t = 0.0;
  Angle theta = 0.0;
  std::optional<BoundCheck> n_off_star;   ///< t <= c*_off
  std::optional<BoundCheck> ms_bound;     ///< t within quadrature reach
  std::optional<BoundCheck> general_bound; ///< t <= 1/pi
  bool enclosure_ok = false;
  bool gap_ok = false;                    ///< dist(omega, Omega) >= gap_shrink(t) d - 1e-9
  bool rank_ok = false;
  double component_distance = 0.0;

  [[nodiscard]] bool passed() const noexcept;
};

/// Angles are allowed to exceed a bound by this much before a check fails.
inline constexpr double kBoundTolerance = 1e-9;

[[nodiscard]] BoundsReport verify_bounds(const OperatorInstance& instance,
                                         const QuadratureConfig& cfg = {});

struct PathStep {
  Ratio from = 0.0;
  Ratio to = 0.0;
  Angle angle = 0.0;  ///< arcsin ||P_from - P_to||
  Ratio lambda = 0.0;
  std::optional<Angle> step_bound;  ///< arcsin(pi lambda)/2 when lambda <= 1/pi
  Angle ms_bound = 0.0;             ///< integral bound over [from, to]
  bool ok = false;
};

struct PathReport {
  std::vector<PathStep> steps;
  Angle total = 0.0;
  Angle theta = 0.0;
  bool triangle_ok = false;
  bool steps_ok = false;

  [[nodiscard]] bool passed() const noexcept { return triangle_ok && steps_ok; }
};

/// Measures the angle between P at consecutive partition points. Points at or
/// beyond instance.t are dropped and instance.t is appended as the last point.
/// Requires t > 0.
[[nodiscard]] PathReport path_measure(const OperatorInstance& instance, const Partition& partition,
                                      const QuadratureConfig& cfg = {});

struct IncrementBlock {
  double diagonal_block_norm = 0.0;  ///< ||E_{B_r}(omega_r) (B_s - B_r) E_{B_r}(omega_r)||
  double increment_norm = 0.0;       ///< ||B_s - B_r||
};

/// How far the increment B_s - B_r is from being off-diagonal for the spectral
/// splitting of B_r.
[[nodiscard]] IncrementBlock increment_block(const OperatorInstance& instance, Ratio r, Ratio s);

enum class LayoutChoice { subordinated, interlaced, both };

struct TrialConfig {
  std::size_t trials = 200;
  int dim_lo = 2;
  int dim_hi = 32;
  Ratio t_lo = 0.0;
  Ratio t_hi = 0.69;
  std::uint64_t seed = 0;
  LayoutChoice layouts = LayoutChoice::both;
  bool rotate = true;
};

/// Runs independent trials; results are sorted by instance seed.
[[nodiscard]] std::vector<BoundsReport> run_trials(const TrialConfig& config,
                                                   const QuadratureConfig& cfg = {});

} // namespace specgap
