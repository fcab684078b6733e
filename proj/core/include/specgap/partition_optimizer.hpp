#pragma once

// Iterated angle bounds along a partition 0 = t_0 < t_1 < ... < t_{n+1} = t:
// the first step is bounded by the integral bound, every later step j by
// arcsin(pi lambda_j)/2 with lambda_j = (t_{j+1} - t_j) / gap_shrink(t_j).
// A partition whose bound stays below pi/2 certifies that the maximal angle
// stays below pi/2 for every perturbation with ||V||/d <= t.

#include <cstdint>
#include <optional>
#include <vector>

#include "specgap/bound_core.hpp"
#include "specgap/nelder_mead.hpp"

namespace specgap {

/// Budgets at or below this are treated as "strictly less than pi/2".
inline constexpr Angle kDefaultBudget = std::numbers::pi / 2.0 - 1e-9;

class Partition {
public:
  /// Throws DomainError unless points start at 0, increase strictly, contain at
  /// least one positive point and end at or below kEndpointCap.
  explicit Partition(std::vector<Ratio> points);

  /// The partition 0 < t.
  [[nodiscard]] static Partition trivial(Ratio t);

  [[nodiscard]] const std::vector<Ratio>& points() const noexcept { return points_; }
  /// Number n of arcsin steps after the first (integral) step.
  [[nodiscard]] std::size_t steps() const noexcept { return points_.size() - 2; }
  [[nodiscard]] Ratio first() const noexcept { return points_[1]; }
  [[nodiscard]] Ratio reach() const noexcept { return points_.back(); }
  /// lambda_0..lambda_n; lambda_0 equals first().
  [[nodiscard]] std::vector<Ratio> lambdas() const;

  friend bool operator==(const Partition&, const Partition&) = default;

private:
  std::vector<Ratio> points_;
};

struct BoundCertificate {
  Partition partition;
  Angle bound = 0.0;
  /// per_step[0] is the integral term, per_step[j] = arcsin(pi lambda_j)/2.
  std::vector<Angle> per_step;
  Ratio reach = 0.0;

  /// Admissible as a witness that the angle stays below pi/2 up to `reach`.
  [[nodiscard]] bool admissible() const noexcept { return bound <= kDefaultBudget; }
};

/// Integral first term plus arcsin steps. Throws ValidityError if some
/// lambda_j > 1/pi (j >= 1) or t_1 > c_off.
[[nodiscard]] BoundCertificate evaluate(const Partition& partition, const QuadratureConfig& cfg = {});

/// Same partition with the first term replaced by arcsin(pi t_1)/2; requires t_1 <= 1/pi.
[[nodiscard]] Angle arcsin_variant_bound(const Partition& partition);

struct Refinement {
  Partition partition;
  Ratio inserted = 0.0;
  Angle old_bound = 0.0;
  Angle new_bound = 0.0;

  [[nodiscard]] Angle improvement() const noexcept { return old_bound - new_bound; }
};

/// Inserts a point r in (0, t_1) that strictly lowers the bound: best of a
/// 64-point grid followed by golden-section search. Throws std::logic_error if
/// no improving point is found.
[[nodiscard]] Refinement refine(const Partition& partition, const QuadratureConfig& cfg = {});

struct BudgetAllocation {
  Angle lambda0_budget = 0.0;        ///< angle spent on the integral first step
  std::vector<Angle> step_budgets;   ///< theta_j in [0, pi/4], lambda_j = sin(2 theta_j)/pi

  [[nodiscard]] Angle total() const noexcept;
  /// Throws DomainError on a negative budget, lambda0_budget > pi/2 or theta_j > pi/4.
  void validate() const;

  friend auto operator<=>(const BudgetAllocation&, const BudgetAllocation&) = default;
};

/// Runs the forward map: t_1 from ms_bound(0, t_1) = lambda0_budget, then
/// t_{j+1} = t_j + lambda_j gap_shrink(t_j). Zero-length steps are dropped; the
/// certificate is the evaluation of the resulting partition.
[[nodiscard]] BoundCertificate reach(const BudgetAllocation& alloc, const QuadratureConfig& cfg = {});

struct OptimizerConfig {
  int restarts = 20;
  std::uint64_t seed = 0;
  NelderMeadOptions nelder_mead{};
  /// Extra starting allocations tried before the random restarts.
  std::vector<BudgetAllocation> warm_starts;
};

struct OptimizationResult {
  BoundCertificate certificate;
  BudgetAllocation allocation;
  bool converged = false;
  int evaluations = 0;
};

/// Maximizes the reach over allocations with `n_steps` arcsin steps and total
/// angle `budget`, by restarted Nelder-Mead over the step angles.
[[nodiscard]] OptimizationResult maximize_reach(std::size_t n_steps, Angle budget = kDefaultBudget,
                                                const QuadratureConfig& cfg = {},
                                                const OptimizerConfig& opt = {});

/// Smallest bound found for partitions ending at t with at most n_steps arcsin
/// steps. Throws InfeasibleError if no such partition stays within pi/2.
[[nodiscard]] OptimizationResult min_bound_at(Ratio t, std::size_t n_steps,
                                              const QuadratureConfig& cfg = {},
                                              const OptimizerConfig& opt = {});

} // namespace specgap
