#include "specgap/partition_optimizer.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "specgap/constants.hpp"
#include "specgap/errors.hpp"

namespace specgap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Angle kMaxStepAngle = kPi / 4.0;
constexpr std::size_t kRefineGrid = 64;
constexpr int kGoldenIterations = 60;
// Step ratios may exceed 1/pi by rounding when they were produced from an
// angle of exactly pi/4.
constexpr double kLambdaSlack = 1.0 + 1e-14;

bool lambda_admissible(Ratio lambda) { return lambda <= kMaxStepRatio * kLambdaSlack; }

Angle clamped_step_bound(Ratio lambda) { return step_bound(std::min(lambda, kMaxStepRatio)); }

// Projects raw step angles onto the box [0, pi/4]^n and scales them down if
// they overspend the budget; whatever is left goes to the integral step.
BudgetAllocation project(std::span<const double> x, Angle budget) {
  BudgetAllocation alloc;
  alloc.step_budgets.reserve(x.size());
  for (const double v : x) alloc.step_budgets.push_back(std::clamp(v, 0.0, kMaxStepAngle));
  const double spent = std::accumulate(alloc.step_budgets.begin(), alloc.step_budgets.end(), 0.0);
  if (spent > budget) {
    for (double& theta : alloc.step_budgets) theta *= budget / spent;
  }
  const double steps = std::accumulate(alloc.step_budgets.begin(), alloc.step_budgets.end(), 0.0);
  alloc.lambda0_budget = std::max(0.0, budget - steps);
  return alloc;
}

// Forward map evaluated with the tabulated integral; used inside the search only.
Ratio fast_reach(const BudgetAllocation& alloc, const GapIntegralTable& table) {
  Ratio t = table.inverse(alloc.lambda0_budget / (0.5 * kPi));
  for (const Angle theta : alloc.step_budgets) {
    t += std::sin(2.0 * theta) / kPi * gap_shrink(t);
  }
  return t;
}

// Supporting points produced by an allocation, with zero-length steps removed.
std::vector<Ratio> chain_points(const BudgetAllocation& alloc, const QuadratureConfig& cfg) {
  std::vector<Ratio> points{0.0};
  Ratio t = inverse_ms_bound(alloc.lambda0_budget, cfg);
  if (t > 0.0) points.push_back(t);
  for (const Angle theta : alloc.step_budgets) {
    if (!(t < kEndpointCap)) throw DomainError("reach: supporting point reached sqrt(3)/2");
    const Ratio next = t + std::sin(2.0 * theta) / kPi * gap_shrink(t);
    if (next > t) points.push_back(next);
    t = next;
  }
  if (!(t <= kEndpointCap)) throw DomainError("reach: supporting point reached sqrt(3)/2");
  return points;
}

BudgetAllocation allocation_of(const BoundCertificate& cert) {
  BudgetAllocation alloc;
  alloc.lambda0_budget = cert.per_step.front();
  alloc.step_budgets.assign(cert.per_step.begin() + 1, cert.per_step.end());
  return alloc;
}

struct SearchOutcome {
  BudgetAllocation allocation;
  Ratio reach = -1.0;
  bool converged = false;
  int evaluations = 0;
};

bool better(const SearchOutcome& a, const SearchOutcome& b) {
  if (a.reach != b.reach) return a.reach > b.reach;
  return a.allocation < b.allocation;
}

BudgetAllocation fit_dimension(const BudgetAllocation& alloc, std::size_t n_steps, Angle budget) {
  std::vector<double> x(alloc.step_budgets.begin(),
                        alloc.step_budgets.begin() +
                            static_cast<std::ptrdiff_t>(std::min(n_steps, alloc.step_budgets.size())));
  x.resize(n_steps, 0.0);
  return project(x, budget);
}

SearchOutcome search(std::size_t n_steps, Angle budget, const GapIntegralTable& table,
                     const OptimizerConfig& opt) {
  SearchOutcome best;
  if (n_steps == 0) {
    best.allocation = project({}, budget);
    best.reach = fast_reach(best.allocation, table);
    best.converged = true;
    return best;
  }

  std::vector<std::vector<double>> starts;
  for (const BudgetAllocation& warm : opt.warm_starts) {
    starts.push_back(fit_dimension(warm, n_steps, budget).step_budgets);
  }
  // Equal step angles with 1/3 on the integral step, which for four steps and
  // budget pi/2 is the classical choice.
  const double lead = std::min(1.0 / 3.0, budget);
  starts.emplace_back(n_steps, std::min(kMaxStepAngle, (budget - lead) / static_cast<double>(n_steps)));
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> angle(0.0, kMaxStepAngle);
  for (int k = 0; k < opt.restarts; ++k) {
    std::vector<double> x(n_steps);
    for (double& v : x) v = angle(rng);
    starts.push_back(project(x, budget).step_budgets);
  }

  const Objective objective = [&](std::span<const double> x) {
    return -fast_reach(project(x, budget), table);
  };
  for (const auto& x0 : starts) {
    NelderMeadResult run = nelder_mead(objective, x0, opt.nelder_mead);
    // Restart once from the optimum with a small simplex to escape collapse.
    NelderMeadOptions polish = opt.nelder_mead;
    polish.initial_step = std::max(1e-4, 0.1 * opt.nelder_mead.initial_step);
    NelderMeadResult second = nelder_mead(objective, run.x, polish);
    SearchOutcome outcome;
    outcome.allocation = project(second.x, budget);
    outcome.reach = -second.value;
    outcome.converged = run.converged && second.converged;
    outcome.evaluations = run.evaluations + second.evaluations;
    const int total = best.evaluations + outcome.evaluations;
    if (better(outcome, best)) best = outcome;
    best.evaluations = total;
  }
  return best;
}

void require_budget(Angle budget) {
  if (!(budget > 0.0) || budget > kDefaultBudget + 1e-15) {
    throw DomainError("budget must lie in (0, pi/2 - 1e-9]");
  }
}

} // namespace

Partition::Partition(std::vector<Ratio> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw DomainError("Partition: need at least two points");
  if (points_.front() != 0.0) throw DomainError("Partition: first point must be 0");
  for (std::size_t j = 1; j < points_.size(); ++j) {
    if (!(points_[j] > points_[j - 1])) {
      throw DomainError("Partition: points must be strictly increasing");
    }
  }
  if (!(points_.back() <= kEndpointCap)) {
    throw DomainError("Partition: end point must stay below sqrt(3)/2");
  }
}

Partition Partition::trivial(Ratio t) { return Partition({0.0, t}); }

std::vector<Ratio> Partition::lambdas() const {
  std::vector<Ratio> out;
  out.reserve(points_.size() - 1);
  for (std::size_t j = 0; j + 1 < points_.size(); ++j) {
    out.push_back(step_ratio(points_[j], points_[j + 1]));
  }
  return out;
}

BoundCertificate evaluate(const Partition& partition, const QuadratureConfig& cfg) {
  const Ratio c_off = gap_constants().c_off;
  if (partition.first() > c_off) {
    throw ValidityError("evaluate: t_1 = " + std::to_string(partition.first()) +
                        " exceeds c_off = " + std::to_string(c_off));
  }
  const std::vector<Ratio> lambdas = partition.lambdas();
  BoundCertificate cert{partition, 0.0, {}, partition.reach()};
  cert.per_step.reserve(lambdas.size());
  cert.per_step.push_back(ms_bound(0.0, partition.first(), cfg));
  for (std::size_t j = 1; j < lambdas.size(); ++j) {
    if (!lambda_admissible(lambdas[j])) {
      throw ValidityError("evaluate: lambda_" + std::to_string(j) + " = " +
                          std::to_string(lambdas[j]) + " exceeds 1/pi");
    }
    cert.per_step.push_back(clamped_step_bound(lambdas[j]));
  }
  cert.bound = std::accumulate(cert.per_step.begin(), cert.per_step.end(), 0.0);
  return cert;
}

Angle arcsin_variant_bound(const Partition& partition) {
  const std::vector<Ratio> lambdas = partition.lambdas();
  Angle bound = 0.0;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    if (!lambda_admissible(lambdas[j])) {
      throw ValidityError("arcsin_variant_bound: lambda_" + std::to_string(j) + " exceeds 1/pi");
    }
    bound += clamped_step_bound(lambdas[j]);
  }
  return bound;
}

Refinement refine(const Partition& partition, const QuadratureConfig& cfg) {
  const Ratio t1 = partition.first();
  const Angle old_bound = evaluate(partition, cfg).bound;

  // Any r above lo keeps (t1 - r)/gap_shrink(r) <= 1/pi since gap_shrink decreases.
  const Ratio lo = std::max(0.0, t1 - gap_shrink(t1) / std::numbers::pi);
  const auto gain = [&](Ratio r) { return lemma_h(r, t1, cfg); };

  const auto grid_point = [&](std::size_t i) {
    return lo + (t1 - lo) * static_cast<double>(i) / static_cast<double>(kRefineGrid + 1);
  };
  std::size_t best_i = 1;
  double best_gain = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= kRefineGrid; ++i) {
    const double g = gain(grid_point(i));
    if (g > best_gain) {
      best_gain = g;
      best_i = i;
    }
  }

  // Golden-section maximization between the neighbours of the best grid point.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = grid_point(best_i - 1);
  double b = grid_point(best_i + 1);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = gain(c);
  double gd = gain(d);
  for (int it = 0; it < kGoldenIterations && (b - a) > 1e-14; ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = gain(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = gain(d);
    }
  }
  Ratio r = grid_point(best_i);
  if (gc > best_gain && gc >= gd) r = c;
  else if (gd > best_gain) r = d;

  std::vector<Ratio> points = partition.points();
  points.insert(points.begin() + 1, r);
  Partition refined(std::move(points));
  const Angle new_bound = evaluate(refined, cfg).bound;
  if (!(new_bound < old_bound)) {
    throw std::logic_error("refine: no strictly improving point found below t_1 = " +
                           std::to_string(t1));
  }
  return Refinement{std::move(refined), r, old_bound, new_bound};
}

Angle BudgetAllocation::total() const noexcept {
  return std::accumulate(step_budgets.begin(), step_budgets.end(), lambda0_budget);
}

void BudgetAllocation::validate() const {
  if (!(lambda0_budget >= 0.0) || lambda0_budget > 0.5 * kPi) {
    throw DomainError("BudgetAllocation: lambda0_budget outside [0, pi/2]");
  }
  for (const Angle theta : step_budgets) {
    if (!(theta >= 0.0) || theta > kMaxStepAngle) {
      throw DomainError("BudgetAllocation: step angle outside [0, pi/4]");
    }
  }
}

BoundCertificate reach(const BudgetAllocation& alloc, const QuadratureConfig& cfg) {
  alloc.validate();
  std::vector<Ratio> points = chain_points(alloc, cfg);
  if (points.size() < 2) throw DomainError("reach: allocation spends no angle");
  return evaluate(Partition(std::move(points)), cfg);
}

OptimizationResult maximize_reach(std::size_t n_steps, Angle budget, const QuadratureConfig& cfg,
                                  const OptimizerConfig& opt) {
  require_budget(budget);
  const GapIntegralTable table(cfg);
  const SearchOutcome best = search(n_steps, budget, table, opt);
  // The certificate re-adds angles computed from the partition, which can land a
  // few ulps above the budget; take the excess off the integral step.
  BudgetAllocation alloc = best.allocation;
  BoundCertificate cert = reach(alloc, cfg);
  for (int k = 0; k < 8 && cert.bound > budget; ++k) {
    const Angle excess = cert.bound - budget;
    alloc = fit_dimension(alloc, n_steps, alloc.total() - 2.0 * excess - 1e-15);
    cert = reach(alloc, cfg);
  }
  return OptimizationResult{std::move(cert), std::move(alloc), best.converged, best.evaluations};
}

OptimizationResult min_bound_at(Ratio t, std::size_t n_steps, const QuadratureConfig& cfg,
                                const OptimizerConfig& opt) {
  if (!(t > 0.0) || !(t < kEndpointCap)) throw DomainError("min_bound_at: t outside (0, sqrt(3)/2)");
  const GapConstants& pc = gap_constants();

  std::vector<BoundCertificate> candidates;
  if (t <= pc.c_off) candidates.push_back(evaluate(Partition::trivial(t), cfg));

  // Supporting points tau_1..tau_j below t, as used by N*_off.
  if (t <= pc.c_off_star) {
    std::vector<Ratio> points{0.0};
    for (const Ratio tau : pc.tau) {
      if (tau < t) points.push_back(tau);
    }
    points.push_back(t);
    if (points.size() - 2 <= n_steps && points.size() > 2) {
      candidates.push_back(evaluate(Partition(std::move(points)), cfg));
    }
  }

  if (n_steps > 0) {
    const GapIntegralTable table(cfg);
    // Smallest budget whose best reach covers t, by bisection.
    const Ratio target = t + 1e-12;
    SearchOutcome feasible = search(n_steps, kDefaultBudget, table, opt);
    if (feasible.reach >= target) {
      Angle lo = 0.0;
      Angle hi = kDefaultBudget;
      OptimizerConfig inner = opt;
      while (hi - lo > 1e-11) {
        const Angle mid = 0.5 * (lo + hi);
        inner.warm_starts = {feasible.allocation};
        inner.warm_starts.insert(inner.warm_starts.end(), opt.warm_starts.begin(), opt.warm_starts.end());
        SearchOutcome trial = search(n_steps, mid, table, inner);
        if (trial.reach >= target) {
          hi = mid;
          feasible = trial;
        } else {
          lo = mid;
        }
      }
      // Truncate the chain at t; the last step only gets shorter.
      std::vector<Ratio> points{0.0};
      for (const Ratio p : chain_points(feasible.allocation, cfg)) {
        if (p > 0.0 && p < t) points.push_back(p);
      }
      points.push_back(t);
      try {
        candidates.push_back(evaluate(Partition(std::move(points)), cfg));
      } catch (const ValidityError&) {
        // Rounding pushed the truncated chain out of the admissible set; the
        // other candidates still stand.
      }
    }
  }

  if (candidates.empty()) {
    throw InfeasibleError("min_bound_at: no admissible partition with " + std::to_string(n_steps) +
                          " steps reaches t = " + std::to_string(t));
  }
  const auto best = std::min_element(candidates.begin(), candidates.end(),
                                     [](const BoundCertificate& a, const BoundCertificate& b) {
                                       return a.bound < b.bound;
                                     });
  if (best->bound > 0.5 * kPi) {
    throw InfeasibleError("min_bound_at: best bound exceeds pi/2 at t = " + std::to_string(t));
  }
  return OptimizationResult{*best, allocation_of(*best), true, 0};
}

} // namespace specgap
