#include "specgap/operator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "specgap/constants.hpp"
#include "specgap/errors.hpp"
#include "specgap/jacobi.hpp"

namespace specgap {

namespace {

constexpr std::uint64_t kResampleOffset = 0x9E3779B97F4A7C15ULL;
constexpr int kMaxResamples = 64;
constexpr double kBoundaryWidth = 1e-9;
constexpr double kMultiplicityWidth = 1e-12;

double nearest(const std::vector<double>& set, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (const double v : set) best = std::min(best, std::abs(x - v));
  return best;
}

struct Classified {
  Eigen::MatrixXd projector;
  Eigen::VectorXd spectrum;
  std::vector<int> omega;
  std::vector<int> Omega;
  double component_distance = std::numeric_limits<double>::infinity();
};

Classified classify(const OperatorInstance& inst, Ratio s) {
  const SymmetricEigen eig = jacobi_eigen(inst.B(s));
  Classified out;
  out.spectrum = eig.values;
  out.projector = Eigen::MatrixXd::Zero(inst.dim(), inst.dim());
  const double half_gap = 0.5 * inst.d;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double mu = eig.values(k);
    const double to_sigma = inst.dist_to_sigma(mu);
    if (std::abs(to_sigma - half_gap) < kBoundaryWidth) {
      throw BoundaryError("perturbed eigenvalue " + std::to_string(mu) +
                          " on the d/2 classification boundary");
    }
    if (to_sigma < half_gap) {
      out.omega.push_back(static_cast<int>(k));
      out.projector.noalias() += eig.vectors.col(k) * eig.vectors.col(k).transpose();
    } else {
      out.Omega.push_back(static_cast<int>(k));
    }
  }
  for (const int i : out.omega) {
    for (const int j : out.Omega) {
      out.component_distance = std::min(out.component_distance, std::abs(eig.values(i) - eig.values(j)));
    }
  }
  if (out.component_distance < kMultiplicityWidth) {
    throw BoundaryError("perturbed eigenvalues of both components coincide");
  }
  return out;
}

Angle projector_angle(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q, double* norm_out = nullptr) {
  const double norm = std::min(1.0, symmetric_norm(p - q));
  if (norm_out) *norm_out = norm;
  return std::asin(norm);
}

OperatorInstance draw(std::uint64_t seed, int dim_sigma, int dim_Sigma, Ratio t, SpectralLayout layout,
                      bool rotate) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  OperatorInstance inst;
  inst.seed = seed;
  inst.layout = layout;
  inst.dim_sigma = dim_sigma;
  inst.dim_Sigma = dim_Sigma;
  inst.t = t;
  inst.d = 1.0;

  // The first entry of each component pins the distance to exactly d.
  if (layout == SpectralLayout::subordinated) {
    inst.eigs_sigma.push_back(0.0);
    for (int i = 1; i < dim_sigma; ++i) inst.eigs_sigma.push_back(-3.0 * unit(rng));
    inst.eigs_Sigma.push_back(1.0);
    for (int i = 1; i < dim_Sigma; ++i) inst.eigs_Sigma.push_back(1.0 + 3.0 * unit(rng));
  } else {
    inst.eigs_sigma.push_back(0.0);
    for (int i = 1; i < dim_sigma; ++i) inst.eigs_sigma.push_back(unit(rng));
    inst.eigs_Sigma.push_back(-1.0);
    if (dim_Sigma > 1) inst.eigs_Sigma.push_back(2.0);
    for (int i = 2; i < dim_Sigma; ++i) {
      const double u = 2.0 * unit(rng);
      inst.eigs_Sigma.push_back(u < 1.0 ? -3.0 + 2.0 * u : 2.0 + 2.0 * (u - 1.0));
    }
  }

  inst.W = Eigen::MatrixXd::Zero(dim_sigma, dim_Sigma);
  for (int j = 0; j < dim_Sigma; ++j) {
    for (int i = 0; i < dim_sigma; ++i) inst.W(i, j) = normal(rng);
  }
  if (t > 0.0) {
    const double top = Eigen::JacobiSVD<Eigen::MatrixXd>(inst.W).singularValues()(0);
    inst.W *= t * inst.d / top;
  } else {
    inst.W.setZero();
  }

  const int n = dim_sigma + dim_Sigma;
  if (rotate) {
    Eigen::MatrixXd g(n, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) g(i, j) = normal(rng);
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    inst.basis = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  } else {
    inst.basis = Eigen::MatrixXd::Identity(n, n);
  }
  return inst;
}

} // namespace

const char* to_string(SpectralLayout layout) noexcept {
  return layout == SpectralLayout::subordinated ? "subordinated" : "interlaced";
}

Eigen::MatrixXd OperatorInstance::A() const {
  Eigen::VectorXd diag(dim());
  for (int i = 0; i < dim_sigma; ++i) diag(i) = eigs_sigma[static_cast<std::size_t>(i)];
  for (int i = 0; i < dim_Sigma; ++i) diag(dim_sigma + i) = eigs_Sigma[static_cast<std::size_t>(i)];
  return basis * diag.asDiagonal() * basis.transpose();
}

Eigen::MatrixXd OperatorInstance::V() const {
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(dim(), dim());
  block.topRightCorner(dim_sigma, dim_Sigma) = W;
  block.bottomLeftCorner(dim_Sigma, dim_sigma) = W.transpose();
  return basis * block * basis.transpose();
}

Eigen::MatrixXd OperatorInstance::sigma_projector() const {
  const auto q = basis.leftCols(dim_sigma);
  return q * q.transpose();
}

Eigen::MatrixXd OperatorInstance::B(Ratio s) const {
  if (t == 0.0) return A();
  return A() + (s / t) * V();
}

double OperatorInstance::dist_to_sigma(double x) const { return nearest(eigs_sigma, x); }
double OperatorInstance::dist_to_Sigma(double x) const { return nearest(eigs_Sigma, x); }

OperatorInstance generate(std::uint64_t seed, int dim_sigma, int dim_Sigma, Ratio t,
                          SpectralLayout layout, bool rotate) {
  if (dim_sigma < 1 || dim_Sigma < 1) throw DomainError("generate: dimensions must be >= 1");
  if (dim_sigma + dim_Sigma > kMaxJacobiDim) throw DomainError("generate: dimension above 256");
  if (!(t >= 0.0) || !(t < kGapLimit)) throw DomainError("generate: t outside [0, sqrt(3)/2)");

  std::vector<std::string> rejections;
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    const std::uint64_t draw_seed = seed + static_cast<std::uint64_t>(attempt) * kResampleOffset;
    OperatorInstance inst = draw(draw_seed, dim_sigma, dim_Sigma, t, layout, rotate);
    try {
      (void)classify(inst, t);
    } catch (const BoundaryError& e) {
      rejections.push_back("seed " + std::to_string(draw_seed) + ": " + e.what());
      continue;
    }
    inst.requested_seed = seed;
    inst.rejections = std::move(rejections);
    return inst;
  }
  throw BoundaryError("generate: every resampled draw was degenerate");
}

AngleMeasurement measure_at(const OperatorInstance& instance, Ratio s) {
  const Classified c = classify(instance, s);
  AngleMeasurement m;
  m.theta = projector_angle(instance.sigma_projector(), c.projector, &m.projector_gap);
  m.perturbed_spectrum.assign(c.spectrum.data(), c.spectrum.data() + c.spectrum.size());
  m.omega = c.omega;
  m.Omega = c.Omega;
  m.rank_ok = static_cast<int>(c.omega.size()) == instance.dim_sigma;
  m.component_distance = c.component_distance;

  // Closed delta_s d-neighbourhood of sigma u Sigma, which is spec(A).
  const double radius = delta(s) * instance.d + kBoundaryWidth;
  m.enclosure_ok = std::all_of(m.perturbed_spectrum.begin(), m.perturbed_spectrum.end(), [&](double mu) {
    return std::min(instance.dist_to_sigma(mu), instance.dist_to_Sigma(mu)) <= radius;
  });
  return m;
}

AngleMeasurement measure(const OperatorInstance& instance) { return measure_at(instance, instance.t); }

bool BoundsReport::passed() const noexcept {
  const auto ok = [](const std::optional<BoundCheck>& c) { return !c || c->passed; };
  return ok(n_off_star) && ok(ms_bound) && ok(general_bound) && enclosure_ok && gap_ok && rank_ok;
}

BoundsReport verify_bounds(const OperatorInstance& instance, const QuadratureConfig& cfg) {
  const AngleMeasurement m = measure(instance);
  BoundsReport report;
  report.seed = instance.seed;
  report.dim_sigma = instance.dim_sigma;
  report.dim_Sigma = instance.dim_Sigma;
  report.layout = instance.layout;
  report.t = instance.t;
  report.theta = m.theta;
  report.enclosure_ok = m.enclosure_ok;
  report.rank_ok = m.rank_ok;
  report.component_distance = m.component_distance;
  report.gap_ok = m.component_distance >= gap_shrink(instance.t) * instance.d - kBoundaryWidth;

  const auto check = [&](Angle bound) {
    return BoundCheck{bound, bound - m.theta, m.theta <= bound + kBoundTolerance};
  };
  const GapConstants& pc = gap_constants();
  if (instance.t <= pc.c_off_star) {
    report.n_off_star = check(n_off_star(instance.t, make_piecewise_bound(pc), cfg));
  }
  if (instance.t <= kEndpointCap) {
    try {
      report.ms_bound = check(specgap::ms_bound(0.0, instance.t, cfg));
    } catch (const ConvergenceError&) {
      // Too close to sqrt(3)/2 for the quadrature; the bound is uninformative there anyway.
    }
  }
  if (instance.t <= kMaxStepRatio) report.general_bound = check(step_bound(instance.t));
  return report;
}

PathReport path_measure(const OperatorInstance& instance, const Partition& partition,
                        const QuadratureConfig& cfg) {
  if (!(instance.t > 0.0)) throw DomainError("path_measure: instance has V = 0");
  std::vector<Ratio> points;
  for (const Ratio p : partition.points()) {
    if (p < instance.t) points.push_back(p);
  }
  points.push_back(instance.t);

  std::vector<Eigen::MatrixXd> projectors;
  projectors.reserve(points.size());
  for (const Ratio p : points) projectors.push_back(classify(instance, p).projector);

  PathReport report;
  report.steps_ok = true;
  for (std::size_t j = 0; j + 1 < points.size(); ++j) {
    PathStep step;
    step.from = points[j];
    step.to = points[j + 1];
    step.angle = projector_angle(projectors[j], projectors[j + 1]);
    step.lambda = step_ratio(step.from, step.to);
    step.ok = true;
    if (step.lambda <= kMaxStepRatio) {
      step.step_bound = step_bound(step.lambda);
      step.ok = step.angle <= *step.step_bound + kBoundTolerance;
    }
    if (step.to <= kEndpointCap) {
      step.ms_bound = specgap::ms_bound(step.from, step.to, cfg);
      step.ok = step.ok && step.angle <= step.ms_bound + kBoundTolerance;
    }
    report.total += step.angle;
    report.steps_ok = report.steps_ok && step.ok;
    report.steps.push_back(step);
  }
  report.theta = projector_angle(projectors.front(), projectors.back());
  report.triangle_ok = report.theta <= report.total + 1e-12;
  return report;
}

IncrementBlock increment_block(const OperatorInstance& instance, Ratio r, Ratio s) {
  const Classified c = classify(instance, r);
  const Eigen::MatrixXd increment = instance.B(s) - instance.B(r);
  IncrementBlock out;
  out.diagonal_block_norm = symmetric_norm(c.projector * increment * c.projector);
  out.increment_norm = symmetric_norm(increment);
  return out;
}

std::vector<BoundsReport> run_trials(const TrialConfig& config, const QuadratureConfig& cfg) {
  if (config.dim_lo < 2 || config.dim_hi < config.dim_lo) {
    throw DomainError("run_trials: need 2 <= dim_lo <= dim_hi");
  }
  if (!(config.t_lo >= 0.0) || !(config.t_hi >= config.t_lo) || !(config.t_hi < kGapLimit)) {
    throw DomainError("run_trials: need 0 <= t_lo <= t_hi < sqrt(3)/2");
  }
  std::mt19937_64 master(config.seed);
  std::uniform_int_distribution<int> total_dim(config.dim_lo, config.dim_hi);
  std::uniform_real_distribution<double> scale(config.t_lo, config.t_hi);

  std::vector<BoundsReport> reports;
  reports.reserve(config.trials);
  for (std::size_t k = 0; k < config.trials; ++k) {
    const int n = total_dim(master);
    const int dim_sigma = std::uniform_int_distribution<int>(1, n - 1)(master);
    const Ratio t = config.t_hi > config.t_lo ? scale(master) : config.t_lo;
    const std::uint64_t seed = master();
    SpectralLayout layout = SpectralLayout::subordinated;
    if (config.layouts == LayoutChoice::interlaced ||
        (config.layouts == LayoutChoice::both && k % 2 == 1)) {
      layout = SpectralLayout::interlaced;
    }
    const OperatorInstance inst = generate(seed, dim_sigma, n - dim_sigma, t, layout, config.rotate);
    reports.push_back(verify_bounds(inst, cfg));
  }
  std::sort(reports.begin(), reports.end(),
            [](const BoundsReport& a, const BoundsReport& b) { return a.seed < b.seed; });
  return reports;
}

} // namespace specgap
