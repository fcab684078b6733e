#include "specgap/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "specgap/errors.hpp"

namespace specgap {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

} // namespace

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& input, double tol, int max_sweeps) {
  if (input.rows() != input.cols()) throw DomainError("jacobi_eigen: matrix must be square");
  if (input.rows() > kMaxJacobiDim) throw DomainError("jacobi_eigen: dimension above 256");
  const Eigen::Index n = input.rows();

  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double threshold = tol * std::max(1.0, a.norm());

  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweep == max_sweeps) throw ConvergenceError("jacobi_eigen: no convergence");
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation annihilating a(p, q); t is the smaller root of t^2 + 2 theta t - 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src);
    out.vectors.col(k) = v.col(src);
  }
  out.sweeps = sweep;
  return out;
}

double symmetric_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  const SymmetricEigen eig = jacobi_eigen(a);
  return std::max(std::abs(eig.values(0)), std::abs(eig.values(eig.values.size() - 1)));
}

} // namespace specgap
