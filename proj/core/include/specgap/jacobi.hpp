#pragma once

#include <Eigen/Dense>

namespace specgap {

struct SymmetricEigen {
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXd vectors;  ///< column k belongs to values(k)
  int sweeps = 0;
};

inline constexpr Eigen::Index kMaxJacobiDim = 256;

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix. Sweeps until
/// the off-diagonal Frobenius norm drops below tol * max(1, ||A||_F). Throws
/// DomainError for non-square or oversized input, ConvergenceError after
/// max_sweeps.
[[nodiscard]] SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, double tol = 1e-12,
                                          int max_sweeps = 100);

/// Spectral norm of a symmetric matrix, max |eigenvalue|.
[[nodiscard]] double symmetric_norm(const Eigen::MatrixXd& a);

} // namespace specgap
