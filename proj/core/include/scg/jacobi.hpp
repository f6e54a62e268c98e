#pragma once

#include <Eigen/Dense>

namespace scg {

struct SymmetricEigen {
  /// Eigenvalues in descending order.
  Eigen::VectorXd values;
  /// Orthonormal eigenvectors stored as columns, matching `values`.
  Eigen::MatrixXd vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a dense real symmetric matrix.
///
/// Sweeps over all off-diagonal pairs applying plane rotations until the
/// off-diagonal Frobenius mass falls below `rel_tol` times the matrix norm.
/// Only the upper triangle of `a` is read.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, double rel_tol = 1e-15, int max_sweeps = 100);

}  // namespace scg
