#ifndef SBTK_DENSE_LINALG_HPP
#define SBTK_DENSE_LINALG_HPP

#include "sbtk/common.hpp"

namespace sbtk {

struct EighResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

// Full eigendecomposition of a real symmetric matrix (LAPACK divide and
// conquer when available, Eigen otherwise).
EighResult symmetric_eigh(const Eigen::MatrixXd& A, bool vectors = true);

// Eigendecomposition of the symmetric tridiagonal matrix with the given
// diagonal and off-diagonal.
EighResult tridiagonal_eigh(const Eigen::VectorXd& diag, const Eigen::VectorXd& off);

// Largest singular value by power iteration on A^H A (deterministic start).
double spectral_norm(const Eigen::MatrixXcd& A, int max_iter = 200, double tol = 1e-12);
double spectral_norm(const Eigen::MatrixXd& A, int max_iter = 200, double tol = 1e-12);

}  // namespace sbtk

#endif
