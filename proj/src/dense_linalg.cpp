#include "sbtk/dense_linalg.hpp"

#include <cmath>

#ifdef SBTK_USE_LAPACKE
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace sbtk {

EighResult symmetric_eigh(const Eigen::MatrixXd& A, bool vectors) {
  require(A.rows() == A.cols(), "symmetric_eigh: square matrix required");
  const int n = static_cast<int>(A.rows());
  EighResult out;
#ifdef SBTK_USE_LAPACKE
  out.vectors = A;
  out.values.resize(n);
  int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'L', n,
                            out.vectors.data(), n, out.values.data());
  if (info != 0) fail("symmetric_eigh: dsyevd failed, info=" + std::to_string(info));
  if (!vectors) out.vectors.resize(0, 0);
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      A, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail("symmetric_eigh: Eigen solver failed");
  out.values = es.eigenvalues();
  if (vectors) out.vectors = es.eigenvectors();
#endif
  return out;
}

EighResult tridiagonal_eigh(const Eigen::VectorXd& diag, const Eigen::VectorXd& off) {
  const int n = static_cast<int>(diag.size());
  require(off.size() == n - 1 || (n == 1 && off.size() == 0),
          "tridiagonal_eigh: off-diagonal size mismatch");
  EighResult out;
#ifdef SBTK_USE_LAPACKE
  out.values = diag;
  Eigen::VectorXd e = off;
  out.vectors.resize(n, n);
  int info = LAPACKE_dstedc(LAPACK_COL_MAJOR, 'I', n, out.values.data(),
                            n > 1 ? e.data() : nullptr, out.vectors.data(), n);
  if (info != 0) fail("tridiagonal_eigh: dstedc failed, info=" + std::to_string(info));
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) fail("tridiagonal_eigh: Eigen solver failed");
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
#endif
  return out;
}

namespace {

template <typename Mat, typename Vec>
double power_norm(const Mat& A, int max_iter, double tol) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  Vec x(A.cols());
  for (long i = 0; i < x.size(); ++i) x[i] = 1.0 / std::sqrt(1.0 + static_cast<double>(i));
  x /= x.norm();
  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vec y = A * x;
    Vec z = A.adjoint() * y;
    double nz = z.norm();
    if (nz == 0.0) return 0.0;
    double est = std::sqrt(nz);  // ||A^H A x|| -> sigma_max^2
    x = z / nz;
    if (it > 3 && std::abs(est - prev) <= tol * std::max(1.0, est)) return est;
    prev = est;
  }
  return prev;
}

}  // namespace

double spectral_norm(const Eigen::MatrixXcd& A, int max_iter, double tol) {
  return power_norm<Eigen::MatrixXcd, Eigen::VectorXcd>(A, max_iter, tol);
}

double spectral_norm(const Eigen::MatrixXd& A, int max_iter, double tol) {
  return power_norm<Eigen::MatrixXd, Eigen::VectorXd>(A, max_iter, tol);
}

}  // namespace sbtk
