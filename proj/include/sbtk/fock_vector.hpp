#ifndef SBTK_FOCK_VECTOR_HPP
#define SBTK_FOCK_VECTOR_HPP

#include <memory>

#include "sbtk/common.hpp"
#include "sbtk/fock_basis.hpp"

namespace sbtk {

/// Dense coefficient vector over a FockBasis.  tail_mass carries the
/// truncation diagnostic for vectors built from analytic families
/// (coherent vectors); it is 0 for computed eigenvectors.
struct FockVector {
  BasisPtr basis;
  Eigen::VectorXcd coeff;
  double tail_mass = 0.0;

  double norm() const { return coeff.norm(); }
};

inline Complex inner(const FockVector& a, const FockVector& b) {
  require(a.basis == b.basis || a.coeff.size() == b.coeff.size(),
          "inner: basis mismatch");
  return a.coeff.dot(b.coeff);  // Eigen dot conjugates the left argument
}

inline FockVector vacuum_vector(const BasisPtr& basis) {
  FockVector psi;
  psi.basis = basis;
  psi.coeff = Eigen::VectorXcd::Zero(static_cast<long>(basis->size()));
  psi.coeff[0] = 1.0;
  return psi;
}

}  // namespace sbtk

#endif
