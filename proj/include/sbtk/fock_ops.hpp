#ifndef SBTK_FOCK_OPS_HPP
#define SBTK_FOCK_OPS_HPP

#include <vector>

#include "sbtk/assembled_operator.hpp"
#include "sbtk/fock_vector.hpp"
#include "sbtk/mode_grid.hpp"

namespace sbtk {

// Elementary operators on a no-qubit basis.  The truncation convention is a
// hard cutoff: creation maps the top occupation shell to zero, so creation
// stays the exact adjoint of annihilation on the truncated space.

AssembledOperator annihilation(const BasisPtr& basis, int mode);
AssembledOperator creation(const BasisPtr& basis, int mode);

// scale * sum_j (v_j a_j^dag + conj(v_j) a_j)
AssembledOperator field(const BasisPtr& basis, const ModeGrid& grid, double scale = 1.0);

// Diagonal sum_j n_j omega_j, and the number operator sum_j n_j.
AssembledOperator dgamma(const BasisPtr& basis, const ModeGrid& grid);
AssembledOperator number_operator(const BasisPtr& basis);

// Diagonal (-1)^(total occupation).
AssembledOperator parity(const BasisPtr& basis);

struct DisplacementOptions {
  // Unitarity is lost to truncation; the defect ||W*W - I|| is measured on
  // the block of states with total occupation <= check_block_total
  // (default n_max/2, capped in size) and stored in the recipe.  A
  // nonnegative bound turns a large defect into an error.
  int check_block_total = -1;
  double unitarity_bound = -1.0;
  std::size_t dense_dim_cap = 12000;
};

// exp(a^dag(f) - a(f)) restricted to the truncated basis.  Entries are those
// of the untruncated operator (computed mode by mode through the spectral
// form of the one-mode generator), so all truncation error shows up as the
// measurable unitarity defect.
AssembledOperator displacement(const BasisPtr& basis, const std::vector<Complex>& f,
                               const DisplacementOptions& opts = {});

// displacement(f) * parity; selfadjoint involution up to truncation.
AssembledOperator weyl_parity(const BasisPtr& basis, const std::vector<Complex>& f,
                              const DisplacementOptions& opts = {});

// Exact one-mode corner <m|exp(alpha a^dag - alpha a)|n>, m,n < ncap, real alpha.
Eigen::MatrixXd single_mode_displacement(double alpha, int ncap);

// Coefficients prod_j f_j^{n_j}/sqrt(n_j!), times e^{-|f|^2/2} when
// normalized.  tail_mass reports the truncated weight; a warning goes to
// stderr when it exceeds tail_warn_tol.
FockVector coherent_vector(const BasisPtr& basis, const std::vector<Complex>& f,
                           bool normalized = true, double tail_warn_tol = 1e-6);

}  // namespace sbtk

#endif
