#ifndef SBTK_GROUND_STATE_CHECKS_HPP
#define SBTK_GROUND_STATE_CHECKS_HPP

#include "sbtk/fock_vector.hpp"
#include "sbtk/mode_grid.hpp"

namespace sbtk {

// Structure checks for fiber ground states at eta <= 0.  The vector must be
// phase-fixed (vacuum component real positive) before calling.

struct SignStructureReport {
  double vacuum_component = 0.0;
  double min_signed_real = 0.0;  // min over kept states of the phase-unwound amplitude
  double max_abs_imag = 0.0;
  std::size_t states_checked = 0;
};

// Checks that (-1)^(total) prod_j (conj(v_j)/|v_j|)^{n_j} c_n has nonnegative
// real part on every kept occupation state supported on coupled modes.
SignStructureReport sign_structure(const FockVector& psi, const ModeGrid& grid);

struct PointwiseBoundReport {
  double max_ratio = 0.0;  // |c_n| / bound_n over states whose bound exceeds the floor
  std::size_t violations = 0;
  double slack = 0.0;
};

// |c_n| <= (1 + slack) prod_j (g |v_j| / omega_j)^{n_j} / sqrt(prod_j n_j!) + floor.
// The absolute floor absorbs eigensolver noise on amplitudes whose true
// bound sits below the solver's resolution.
PointwiseBoundReport pointwise_bound(const FockVector& psi, const ModeGrid& grid, double g,
                                     double slack = 1e-6, double floor = 1e-12);

// Largest amplitude on occupation states exciting a zero-coupling mode.
double support_leakage(const FockVector& psi, const ModeGrid& grid);

}  // namespace sbtk

#endif
