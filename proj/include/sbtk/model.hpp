#ifndef SBTK_MODEL_HPP
#define SBTK_MODEL_HPP

#include <utility>

#include "sbtk/fock_ops.hpp"

namespace sbtk {

struct ModelParams {
  double eta = 0.0;  // qubit half-gap; sign meaningful
  double g = 0.0;    // nonnegative coupling multiplier of v
  ModeGrid grid;
  int n_max = 1;
  std::size_t state_cap = FockBasis::default_state_cap;

  void validate() const;
};

// eta * parity + dgamma(omega) + field(g * v) on the no-qubit basis.
AssembledOperator build_fiber(const ModelParams& p, const BasisPtr& basis);
AssembledOperator build_fiber(const ModelParams& p);

// Full Hamiltonian on the qubit-tensored basis:
// eta sigma_z (x) 1 + 1 (x) dgamma + sigma_x (x) field(g v).
AssembledOperator build_full(const ModelParams& p, const BasisPtr& basis);
AssembledOperator build_full(const ModelParams& p);

// The selfadjoint involution that block-diagonalises the full Hamiltonian
// into the two fiber operators: odd-occupation components swap qubit
// channels.  Applied to a qubit-basis vector; returns the two channel
// components as no-qubit vectors.  Channel e_1 carries the +eta fiber and
// channel e_{-1} the -eta fiber (so the ground state of the full operator
// lands in channel e_{-sign(eta)}).
std::pair<FockVector, FockVector> parity_conjugation(const FockVector& psi);

struct PolaronFrame {
  AssembledOperator op;    // eta W(2g w^-1 v_high, -1) + dgamma + field(g v_low)
  AssembledOperator weyl;  // the W(2g w^-1 v_high, -1) factor
  double energy_shift;  // g^2 ||w^-1/2 v_high||^2; spectrum(op) = spectrum(fiber) + shift
  std::vector<Complex> alpha;  // displacement amplitudes 2g w^-1 v_high
  double displacement_tail;    // coherent tail mass of alpha/2 at this n_max
};

// Unitary image of the fiber operator under the displacement that removes
// the high-frequency coupling, plus the exact scalar shift.  Modes with
// omega > split_mass are displaced away; modes with omega <= split_mass
// keep their field coupling.
PolaronFrame build_polaron_frame(const ModelParams& p, double split_mass, const BasisPtr& basis,
                                 const DisplacementOptions& opts = {});

AssembledOperator build_polaron_fiber(const ModelParams& p, double split_mass,
                                      const BasisPtr& basis);
AssembledOperator build_polaron_fiber(const ModelParams& p, double split_mass);

}  // namespace sbtk

#endif
