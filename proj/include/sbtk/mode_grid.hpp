#ifndef SBTK_MODE_GRID_HPP
#define SBTK_MODE_GRID_HPP

#include <string>
#include <vector>

#include "sbtk/common.hpp"

namespace sbtk {

/*
 * Discretisation of the boson continuum: mode frequencies, coupling
 * amplitudes and the quadrature weights they were generated from.  The
 * weights are bookkeeping only; they are already folded into the amplitudes,
 * so every norm below is a plain sum over modes.
 */
struct ModeGrid {
  std::vector<double> omega;    // strictly positive mode frequencies
  std::vector<Complex> v;       // coupling amplitudes (quadrature folded in)
  std::vector<double> weight;   // originating quadrature weights
  std::string label;

  int mode_count() const { return static_cast<int>(omega.size()); }

  double min_omega() const;
  double max_omega() const;

  // sum_j |v_j|^2 omega_j^(-2s), the frequency-weighted coupling norms used
  // in all the energy identities (s = 0, 1/2, 1).
  double weighted_norm2(double s) const;

  bool real_coupling(double tol = 0.0) const;

  void validate() const;
};

inline ModeGrid make_single_mode(double omega, Complex v, const std::string& label = "single_mode") {
  ModeGrid g;
  g.omega = {omega};
  g.v = {v};
  g.weight = {1.0};
  g.label = label;
  g.validate();
  return g;
}

}  // namespace sbtk

#endif
