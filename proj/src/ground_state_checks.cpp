#include "sbtk/ground_state_checks.hpp"

#include <cmath>

namespace sbtk {

SignStructureReport sign_structure(const FockVector& psi, const ModeGrid& grid) {
  const BasisPtr& basis = psi.basis;
  require(!basis->with_qubit(), "sign_structure: fiber state expected");
  require(grid.mode_count() == basis->modes(), "sign_structure: grid mismatch");

  SignStructureReport rep;
  rep.vacuum_component = psi.coeff[0].real();
  rep.min_signed_real = rep.vacuum_component;
  for (std::size_t i = 0; i < basis->fock_size(); ++i) {
    bool outside_support = false;
    Complex phase(1.0, 0.0);
    for (int j = 0; j < basis->modes(); ++j) {
      int n = basis->occ(i, j);
      if (n == 0) continue;
      double mag = std::abs(grid.v[j]);
      if (mag == 0.0) {
        outside_support = true;
        break;
      }
      Complex unit = std::conj(grid.v[j]) / mag;
      for (int r = 0; r < n; ++r) phase *= unit;
    }
    if (outside_support) continue;  // covered by the support check
    double sign = (basis->total(i) % 2 == 0) ? 1.0 : -1.0;
    Complex s = sign * phase * psi.coeff[static_cast<long>(i)];
    rep.min_signed_real = std::min(rep.min_signed_real, s.real());
    rep.max_abs_imag = std::max(rep.max_abs_imag, std::abs(s.imag()));
    ++rep.states_checked;
  }
  return rep;
}

PointwiseBoundReport pointwise_bound(const FockVector& psi, const ModeGrid& grid, double g,
                                     double slack, double floor) {
  const BasisPtr& basis = psi.basis;
  require(!basis->with_qubit(), "pointwise_bound: fiber state expected");
  require(grid.mode_count() == basis->modes(), "pointwise_bound: grid mismatch");
  require(g > 0.0, "pointwise_bound: needs g > 0");

  PointwiseBoundReport rep;
  rep.slack = slack;
  for (std::size_t i = 1; i < basis->fock_size(); ++i) {
    double logbound = 0.0;
    bool zero_bound = false;
    for (int j = 0; j < basis->modes(); ++j) {
      int n = basis->occ(i, j);
      if (n == 0) continue;
      double mag = g * std::abs(grid.v[j]) / grid.omega[j];
      if (mag == 0.0) {
        zero_bound = true;
        break;
      }
      logbound += n * std::log(mag) - 0.5 * std::lgamma(double(n) + 1.0);
    }
    double c = std::abs(psi.coeff[static_cast<long>(i)]);
    if (zero_bound) {
      // bound is exactly zero off the coupling support; treat as support leakage
      continue;
    }
    double bound = std::exp(logbound);
    if (c > (1.0 + slack) * bound + floor) ++rep.violations;
    if (bound >= floor && c > 0.0) rep.max_ratio = std::max(rep.max_ratio, c / bound);
  }
  return rep;
}

double support_leakage(const FockVector& psi, const ModeGrid& grid) {
  const BasisPtr& basis = psi.basis;
  require(!basis->with_qubit(), "support_leakage: fiber state expected");
  double leak = 0.0;
  for (std::size_t i = 0; i < basis->fock_size(); ++i) {
    for (int j = 0; j < basis->modes(); ++j) {
      if (basis->occ(i, j) > 0 && std::abs(grid.v[j]) == 0.0) {
        leak = std::max(leak, std::abs(psi.coeff[static_cast<long>(i)]));
        break;
      }
    }
  }
  return leak;
}

}  // namespace sbtk
