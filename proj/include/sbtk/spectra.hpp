#ifndef SBTK_SPECTRA_HPP
#define SBTK_SPECTRA_HPP

#include <cstdint>
#include <vector>

#include "sbtk/assembled_operator.hpp"
#include "sbtk/fock_vector.hpp"
#include "sbtk/mode_grid.hpp"

namespace sbtk {

struct SolveOptions {
  enum class Mode { automatic, dense, iterative };
  Mode mode = Mode::automatic;
  std::size_t dense_cap = 4000;
  int max_iterations = 600;
  double tolerance = 1e-10;  // residual, relative to |lambda| + ||A||_est
  std::uint64_t seed = 0x2545f4914f6cdd1dULL;
  bool want_vectors = true;
};

// Residual contract: every returned pair satisfies
// ||A psi - lambda psi|| <= 1e-8 (|lambda| + ||A||_est).
struct SpectralResult {
  std::vector<double> eigenvalues;  // ascending; dense mode returns the full spectrum
  Eigen::MatrixXcd vectors;         // dim x k, first k pairs
  double ground_energy = 0.0;
  double norm_estimate = 0.0;
  double max_residual = 0.0;
  int iterations = 0;  // 0 in dense mode
  bool dense_mode = true;
};

SpectralResult eigensolve(const AssembledOperator& A, int k, const SolveOptions& opt = {});

FockVector eigenvector_of(const SpectralResult& r, const BasisPtr& basis, int i = 0);

// Rotate so the vacuum component is real positive (largest-magnitude
// component when the vacuum weight is below 1e-12).  Returns the phase.
Complex phase_fix(FockVector& psi);

// Solve (A - lambda) x = rhs for lambda strictly below the spectrum, to a
// relative residual rtol.  Fails on an indefinite shift.
FockVector resolve(const AssembledOperator& A, double lambda, const FockVector& rhs,
                   double rtol = 1e-10);

// Residuals r_j = || a_j psi + g v_j (F_opp - (E - omega_j))^{-1} psi ||
// of the ground-state pull-through identity; F_opp is the opposite-parity
// fiber and E the converged ground energy (eta <= 0).
std::vector<double> pullthrough_residual(const AssembledOperator& F_opp, const ModeGrid& grid,
                                         double g, double ground_energy, const FockVector& psi);

struct FeshbachRow {
  double lambda;
  double lhs;     // <vac, (F - lambda)^{-1} vac>
  double rhs;     // (eta - lambda + <b, (F_reduced - lambda)^{-1} b>)^{-1}
  double defect;  // |lhs - rhs|
};

// Scalar resolvent identity between the full fiber and its vacuum-deleted
// compression, evaluated on a grid of shifts below the ground energy.
std::vector<FeshbachRow> feshbach_check(const AssembledOperator& F, const ModeGrid& grid,
                                        double eta, double g, double ground_energy,
                                        const std::vector<double>& lambdas);

// || exp(-t A) - exp(-t B) || per t, by dense eigendecomposition.
std::vector<double> semigroup_distance(const AssembledOperator& A, const AssembledOperator& B,
                                       const std::vector<double>& ts,
                                       std::size_t dense_cap = 4000);

struct GapCensus {
  int count = 0;                    // eigenvalues in [E, E + m)
  int ambiguous = 0;                // within 1e-9 of the edge, not counted
  bool complete = false;            // the computed spectrum reaches past the edge
  double gap_edge = 0.0;            // E + m
  std::vector<double> splittings;   // consecutive differences inside the gap
};

GapCensus gap_census(const SpectralResult& r, double m);

double expectation(const AssembledOperator& A, const FockVector& psi);

}  // namespace sbtk

#endif
