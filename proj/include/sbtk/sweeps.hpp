#ifndef SBTK_SWEEPS_HPP
#define SBTK_SWEEPS_HPP

#include <functional>
#include <string>
#include <vector>

#include "sbtk/model.hpp"
#include "sbtk/scenario.hpp"
#include "sbtk/spectra.hpp"

namespace sbtk {

struct SweepOptions {
  enum class Frame { automatic, lab, polaron };
  Frame frame = Frame::automatic;  // automatic: polaron for g >= 2
  int n_max = 0;                   // 0: displacement-tail-driven policy
  std::size_t state_cap = FockBasis::default_state_cap;
  double trunc_rtol = 1e-8;
  int trunc_max_steps = 3;
  SolveOptions solver;
  int threads = 0;       // 0: hardware concurrency
  double weyl_h = 1.0;   // coupling of the counterexample family
  double split_mass = -1.0;  // polaron split; < 0: half the grid minimum
};

/*
 * One row per sweep point.  Every row carries the truncation-error column;
 * flagged rows did not stabilise within the ladder and are excluded from
 * trend assertions.
 */
struct SweepReport {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<bool> flagged;
  std::vector<std::string> summary;

  double at(std::size_t row, const std::string& column) const;
};

// Ground-state asymptotics of the fiber family at growing coupling on a
// massive grid: shifted energy, coherent overlap, number defect.
SweepReport sweep_strong_coupling(const ModeGrid& grid, double eta, const std::vector<double>& gs,
                                  const SweepOptions& opts = {});

// In-gap census of the full Hamiltonian and the fiber splitting per coupling.
SweepReport sweep_excited_state(const ModeGrid& grid, double eta, const std::vector<double>& gs,
                                const SweepOptions& opts = {});

// Self-energy renormalisation sweep over the running cutoff family.
SweepReport sweep_uv_renormalization(const ScenarioSpec& family, double eta,
                                     const std::vector<double>& lambdas,
                                     const SweepOptions& opts = {});

// Massless infrared-regular coupling sweep (eta <= 0): shifted energy,
// number defect at g^2 scale, lab-frame parity expectation.
SweepReport sweep_massless(const ModeGrid& grid, double eta, const std::vector<double>& gs,
                           const SweepOptions& opts = {});

// Infrared-divergent family: the displaced fiber keeps a spectral point well
// below zero however large the family parameter grows.
SweepReport counterexample_demo(const ScenarioSpec& family, double eta, double h,
                                const std::vector<double>& gs, const SweepOptions& opts = {});

// Regularised integral of |v|^2/(omega - m + eps) on a refined continuum
// grid, with a log-divergence fit (criterion for an excited state).
SweepReport gap_criterion_diagnostic(const ScenarioSpec& preset,
                                     const std::vector<double>& epsilons);

double gap_criterion_integral(double mass, double cutoff, int nu, double amplitude, double eps);

struct SummabilityReport {
  double p = 0.0;
  double x = 0.0;  // g^2 ||omega^-1 v||^2
  bool finite = false;
  double partial_sum = 0.0;
  double last_ratio = 0.0;  // term ratio at the stopping index
  int terms = 0;
  double sector_sum = -1.0;   // sum_n f(n)^2 ||psi^(n)||^2 when a state is supplied
  bool sector_bounded = true; // sector_sum <= alpha (finite case)
};

// Ratio test for sum_n f(n)^2 x^n / n! with f(n) = (n!)^(1/p), cross-checked
// against the per-sector norms of a computed ground state when supplied.
SummabilityReport summability_check(const ModeGrid& grid, double g, double p,
                                    const FockVector* psi = nullptr);

struct TruncationEstimate {
  double value = 0.0;
  double error = 0.0;
  int n_used = 0;
  bool stabilized = false;
};

// Evaluate an observable on an n_max ladder until successive change drops
// below rtol (relative); the last change is the error bar.
TruncationEstimate truncation_estimate(const std::function<double(int)>& observable, int n_start,
                                       int step, double rtol, int max_steps = 4);

}  // namespace sbtk

#endif
