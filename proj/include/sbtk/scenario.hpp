#ifndef SBTK_SCENARIO_HPP
#define SBTK_SCENARIO_HPP

#include <string>
#include <vector>

#include "sbtk/mode_grid.hpp"

namespace sbtk {

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

enum class ScenarioKind {
  single_mode,
  explicit_modes,
  massive_generic,
  spin_boson_3d_cutoff,
  massless_infrared_regular,
  counterexample_3d,
};

/*
 * Scenario presets.  Radial kinds discretise a rotation-invariant continuum
 * model with measure k^(nu-1) dk (angular constants folded into `amplitude`):
 *
 *   massive_generic          omega = sqrt(mass^2 + k^2), v = amplitude/sqrt(omega)
 *                            on omega <= cutoff; an explicit zero-coupling
 *                            anchor mode at omega = mass realises min omega = mass.
 *   spin_boson_3d_cutoff     massless physical family, v = amplitude/sqrt(omega)
 *                            below the running cutoff; fixed infrared segment
 *                            [0, ir_split] so the renormalisation comparisons
 *                            share their low-frequency part across cutoffs.
 *   massless_infrared_regular massless with v = amplitude * k * exp(-k), which
 *                            keeps omega^-1 v square-summable.
 *   counterexample_3d        v = amplitude/sqrt(omega) on [1/g, 2]; the family
 *                            parameter g pushes the support into the infrared
 *                            so norm(omega^-1 v_g) grows without bound.
 */
struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::single_mode;

  // single_mode / explicit_modes
  std::vector<double> omega_list{1.0};
  std::vector<double> coupling_list{1.0};

  // radial kinds
  double mass = 1.0;
  double cutoff = 2.0;
  int nu = 3;
  int nodes = 32;
  double amplitude = 1.0;
  double ir_split = 1.0;  // mtilde for the cutoff family
  int ir_nodes = 2;
  int uv_nodes = 3;
  double range = 6.0;  // support end for the massless kind
  bool gap_anchor = true;

  void validate() const;
  bool is_family() const {
    return kind == ScenarioKind::spin_boson_3d_cutoff || kind == ScenarioKind::counterexample_3d;
  }
};

// Fixed-parameter kinds.
ModeGrid make_scenario(const ScenarioSpec& spec);
// Cutoff/coupling families: param is the running cutoff for
// spin_boson_3d_cutoff and the support parameter g for counterexample_3d.
ModeGrid make_scenario(const ScenarioSpec& spec, double family_param);

ScenarioSpec preset_by_name(const std::string& name);
std::vector<std::string> preset_names();
const char* kind_name(ScenarioKind kind);

}  // namespace sbtk

#endif
