// Acceptance suite: one pass/fail line per criterion.  Thresholds for the
// trend criteria were frozen from a dense reference run performed before
// this implementation was written; each criterion states its tolerance
// inline.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "sbtk/check_suites.hpp"
#include "sbtk/ground_state_checks.hpp"
#include "sbtk/model.hpp"
#include "sbtk/report_io.hpp"
#include "sbtk/sweeps.hpp"

using namespace sbtk;

namespace {

int failures = 0;
int criterion_no = 0;

struct GroundStateRecord {
  std::string tag;
  ModelParams params;
  FockVector psi;  // phase-fixed fiber ground state, eta <= 0
};
std::vector<GroundStateRecord> collected_states;

void record_state(const std::string& tag, const ModelParams& p, FockVector psi) {
  phase_fix(psi);
  collected_states.push_back({tag, p, std::move(psi)});
}

void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
  ++criterion_no;
  std::string detail;
  bool pass = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("threw: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] criterion %2d: %s  (%.1fs)%s%s\n", pass ? "PASS" : "FAIL", criterion_no,
              name.c_str(), dt, detail.empty() ? "" : "  -- ", detail.c_str());
  if (!pass) ++failures;
}

bool strictly_decreasing(const SweepReport& r, const std::string& col, std::size_t from = 1) {
  for (std::size_t i = from; i < r.rows.size(); ++i) {
    if (!(r.at(i, col) < r.at(i - 1, col))) return false;
  }
  return true;
}

GroundStateRecord fiber_ground(const std::string& tag, double eta, double g, const ModeGrid& grid,
                               int n_max) {
  ModelParams p{eta, g, grid, n_max};
  BasisPtr basis = enumerate_basis(grid.mode_count(), n_max, false);
  SpectralResult r = eigensolve(build_fiber(p, basis), 1);
  FockVector psi = eigenvector_of(r, basis);
  phase_fix(psi);
  return {tag, p, psi};
}

}  // namespace

int main() {
  setenv("OPENBLAS_NUM_THREADS", "1", 0);
  std::setvbuf(stdout, nullptr, _IONBF, 0);

  // 1. exactly solvable single-mode ground energy, within 1e-8, under 1 s
  criterion("van hove exactness (ground -0.25 within 1e-8, < 1s)", [](std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    ModelParams p{0.0, 1.0, make_single_mode(1.0, 0.5), 40};
    BasisPtr basis = enumerate_basis(1, 40, false);
    SpectralResult r = eigensolve(build_fiber(p, basis), 1);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    record_state("van_hove", p, eigenvector_of(r, basis));
    char buf[128];
    std::snprintf(buf, sizeof(buf), "E=%.12e, %.3fs", r.ground_energy, dt);
    detail = buf;
    return std::abs(r.ground_energy + 0.25) <= 1e-8 && dt < 1.0;
  });

  // 2. full-Hamiltonian spectrum equals the fiber multiset union within 1e-10
  criterion("fiber decomposition (multiset match within 1e-10)", [](std::string& detail) {
    ModeGrid grid;
    grid.omega = {1.0, 2.0};
    grid.v = {0.7, 0.3};
    grid.weight = {1.0, 1.0};
    ModelParams p{0.4, 1.0, grid, 8};
    SpectralResult full = eigensolve(build_full(p), 1);
    ModelParams pm = p;
    pm.eta = -0.4;
    BasisPtr basis = enumerate_basis(2, 8, false);
    SpectralResult rm = eigensolve(build_fiber(pm, basis), 1);
    SpectralResult rp = eigensolve(build_fiber(p, basis), 1);
    record_state("fiber_decomposition", pm, eigenvector_of(rm, basis));
    std::vector<double> merged = rm.eigenvalues;
    merged.insert(merged.end(), rp.eigenvalues.begin(), rp.eigenvalues.end());
    std::sort(merged.begin(), merged.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < merged.size(); ++i)
      worst = std::max(worst, std::abs(merged[i] - full.eigenvalues[i]));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max deviation %.3e", worst);
    detail = buf;
    return worst <= 1e-10;
  });

  // 3. displaced-frame spectral identity on the lowest ten levels within 1e-6
  criterion("polaron identity (lowest 10 levels within 1e-6)", [](std::string& detail) {
    ModeGrid grid;
    grid.omega = {1.0, 2.0};
    grid.v = {0.7, 0.3};
    grid.weight = {1.0, 1.0};
    ModelParams p{0.4, 1.0, grid, 32};
    BasisPtr basis = enumerate_basis(2, 32, false);
    SpectralResult rf = eigensolve(build_fiber(p, basis), 1);
    PolaronFrame frame = build_polaron_frame(p, 0.5 * grid.min_omega(), basis);
    SpectralResult rt = eigensolve(frame.op, 1);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
      worst = std::max(worst,
                       std::abs(rt.eigenvalues[i] - rf.eigenvalues[i] - frame.energy_shift));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max deviation %.3e", worst);
    detail = buf;
    return worst <= 1e-6;
  });

  // 4. strong-coupling trends; endpoint thresholds frozen from the dense
  //    reference run: delta(16) = -9.775e-4, 1 - o(16) = 4.8e-7,
  //    nu1(16) = -6.12e-5
  criterion("strong-coupling trends (delta up; endpoint thresholds; < 1min)",
            [](std::string& detail) {
              auto t0 = std::chrono::steady_clock::now();
              ModeGrid grid = make_single_mode(1.0, 1.0);
              SweepReport r =
                  sweep_strong_coupling(grid, -1.0, {0.0, 1.0, 2.0, 4.0, 8.0, 12.0, 16.0});
              double dt =
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
              bool increasing = true;
              for (std::size_t i = 1; i < r.rows.size(); ++i)
                increasing = increasing && r.at(i, "delta") > r.at(i - 1, "delta");
              bool unflagged = true;
              for (bool f : r.flagged) unflagged = unflagged && !f;
              double d16 = r.at(6, "delta"), o16 = r.at(6, "overlap"), n16 = r.at(6, "nu1");
              char buf[160];
              std::snprintf(buf, sizeof(buf),
                            "delta(16)=%.3e, 1-o(16)=%.3e, nu1(16)=%.3e, %.1fs", d16, 1.0 - o16,
                            n16, dt);
              detail = buf;
              return increasing && unflagged && std::abs(d16) <= 2e-3 && 1.0 - o16 <= 1e-4 &&
                     std::abs(n16) <= 5e-4 && dt < 60.0;
            });

  // 5. excited state: the in-gap census reaches two and the splitting is
  //    positive everywhere and decreasing beyond the reported onset
  criterion("excited state (census reaches 2; splitting positive, then decreasing)",
            [](std::string& detail) {
              ModeGrid grid = make_single_mode(1.0, 1.0);
              SweepReport r =
                  sweep_excited_state(grid, -1.0, {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0});
              std::size_t g0 = r.rows.size();
              for (std::size_t i = 0; i < r.rows.size(); ++i) {
                if (r.at(i, "gap_count") >= 2.0) {
                  g0 = i;
                  break;
                }
              }
              bool positive = true, decreasing = true;
              for (std::size_t i = 0; i < r.rows.size(); ++i)
                positive = positive && r.at(i, "splitting") > 0.0;
              for (std::size_t i = g0 + 1; i < r.rows.size(); ++i)
                decreasing = decreasing && r.at(i, "splitting") < r.at(i - 1, "splitting");
              char buf[128];
              std::snprintf(buf, sizeof(buf), "g0=%g, splitting(3)=%.3e",
                            g0 < r.rows.size() ? r.rows[g0][0] : -1.0,
                            r.at(r.rows.size() - 1, "splitting"));
              detail = buf;
              return g0 < r.rows.size() && positive && decreasing;
            });

  // 6. ultraviolet renormalisation: both resolvent distances strictly
  //    decreasing along the cutoff list, under 5 minutes
  criterion("uv renormalisation (resolvent differences strictly decreasing; < 5min)",
            [](std::string& detail) {
              auto t0 = std::chrono::steady_clock::now();
              ScenarioSpec family = preset_by_name("spin_boson_3d_cutoff");
              SweepOptions opts;
              opts.solver.dense_cap = 4000;
              SweepReport r = sweep_uv_renormalization(family, -1.0, {2.0, 4.0, 8.0, 16.0}, opts);
              double dt =
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
              bool ok = strictly_decreasing(r, "resolvent_diff") &&
                        strictly_decreasing(r, "fiber_diff") && strictly_decreasing(r, "eta_gap");
              char buf[160];
              std::snprintf(buf, sizeof(buf), "resdiff %.3e..%.3e, fibdiff %.3e..%.3e, %.1fs",
                            r.at(0, "resolvent_diff"), r.at(3, "resolvent_diff"),
                            r.at(0, "fiber_diff"), r.at(3, "fiber_diff"), dt);
              detail = buf;
              return ok && dt < 300.0;
            });

  // 7. massless trends: |delta|, |nu2| and the parity expectation all
  //    decreasing over the coupled tail of the sweep
  criterion("massless trends (|delta|, |nu2|, |parity| decreasing on the tail)",
            [](std::string& detail) {
              ScenarioSpec spec = preset_by_name("massless_infrared_regular");
              ModeGrid grid = make_scenario(spec);
              SweepReport r = sweep_massless(grid, -1.0, {0.0, 2.0, 4.0, 8.0});
              bool ok = true;
              for (std::size_t i = 1; i < r.rows.size(); ++i) {
                ok = ok && std::abs(r.at(i, "delta")) < std::abs(r.at(i - 1, "delta"));
                ok = ok && std::abs(r.at(i, "parity_expectation")) <
                               std::abs(r.at(i - 1, "parity_expectation"));
                if (i >= 2)  // nu2 is defined for g > 0
                  ok = ok && std::abs(r.at(i, "nu2")) < std::abs(r.at(i - 1, "nu2"));
              }
              char buf[160];
              std::snprintf(buf, sizeof(buf), "delta: %.3e..%.3e, parity: %.3e..%.3e",
                            r.at(1, "delta"), r.at(3, "delta"), r.at(1, "parity_expectation"),
                            r.at(3, "parity_expectation"));
              detail = buf;
              return ok;
            });

  // 8. property suites, plus the ground-state structure checks on every
  //    eta <= 0 fiber ground state collected from the criteria above
  criterion("property suites and collected ground-state structure", [](std::string& detail) {
    bool ok = true;
    std::string failed;
    for (const std::string& name : check_suite_names()) {
      CheckReport rep = run_check_suite(name);
      if (!rep.pass()) {
        ok = false;
        failed += " " + name;
      }
    }
    // criteria 1-7 ground states (eta <= 0 fibers), collected along the way
    ModeGrid strong = make_single_mode(1.0, 1.0);
    collected_states.push_back(fiber_ground("strong_g1", -1.0, 1.0, strong, 60));
    collected_states.push_back(fiber_ground("strong_g2", -1.0, 2.0, strong, 80));
    collected_states.push_back(fiber_ground("excited_g1.5", -1.0, 1.5, strong, 70));
    ScenarioSpec ml = preset_by_name("massless_infrared_regular");
    collected_states.push_back(fiber_ground("massless_g2", -1.0, 2.0, make_scenario(ml), 16));
    ScenarioSpec uv = preset_by_name("spin_boson_3d_cutoff");
    collected_states.push_back(fiber_ground("uv_L4", -1.0, 1.0, make_scenario(uv, 4.0), 8));

    std::size_t checked = 0;
    for (const GroundStateRecord& rec : collected_states) {
      if (rec.params.eta > 0.0 || rec.params.g <= 0.0) continue;
      SignStructureReport s = sign_structure(rec.psi, rec.params.grid);
      PointwiseBoundReport b = pointwise_bound(rec.psi, rec.params.grid, rec.params.g);
      bool good = s.vacuum_component > 0.0 && s.min_signed_real >= -1e-10 &&
                  s.max_abs_imag <= 1e-10 && b.max_ratio <= 1.0 + 1e-6;
      if (!good) {
        ok = false;
        failed += " state:" + rec.tag;
      }
      ++checked;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "8 suites, %zu ground states%s%s", checked,
                  failed.empty() ? "" : "; failed:", failed.c_str());
    detail = buf;
    return ok && checked >= 5;
  });

  // 9. gap-criterion diagnostic: log fit in two dimensions, bounded in three
  criterion("gap criterion (nu=2 log fit R^2 >= 0.99; nu=3 ratio <= 2)", [](std::string& detail) {
    std::vector<double> eps = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    ScenarioSpec s2 = preset_by_name("massive_generic");
    s2.nu = 2;
    SweepReport r2 = gap_criterion_diagnostic(s2, eps);
    ScenarioSpec s3 = preset_by_name("massive_generic");
    s3.nu = 3;
    SweepReport r3 = gap_criterion_diagnostic(s3, eps);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "R^2(nu=2)=%.5f, ratio(nu=3)=%.3f", r2.at(0, "fit_r2"),
                  r3.at(0, "ratio"));
    detail = buf;
    return r2.at(0, "fit_r2") >= 0.99 && r2.at(0, "criterion_satisfied") == 1.0 &&
           r3.at(0, "ratio") <= 2.0;
  });

  // 10. infrared-divergent family: the displaced fiber stays at or below
  //     -0.5 |eta| across the sweep
  criterion("counterexample demo (ground stays <= -0.5 across g = 1, 10, 100)",
            [](std::string& detail) {
              ScenarioSpec family = preset_by_name("counterexample_3d");
              SweepReport r = counterexample_demo(family, -1.0, 1.0, {1.0, 10.0, 100.0});
              bool ok = true;
              for (std::size_t i = 0; i < r.rows.size(); ++i) {
                ok = ok && r.at(i, "ground") <= -0.5 && r.at(i, "ground") >= -1.0 - 1e-9;
              }
              char buf[128];
              std::snprintf(buf, sizeof(buf), "ground: %.4f, %.4f, %.4f", r.at(0, "ground"),
                            r.at(1, "ground"), r.at(2, "ground"));
              detail = buf;
              return ok;
            });

  std::printf("%d/%d criteria passed\n", criterion_no - failures, criterion_no);
  return failures == 0 ? 0 : 1;
}
