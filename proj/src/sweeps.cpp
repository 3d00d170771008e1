#include "sbtk/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sbtk/dense_linalg.hpp"
#include "sbtk/parallel.hpp"

namespace sbtk {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

int tail_driven_nmax(double cloud, int floor_n, int extra) {
  // coherent cloud of squared norm `cloud` plus a few standard deviations
  double n = cloud + 7.0 * std::sqrt(std::max(cloud, 1.0)) + extra;
  return std::max(floor_n, static_cast<int>(std::ceil(n)));
}

std::vector<double> sorted_params(std::vector<double> xs, const char* who) {
  require(!xs.empty(), std::string(who) + ": empty sweep parameter list");
  std::sort(xs.begin(), xs.end());
  return xs;
}

SolveOptions ground_mode(const SweepOptions& opts, std::size_t dim) {
  SolveOptions s = opts.solver;
  if (s.mode == SolveOptions::Mode::automatic && dim > 800) {
    s.mode = SolveOptions::Mode::iterative;  // only low pairs are needed
  }
  return s;
}

double polaron_split(const SweepOptions& opts, const ModeGrid& grid) {
  return opts.split_mass > 0.0 ? opts.split_mass : 0.5 * grid.min_omega();
}

ModeGrid inverse_frequency_coupling(const ModeGrid& grid) {
  ModeGrid out = grid;
  for (int j = 0; j < grid.mode_count(); ++j) out.v[j] = grid.v[j] / grid.omega[j];
  return out;
}

struct StrongPoint {
  double fiber_energy = 0.0;
  double delta = 0.0;
  double overlap = 0.0;
  double number_lab = 0.0;
  double nu1 = 0.0;
};

StrongPoint strong_point_polaron(const ModeGrid& grid, double eta, double g, double split,
                                 int n_max, const SweepOptions& opts) {
  ModelParams p{eta, g, grid, n_max, opts.state_cap};
  BasisPtr basis = FockBasis::enumerate(grid.mode_count(), n_max, false, opts.state_cap);
  PolaronFrame frame = build_polaron_frame(p, split, basis);
  SpectralResult r = eigensolve(frame.op, 1, ground_mode(opts, basis->fock_size()));
  FockVector psi = eigenvector_of(r, basis);

  const double c_half_full = grid.weighted_norm2(0.5);
  const double c_one_full = grid.weighted_norm2(1.0);
  double c_half_high = frame.energy_shift / (g > 0 ? g * g : 1.0);
  if (g == 0.0) c_half_high = 0.0;

  StrongPoint out;
  out.delta = r.ground_energy + g * g * (c_half_full - c_half_high);
  out.fiber_energy = out.delta - g * g * c_half_full;
  out.overlap = std::abs(psi.coeff[0]);

  // lab-frame number through the displaced frame:
  //   <N>_lab = <psi, (N - phi(g w^-1 v_high) + g^2 |w^-1 v_high|^2) psi>
  ModeGrid high = grid;
  double c_one_high = 0.0;
  for (int j = 0; j < grid.mode_count(); ++j) {
    if (grid.omega[j] > split) {
      c_one_high += std::norm(grid.v[j]) / (grid.omega[j] * grid.omega[j]);
    } else {
      high.v[j] = 0.0;
    }
  }
  double n_pol = expectation(number_operator(basis), psi);
  double phi_pol = expectation(field(basis, inverse_frequency_coupling(high)), psi);
  out.number_lab = n_pol - g * phi_pol + g * g * c_one_high;
  out.nu1 = g > 0.0 ? (out.number_lab - g * g * c_one_full) / g : 0.0;
  return out;
}

StrongPoint strong_point_lab(const ModeGrid& grid, double eta, double g, int n_max,
                             const SweepOptions& opts) {
  ModelParams p{eta, g, grid, n_max, opts.state_cap};
  BasisPtr basis = FockBasis::enumerate(grid.mode_count(), n_max, false, opts.state_cap);
  AssembledOperator F = build_fiber(p, basis);
  SpectralResult r = eigensolve(F, 1, ground_mode(opts, basis->fock_size()));
  FockVector psi = eigenvector_of(r, basis);

  StrongPoint out;
  out.fiber_energy = r.ground_energy;
  out.delta = r.ground_energy + g * g * grid.weighted_norm2(0.5);
  std::vector<Complex> disp(grid.mode_count());
  for (int j = 0; j < grid.mode_count(); ++j) disp[j] = -g * grid.v[j] / grid.omega[j];
  FockVector coh = coherent_vector(basis, disp, true);
  out.overlap = std::abs(inner(coh, psi));
  out.number_lab = expectation(number_operator(basis), psi);
  out.nu1 = g > 0.0 ? (out.number_lab - g * g * grid.weighted_norm2(1.0)) / g : 0.0;
  return out;
}

}  // namespace

double SweepReport::at(std::size_t row, const std::string& column) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == column) return rows.at(row).at(c);
  }
  fail("SweepReport: unknown column '" + column + "'");
}

TruncationEstimate truncation_estimate(const std::function<double(int)>& observable, int n_start,
                                       int step, double rtol, int max_steps) {
  require(step >= 1 && max_steps >= 1, "truncation_estimate: bad ladder");
  TruncationEstimate est;
  double prev = observable(n_start);
  est.value = prev;
  est.n_used = n_start;
  est.error = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= max_steps; ++i) {
    int n = n_start + i * step;
    double val = observable(n);
    est.error = std::abs(val - prev);
    est.value = val;
    est.n_used = n;
    if (est.error <= rtol * std::max(1.0, std::abs(val))) {
      est.stabilized = true;
      return est;
    }
    prev = val;
  }
  return est;
}

SweepReport sweep_strong_coupling(const ModeGrid& grid, double eta, const std::vector<double>& gs_in,
                                  const SweepOptions& opts) {
  grid.validate();
  const std::vector<double> gs = sorted_params(gs_in, "sweep_strong_coupling");
  require(grid.min_omega() > 0.0, "sweep_strong_coupling: massive grid required");
  SweepReport rep;
  rep.kind = "strong_coupling";
  rep.columns = {"g",   "fiber_energy", "delta",       "overlap",  "number_lab",
                 "nu1", "crosscheck",   "trunc_error", "trunc_flag"};
  rep.rows.assign(gs.size(), {});
  rep.flagged.assign(gs.size(), false);

  const double split = polaron_split(opts, grid);
  const double c_one = grid.weighted_norm2(1.0);

  parallel_for_ordered(gs.size(), opts.threads, [&](std::size_t i) {
    const double g = gs[i];
    require(g >= 0.0, "sweep_strong_coupling: negative coupling");
    bool polaron = opts.frame == SweepOptions::Frame::polaron ||
                   (opts.frame == SweepOptions::Frame::automatic && g >= 2.0);

    StrongPoint point;
    int n0;
    if (polaron) {
      double cloud = 4.0 * g * g * c_one;
      n0 = opts.n_max > 0 ? opts.n_max : tail_driven_nmax(cloud, 40, 25);
    } else {
      double cloud = g * g * c_one;
      n0 = opts.n_max > 0 ? opts.n_max : tail_driven_nmax(cloud, 40, 25);
    }
    auto observable = [&](int n) {
      point = polaron ? strong_point_polaron(grid, eta, g, split, n, opts)
                      : strong_point_lab(grid, eta, g, n, opts);
      return point.delta;
    };
    TruncationEstimate est =
        truncation_estimate(observable, n0, std::max(4, n0 / 32), opts.trunc_rtol,
                            opts.trunc_max_steps);

    // lab-frame cross-check of the displaced-frame observables when cheap
    double crosscheck = kNaN;
    if (polaron) {
      double lab_cloud = g * g * c_one;
      int n_lab = tail_driven_nmax(lab_cloud, 40, 25);
      std::size_t lab_dim = 0;
      try {
        lab_dim = FockBasis::dimension(grid.mode_count(), n_lab, 20000);
      } catch (const std::exception&) {
        lab_dim = 0;
      }
      if (lab_dim > 0) {
        StrongPoint lab = strong_point_lab(grid, eta, g, n_lab, opts);
        crosscheck = std::max(std::abs(lab.delta - point.delta),
                              std::abs(lab.number_lab - point.number_lab));
      }
    }
    rep.rows[i] = {g,         point.fiber_energy, point.delta, point.overlap, point.number_lab,
                   point.nu1, crosscheck,         est.error,   est.stabilized ? 0.0 : 1.0};
    rep.flagged[i] = !est.stabilized;
  });
  return rep;
}

SweepReport sweep_excited_state(const ModeGrid& grid, double eta, const std::vector<double>& gs_in,
                                const SweepOptions& opts) {
  grid.validate();
  const std::vector<double> gs = sorted_params(gs_in, "sweep_excited_state");
  require(grid.min_omega() > 0.0, "sweep_excited_state: massive grid required");
  SweepReport rep;
  rep.kind = "excited_state";
  rep.columns = {"g",         "energy_minus", "energy_plus", "splitting",  "gap_count",
                 "ambiguous", "gap_edge",     "trunc_error", "trunc_flag"};
  rep.rows.assign(gs.size(), {});
  rep.flagged.assign(gs.size(), false);
  const double m = grid.min_omega();
  const double c_one = grid.weighted_norm2(1.0);

  parallel_for_ordered(gs.size(), opts.threads, [&](std::size_t i) {
    const double g = gs[i];
    int n0 = opts.n_max > 0 ? opts.n_max : tail_driven_nmax(g * g * c_one, 40, 30);

    double e_minus = 0.0, e_plus = 0.0;
    GapCensus census;
    auto observable = [&](int n) {
      BasisPtr basis = FockBasis::enumerate(grid.mode_count(), n, false, opts.state_cap);
      ModelParams pm{-std::abs(eta), g, grid, n, opts.state_cap};
      ModelParams pp{+std::abs(eta), g, grid, n, opts.state_cap};
      SolveOptions solver = opts.solver;
      int k = 12;
      SpectralResult rm, rp;
      while (true) {
        rm = eigensolve(build_fiber(pm, basis), k, solver);
        rp = eigensolve(build_fiber(pp, basis), k, solver);
        e_minus = rm.ground_energy;
        e_plus = rp.ground_energy;
        // full-Hamiltonian census: union of the two fiber spectra
        SpectralResult merged;
        merged.eigenvalues = rm.eigenvalues;
        merged.eigenvalues.insert(merged.eigenvalues.end(), rp.eigenvalues.begin(),
                                  rp.eigenvalues.end());
        std::sort(merged.eigenvalues.begin(), merged.eigenvalues.end());
        merged.ground_energy = merged.eigenvalues.front();
        census = gap_census(merged, m);
        if (census.complete || static_cast<std::size_t>(k) >= basis->fock_size() || k >= 96) break;
        k *= 2;
      }
      return e_plus - e_minus;
    };
    TruncationEstimate est = truncation_estimate(observable, n0, std::max(4, n0 / 32),
                                                 opts.trunc_rtol, opts.trunc_max_steps);
    rep.rows[i] = {g,
                   e_minus,
                   e_plus,
                   e_plus - e_minus,
                   double(census.count),
                   double(census.ambiguous),
                   census.gap_edge,
                   est.error,
                   est.stabilized ? 0.0 : 1.0};
    rep.flagged[i] = !est.stabilized;
  });

  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (!rep.flagged[i] && rep.at(i, "gap_count") >= 2.0) {
      std::ostringstream os;
      os << "first coupling with at least two in-gap levels: g0 = " << rep.rows[i][0];
      rep.summary.push_back(os.str());
      break;
    }
  }
  return rep;
}

SweepReport sweep_uv_renormalization(const ScenarioSpec& family, double eta,
                                     const std::vector<double>& lambdas_in,
                                     const SweepOptions& opts) {
  const std::vector<double> lambdas = sorted_params(lambdas_in, "sweep_uv_renormalization");
  require(family.kind == ScenarioKind::spin_boson_3d_cutoff,
          "sweep_uv_renormalization: needs the running-cutoff family");
  SweepReport rep;
  rep.kind = "uv_renorm";
  rep.columns = {"lambda",         "c_shift",        "uv_divergence",  "energy_eta_shifted",
                 "energy_zero_shifted", "eta_gap",   "resolvent_diff", "fiber_diff",
                 "vanhove_target", "trunc_error",    "trunc_flag"};
  rep.rows.assign(lambdas.size(), {});
  rep.flagged.assign(lambdas.size(), false);
  const int n_max = opts.n_max > 0 ? opts.n_max : 8;
  const double mtilde = family.ir_split;

  parallel_for_ordered(lambdas.size(), opts.threads, [&](std::size_t i) {
    const double L = lambdas[i];
    ModeGrid grid = make_scenario(family, L);
    const int M = grid.mode_count();

    double c_shift = 0.0, uv_div = 0.0, vanhove = 0.0;
    ModeGrid ir = grid;
    for (int j = 0; j < M; ++j) {
      if (grid.omega[j] > mtilde) {
        c_shift += std::norm(grid.v[j]) / grid.omega[j];
        uv_div += std::norm(grid.v[j]) / (grid.omega[j] * grid.omega[j]);
        ir.v[j] = 0.0;
      } else {
        vanhove += std::norm(grid.v[j]) / grid.omega[j];
      }
    }

    BasisPtr basis = FockBasis::enumerate(M, n_max, false, opts.state_cap);
    SolveOptions dense = opts.solver;
    dense.mode = SolveOptions::Mode::dense;

    auto fiber_eig = [&](double e, int n) {
      ModelParams p{e, 1.0, grid, n, opts.state_cap};
      BasisPtr b = n == n_max ? basis : FockBasis::enumerate(M, n, false, opts.state_cap);
      Eigen::MatrixXd F = build_fiber(p, b).dense_real();
      return symmetric_eigh(F, true);
    };
    EighResult em = fiber_eig(-std::abs(eta), n_max);
    EighResult ep = fiber_eig(+std::abs(eta), n_max);
    EighResult e0 = fiber_eig(0.0, n_max);

    auto resolvent = [&](const EighResult& e) {
      Eigen::ArrayXcd d = 1.0 / (e.values.array().cast<Complex>() + Complex(c_shift, 1.0));
      return Eigen::MatrixXcd((e.vectors.cast<Complex>().array().rowwise() * d.transpose())
                                  .matrix() *
                              e.vectors.transpose().cast<Complex>());
    };
    Eigen::MatrixXcd r0 = resolvent(e0);
    double resdiff = std::max(spectral_norm(Eigen::MatrixXcd(resolvent(em) - r0)),
                              spectral_norm(Eigen::MatrixXcd(resolvent(ep) - r0)));

    // displaced-frame fiber against its renormalised limit
    ModelParams pf{eta, 1.0, grid, n_max, opts.state_cap};
    PolaronFrame frame = build_polaron_frame(pf, mtilde, basis);
    EighResult ef = symmetric_eigh(frame.op.dense_real(), true);
    ModelParams pb{0.0, 1.0, ir, n_max, opts.state_cap};
    EighResult eb = symmetric_eigh(build_fiber(pb, basis).dense_real(), true);
    auto unit_resolvent = [&](const EighResult& e) {
      Eigen::ArrayXcd d = 1.0 / (e.values.array().cast<Complex>() + Complex(0.0, 1.0));
      return Eigen::MatrixXcd((e.vectors.cast<Complex>().array().rowwise() * d.transpose())
                                  .matrix() *
                              e.vectors.transpose().cast<Complex>());
    };
    double fibdiff = spectral_norm(Eigen::MatrixXcd(unit_resolvent(ef) - unit_resolvent(eb)));

    // truncation estimate on the shifted ground energy
    double e_eta_n1 = fiber_eig(-std::abs(eta), n_max + 1).values[0] + c_shift;
    double e_eta = em.values[0] + c_shift;
    double trunc = std::abs(e_eta_n1 - e_eta);
    bool stab = trunc <= opts.trunc_rtol * std::max(1.0, std::abs(e_eta_n1));

    rep.rows[i] = {L,
                   c_shift,
                   uv_div,
                   e_eta,
                   e0.values[0] + c_shift,
                   std::abs(em.values[0] - e0.values[0]),
                   resdiff,
                   fibdiff,
                   -vanhove,
                   trunc,
                   stab ? 0.0 : 1.0};
    rep.flagged[i] = !stab;
  });

  // the family must actually be ultraviolet-divergent across the sweep
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (!(rep.at(i, "uv_divergence") > rep.at(i - 1, "uv_divergence"))) {
      fail("sweep_uv_renormalization: ||omega^-1 v|| fails to grow along the cutoff list; "
           "the scenario is misconfigured");
    }
  }
  return rep;
}

SweepReport sweep_massless(const ModeGrid& grid, double eta, const std::vector<double>& gs_in,
                           const SweepOptions& opts) {
  grid.validate();
  const std::vector<double> gs = sorted_params(gs_in, "sweep_massless");
  require(eta <= 0.0, "sweep_massless: eta must be nonpositive");
  SweepReport rep;
  rep.kind = "massless";
  rep.columns = {"g",   "delta",       "nu2",        "parity_expectation",
                 "number_lab", "trunc_error", "trunc_flag"};
  rep.rows.assign(gs.size(), {});
  rep.flagged.assign(gs.size(), false);
  const double split = polaron_split(opts, grid);
  const double c_one = grid.weighted_norm2(1.0);

  parallel_for_ordered(gs.size(), opts.threads, [&](std::size_t i) {
    const double g = gs[i];
    int n0 = opts.n_max > 0 ? opts.n_max : tail_driven_nmax(4.0 * g * g * c_one, 12, 10);

    double nu2 = 0.0, parity_exp = 0.0, number_lab = 0.0;
    auto observable = [&](int n) {
      BasisPtr basis = FockBasis::enumerate(grid.mode_count(), n, false, opts.state_cap);
      ModelParams p{eta, g, grid, n, opts.state_cap};
      PolaronFrame frame = build_polaron_frame(p, split, basis);
      SpectralResult r = eigensolve(frame.op, 1, ground_mode(opts, basis->fock_size()));
      FockVector psi = eigenvector_of(r, basis);
      parity_exp = expectation(frame.weyl, psi);
      ModeGrid high = grid;
      double c_one_high = 0.0;
      for (int j = 0; j < grid.mode_count(); ++j) {
        if (grid.omega[j] > split)
          c_one_high += std::norm(grid.v[j]) / (grid.omega[j] * grid.omega[j]);
        else
          high.v[j] = 0.0;
      }
      double n_pol = expectation(number_operator(basis), psi);
      double phi_pol = expectation(field(basis, inverse_frequency_coupling(high)), psi);
      number_lab = n_pol - g * phi_pol + g * g * c_one_high;
      nu2 = g > 0.0 ? (number_lab - g * g * c_one) / (g * g) : 0.0;
      // the default split displaces every mode, making the two shifts cancel
      return r.ground_energy + g * g * grid.weighted_norm2(0.5) - frame.energy_shift;
    };
    TruncationEstimate est = truncation_estimate(observable, n0, std::max(3, n0 / 32),
                                                 opts.trunc_rtol, opts.trunc_max_steps);
    rep.rows[i] = {g,          est.value,  nu2,
                   parity_exp, number_lab, est.error,
                   est.stabilized ? 0.0 : 1.0};
    rep.flagged[i] = !est.stabilized;
  });
  return rep;
}

SweepReport counterexample_demo(const ScenarioSpec& family, double eta, double h,
                                const std::vector<double>& gs_in, const SweepOptions& opts) {
  const std::vector<double> gs = sorted_params(gs_in, "counterexample_demo");
  require(family.kind == ScenarioKind::counterexample_3d,
          "counterexample_demo: needs the infrared-divergent family");
  require(eta < 0.0, "counterexample_demo: eta must be negative");
  require(h != 0.0, "counterexample_demo: coupling h must be nonzero");
  SweepReport rep;
  rep.kind = "counterexample";
  rep.columns = {"g",           "weyl_norm2",     "half_norm2",  "ground",
                 "vacuum_bound", "coherent_bound", "trunc_error", "trunc_flag"};
  rep.rows.assign(gs.size(), {});
  rep.flagged.assign(gs.size(), false);

  parallel_for_ordered(gs.size(), opts.threads, [&](std::size_t i) {
    const double g = gs[i];
    ModeGrid grid = make_scenario(family, g);
    const double n1 = grid.weighted_norm2(1.0);
    const double nh = grid.weighted_norm2(0.5);
    int n0 = opts.n_max > 0 ? opts.n_max : tail_driven_nmax(4.0 * h * h * n1, 12, 10);

    auto observable = [&](int n) {
      BasisPtr basis = FockBasis::enumerate(grid.mode_count(), n, false, opts.state_cap);
      ModelParams p{eta, std::abs(h), grid, n, opts.state_cap};
      PolaronFrame frame = build_polaron_frame(p, 0.5 * grid.min_omega(), basis);
      SpectralResult r = eigensolve(frame.op, 1, ground_mode(opts, basis->fock_size()));
      return r.ground_energy;
    };
    TruncationEstimate est = truncation_estimate(observable, n0, std::max(3, n0 / 32),
                                                 opts.trunc_rtol, opts.trunc_max_steps);
    rep.rows[i] = {g,
                   n1,
                   nh,
                   est.value,
                   eta * std::exp(-2.0 * h * h * n1),
                   eta + h * h * nh,
                   est.error,
                   est.stabilized ? 0.0 : 1.0};
    rep.flagged[i] = !est.stabilized;
  });

  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (!(rep.at(i, "weyl_norm2") > rep.at(i - 1, "weyl_norm2"))) {
      fail("counterexample_demo: ||omega^-1 v_g|| fails to grow along the sweep; "
           "the scenario is misconfigured");
    }
  }
  return rep;
}

double gap_criterion_integral(double mass, double cutoff, int nu, double amplitude, double eps) {
  require(mass > 0.0 && cutoff > mass, "gap_criterion_integral: need cutoff > mass > 0");
  require(nu == 2 || nu == 3, "gap_criterion_integral: nu in {2,3}");
  require(eps > 0.0, "gap_criterion_integral: eps must be positive");
  if (amplitude == 0.0) return 0.0;
  const double K = std::sqrt(cutoff * cutoff - mass * mass);
  // geometric panels refine toward k = 0 where omega approaches the mass
  const int panels = 80, nodes = 16;
  std::vector<double> x, w;
  double total = 0.0;
  double lo = 1e-9 * K;
  const double ratio = std::pow(K / lo, 1.0 / panels);
  // [0, lo] start segment contributes O(lo^nu); fold it in with one panel
  double a = 0.0, b = lo;
  for (int ppp = 0; ppp <= panels; ++ppp) {
    gauss_legendre(nodes, a, b, x, w);
    for (int q = 0; q < nodes; ++q) {
      double omega = std::sqrt(mass * mass + x[q] * x[q]);
      double integrand = amplitude * amplitude * std::pow(x[q], nu - 1) /
                         (omega * (omega - mass + eps));
      total += w[q] * integrand;
    }
    a = b;
    b = std::min(K, b * ratio);
    if (a >= K) break;
  }
  return total;
}

SweepReport gap_criterion_diagnostic(const ScenarioSpec& preset,
                                     const std::vector<double>& epsilons) {
  require(preset.kind == ScenarioKind::massive_generic,
          "gap_criterion_diagnostic: physical massive preset expected");
  require(epsilons.size() >= 2, "gap_criterion_diagnostic: need at least two epsilons");
  SweepReport rep;
  rep.kind = "gap_criterion";
  rep.columns = {"epsilon", "integral", "fit_r2", "fit_slope", "ratio", "criterion_satisfied"};

  std::vector<double> eps_sorted = sorted_params(epsilons, "gap_criterion_diagnostic");
  std::vector<double> I;
  for (double e : eps_sorted)
    I.push_back(gap_criterion_integral(preset.mass, preset.cutoff, preset.nu, preset.amplitude, e));

  // linear fit of I against log(1/eps)
  const std::size_t n = eps_sorted.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double xi = std::log(1.0 / eps_sorted[i]);
    sx += xi;
    sy += I[i];
    sxx += xi * xi;
    sxy += xi * I[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double icept = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double xi = std::log(1.0 / eps_sorted[i]);
    ss_res += (I[i] - slope * xi - icept) * (I[i] - slope * xi - icept);
    ss_tot += (I[i] - sy / n) * (I[i] - sy / n);
  }
  double r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  // rows run from the smallest epsilon up; the divergence ratio compares the
  // tightest regularisation against the loosest
  double ratio = I.back() > 0.0 ? I.front() / I.back() : 0.0;

  bool satisfied = preset.nu <= 2 ? (r2 >= 0.99 && slope > 0.0) : false;
  for (std::size_t i = 0; i < n; ++i) {
    rep.rows.push_back({eps_sorted[i], I[i], r2, slope, ratio, satisfied ? 1.0 : 0.0});
    rep.flagged.push_back(false);
  }
  std::ostringstream os;
  os << "log-fit R^2 = " << r2 << ", slope = " << slope << ", I(min)/I(max) = " << ratio
     << " -> criterion " << (satisfied ? "satisfied" : "violated");
  rep.summary.push_back(os.str());
  return rep;
}

SummabilityReport summability_check(const ModeGrid& grid, double g, double p,
                                    const FockVector* psi) {
  require(p > 0.0, "summability_check: p must be positive");
  SummabilityReport rep;
  rep.p = p;
  rep.x = g * g * grid.weighted_norm2(1.0);
  const double expo = 1.0 - 2.0 / p;  // term_n = x^n / (n!)^expo

  if (rep.x == 0.0) {
    rep.finite = true;
    rep.partial_sum = 1.0;
    rep.terms = 1;
  } else {
    double logx = std::log(rep.x);
    double sum = 0.0, ratio = 0.0;
    int n = 0;
    bool finite = false, divergent = false;
    for (; n < 400; ++n) {
      double logterm = n * logx - expo * std::lgamma(double(n) + 1.0);
      if (logterm > 300.0) {
        divergent = true;
        break;
      }
      double term = std::exp(logterm);
      sum += term;
      ratio = rep.x / std::pow(double(n + 1), expo);
      if (n > 2 && ratio < 1.0 && term < 1e-18 * sum) {
        finite = true;
        break;
      }
    }
    if (!finite && !divergent) divergent = ratio >= 1.0;
    rep.finite = finite;
    rep.partial_sum = sum;
    rep.last_ratio = ratio;
    rep.terms = n + 1;
  }

  if (psi != nullptr) {
    const BasisPtr& basis = psi->basis;
    require(!basis->with_qubit(), "summability_check: fiber state expected");
    rep.sector_sum = 0.0;
    for (int n = 0; n <= basis->n_max(); ++n) {
      double s2 = 0.0;
      for (std::size_t i = basis->sector_begin(n); i < basis->sector_begin(n + 1); ++i)
        s2 += std::norm(psi->coeff[static_cast<long>(i)]);
      rep.sector_sum += std::exp((2.0 / p) * std::lgamma(double(n) + 1.0)) * s2;
    }
    rep.sector_bounded = !rep.finite || rep.sector_sum <= rep.partial_sum * (1.0 + 1e-12) + 1e-12;
  }
  return rep;
}

}  // namespace sbtk
