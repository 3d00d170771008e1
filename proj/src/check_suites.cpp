#include "sbtk/check_suites.hpp"

#include <cmath>

#include "sbtk/ground_state_checks.hpp"
#include "sbtk/model.hpp"
#include "sbtk/spectra.hpp"

namespace sbtk {

namespace {

void add(CheckReport& rep, const std::string& name, double value, double bound) {
  rep.items.push_back({name, value, bound, value <= bound});
}

ModeGrid two_mode_grid() {
  ModeGrid g;
  g.omega = {1.0, 2.0};
  g.v = {0.7, 0.3};
  g.weight = {1.0, 1.0};
  g.label = "builtin_two_mode";
  return g;
}

CheckReport check_ccr() {
  CheckReport rep{"ccr", {}};
  BasisPtr basis = FockBasis::enumerate(3, 6, false);
  ModeGrid g;
  g.omega = {1.0, 1.5, 2.0};
  g.v = {1.0, 1.0, 1.0};
  g.weight = {1.0, 1.0, 1.0};
  const std::size_t ncols = basis->sector_begin(basis->n_max());  // total <= n_max - 1
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      SpMat ai = annihilation(basis, i).sparse();
      SpMat cj = creation(basis, j).sparse();
      SpMat comm = SpMat(ai * cj) - SpMat(cj * ai);
      if (i == j) {
        SpMat ident(comm.rows(), comm.cols());
        ident.setIdentity();
        comm = comm - ident;
      }
      double worst = 0.0;
      for (int k = 0; k < comm.outerSize(); ++k) {
        for (SpMat::InnerIterator it(comm, k); it; ++it) {
          if (static_cast<std::size_t>(it.col()) < ncols)
            worst = std::max(worst, std::abs(it.value()));
        }
      }
      add(rep, "commutator(a_" + std::to_string(i) + ", adag_" + std::to_string(j) + ")", worst,
          1e-12);
    }
  }
  return rep;
}

CheckReport check_parity_decomposition() {
  CheckReport rep{"parity_decomposition", {}};
  ModelParams p{0.4, 1.0, two_mode_grid(), 8};
  SpectralResult full = eigensolve(build_full(p), 1);
  ModelParams pm = p;
  pm.eta = -p.eta;
  SpectralResult fm = eigensolve(build_fiber(pm), 1);
  SpectralResult fp = eigensolve(build_fiber(p), 1);
  std::vector<double> merged = fm.eigenvalues;
  merged.insert(merged.end(), fp.eigenvalues.begin(), fp.eigenvalues.end());
  std::sort(merged.begin(), merged.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < merged.size(); ++i)
    worst = std::max(worst, std::abs(merged[i] - full.eigenvalues[i]));
  add(rep, "spectrum(H) == spectrum(F-) u spectrum(F+)", worst, 1e-10);

  // the conjugation itself is an exact permutation-of-components identity
  BasisPtr qb = FockBasis::enumerate(2, 8, true);
  FockVector probe{qb, Eigen::VectorXcd::Zero(static_cast<long>(qb->size())), 0.0};
  for (long i = 0; i < probe.coeff.size(); ++i)
    probe.coeff[i] = Complex(std::sin(0.37 * (i + 1)), std::cos(0.11 * i));
  auto [c1, c2] = parity_conjugation(probe);
  FockVector back{qb, Eigen::VectorXcd(probe.coeff.size()), 0.0};
  back.coeff << c1.coeff, c2.coeff;
  auto [d1, d2] = parity_conjugation(back);
  Eigen::VectorXcd twice(probe.coeff.size());
  twice << d1.coeff, d2.coeff;
  add(rep, "conjugation is an involution", (twice - probe.coeff).norm(), 1e-15);
  return rep;
}

CheckReport check_van_hove() {
  CheckReport rep{"van_hove", {}};
  ModelParams p{0.0, 1.0, make_single_mode(1.0, 0.5), 40};
  SpectralResult r = eigensolve(build_fiber(p), 1);
  add(rep, "ground energy == -|v|^2/omega", std::abs(r.ground_energy + 0.25), 1e-8);
  return rep;
}

CheckReport check_pullthrough() {
  CheckReport rep{"pullthrough", {}};
  for (int variant = 0; variant < 2; ++variant) {
    ModelParams p{-1.0, 1.0, variant == 0 ? make_single_mode(1.0, 1.0) : two_mode_grid(), 40};
    if (variant == 1) p.n_max = 24;
    BasisPtr basis = FockBasis::enumerate(p.grid.mode_count(), p.n_max, false);
    SpectralResult r = eigensolve(build_fiber(p, basis), 1);
    FockVector psi = eigenvector_of(r, basis);
    ModelParams po = p;
    po.eta = -p.eta;
    AssembledOperator fopp = build_fiber(po, basis);
    std::vector<double> res = pullthrough_residual(fopp, p.grid, p.g, r.ground_energy, psi);
    double worst = *std::max_element(res.begin(), res.end());
    std::string tag = variant == 0 ? "single mode" : "two modes";
    add(rep, "residual, " + tag, worst, 1e-6);

    // one-particle amplitudes obey |psi_j| <= g |v_j| / omega_j + r_j
    phase_fix(psi);
    for (int j = 0; j < p.grid.mode_count(); ++j) {
      std::vector<std::uint16_t> occ(p.grid.mode_count(), 0);
      occ[j] = 1;
      long idx = basis->index_of(occ.data());
      double amp = std::abs(psi.coeff[idx]);
      double bound = p.g * std::abs(p.grid.v[j]) / p.grid.omega[j] + res[j];
      add(rep, "one-particle bound, " + tag + ", mode " + std::to_string(j),
          amp - bound, 0.0);
    }
  }
  return rep;
}

CheckReport check_feshbach() {
  CheckReport rep{"feshbach", {}};
  ModelParams p{0.4, 1.0, two_mode_grid(), 10};
  AssembledOperator F = build_fiber(p);
  SpectralResult r = eigensolve(F, 1);
  std::vector<double> lambdas;
  for (int i = 1; i <= 5; ++i) lambdas.push_back(r.ground_energy - 0.5 * i);
  auto rows = feshbach_check(F, p.grid, p.eta, p.g, r.ground_energy, lambdas);
  for (const FeshbachRow& row : rows) {
    add(rep, "identity defect at shift " + std::to_string(row.lambda), row.defect, 1e-9);
    add(rep, "vacuum matrix element positive at " + std::to_string(row.lambda),
        row.lhs > 0.0 ? 0.0 : 1.0, 0.5);
  }
  return rep;
}

ModeGrid complex_grid() {
  ModeGrid g;
  g.omega = {1.0, 1.7};
  g.v = {Complex(0.5, 0.3), Complex(-0.2, 0.4)};
  g.weight = {1.0, 1.0};
  g.label = "builtin_complex";
  return g;
}

CheckReport check_sign_structure() {
  CheckReport rep{"sign_structure", {}};
  struct Case {
    const char* tag;
    ModelParams p;
  };
  std::vector<Case> cases = {
      {"single mode", {-1.0, 1.0, make_single_mode(1.0, 1.0), 30}},
      {"two modes", {-0.5, 1.0, two_mode_grid(), 16}},
      {"complex coupling", {-0.7, 1.0, complex_grid(), 14}},
  };
  for (const Case& c : cases) {
    BasisPtr basis = FockBasis::enumerate(c.p.grid.mode_count(), c.p.n_max, false);
    SpectralResult r = eigensolve(build_fiber(c.p, basis), 1);
    FockVector psi = eigenvector_of(r, basis);
    phase_fix(psi);
    SignStructureReport s = sign_structure(psi, c.p.grid);
    add(rep, std::string("vacuum component positive, ") + c.tag,
        s.vacuum_component > 0 ? 0.0 : 1.0, 0.5);
    add(rep, std::string("signed amplitudes nonnegative, ") + c.tag, -s.min_signed_real, 1e-10);
    add(rep, std::string("imaginary part, ") + c.tag, s.max_abs_imag, 1e-10);
  }
  return rep;
}

CheckReport check_pointwise_bound() {
  CheckReport rep{"pointwise_bound", {}};
  struct Case {
    const char* tag;
    ModelParams p;
  };
  std::vector<Case> cases = {
      {"single mode", {-1.0, 1.0, make_single_mode(1.0, 1.0), 30}},
      {"two modes", {-0.5, 1.5, two_mode_grid(), 16}},
  };
  for (const Case& c : cases) {
    BasisPtr basis = FockBasis::enumerate(c.p.grid.mode_count(), c.p.n_max, false);
    SpectralResult r = eigensolve(build_fiber(c.p, basis), 1);
    FockVector psi = eigenvector_of(r, basis);
    phase_fix(psi);
    PointwiseBoundReport b = pointwise_bound(psi, c.p.grid, c.p.g);
    add(rep, std::string("amplitude/bound ratio, ") + c.tag, b.max_ratio, 1.0 + 1e-6);
  }
  // zero-coupling mode: amplitudes must vanish on its excitations
  ModeGrid g;
  g.omega = {1.0, 1.3};
  g.v = {0.8, 0.0};
  g.weight = {1.0, 1.0};
  ModelParams p{-0.5, 1.0, g, 14};
  BasisPtr basis = FockBasis::enumerate(2, p.n_max, false);
  SpectralResult r = eigensolve(build_fiber(p, basis), 1);
  FockVector psi = eigenvector_of(r, basis);
  phase_fix(psi);
  add(rep, "support leakage on a zero-coupling mode", support_leakage(psi, g), 1e-10);
  return rep;
}

CheckReport check_weyl_algebra() {
  CheckReport rep{"weyl_algebra", {}};
  BasisPtr basis = FockBasis::enumerate(2, 40, false);
  std::vector<Complex> f = {0.5, 0.3};
  std::vector<Complex> mf = {-0.5, -0.3};
  double f2 = 0.25 + 0.09;

  AssembledOperator d = displacement(basis, f);
  FockVector coh = coherent_vector(basis, f, true);
  FockVector vac = vacuum_vector(basis);
  Eigen::VectorXcd dvac = d.apply(vac.coeff);
  add(rep, "displaced vacuum equals the normalised coherent vector",
      (dvac - coh.coeff).norm(), 1e-12);

  std::vector<Complex> f2x = {1.0, 0.6};
  AssembledOperator w2 = weyl_parity(basis, f2x);
  double ovl = std::abs((vac.coeff.adjoint() * w2.apply(vac.coeff))(0));
  add(rep, "vacuum overlap of the doubled displacement", std::abs(ovl - std::exp(-2.0 * f2)),
      1e-10);

  const long nblock = static_cast<long>(basis->sector_begin(21));  // total <= 20
  AssembledOperator dm = displacement(basis, mf);
  Eigen::MatrixXd prod = d.dense_real() * dm.dense_real();
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(prod.rows(), prod.cols());
  add(rep, "displacement(f) displacement(-f) == identity (low block)",
      (prod - eye).topLeftCorner(nblock, nblock).cwiseAbs().maxCoeff(), 1e-8);

  AssembledOperator w = weyl_parity(basis, f);
  Eigen::MatrixXd sq = w.dense_real() * w.dense_real();
  add(rep, "weyl involution squared == identity (low block)",
      (sq - eye).topLeftCorner(nblock, nblock).cwiseAbs().maxCoeff(), 1e-8);
  add(rep, "weyl factor selfadjoint", w.hermiticity_defect(), 1e-12);
  return rep;
}

}  // namespace

CheckReport run_check_suite(const std::string& name) {
  if (name == "ccr") return check_ccr();
  if (name == "parity_decomposition") return check_parity_decomposition();
  if (name == "van_hove") return check_van_hove();
  if (name == "pullthrough") return check_pullthrough();
  if (name == "feshbach") return check_feshbach();
  if (name == "sign_structure") return check_sign_structure();
  if (name == "pointwise_bound") return check_pointwise_bound();
  if (name == "weyl_algebra") return check_weyl_algebra();
  std::string names;
  for (const std::string& n : check_suite_names()) names += " " + n;
  fail("unknown check suite '" + name + "'; available:" + names);
}

std::vector<std::string> check_suite_names() {
  return {"ccr",      "parity_decomposition", "van_hove",       "pullthrough",
          "feshbach", "sign_structure",       "pointwise_bound", "weyl_algebra"};
}

}  // namespace sbtk
