// Property-style checks on randomly generated grids and parameters
// (hand-rolled generators, fixed seed, deterministic).

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sbtk/model.hpp"
#include "sbtk/spectra.hpp"

using namespace sbtk;

namespace {

struct Gen {
  std::mt19937_64 rng{20240817ull};

  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
  }
  int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

  ModeGrid grid(int max_modes, bool complex_coupling) {
    ModeGrid g;
    int m = uniform_int(1, max_modes);
    for (int j = 0; j < m; ++j) {
      g.omega.push_back(uniform(0.3, 2.5));
      if (complex_coupling)
        g.v.push_back(Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0)));
      else
        g.v.push_back(uniform(-1.0, 1.0));
      g.weight.push_back(1.0);
    }
    g.label = "random";
    return g;
  }
};

}  // namespace

TEST_CASE("property: CCR and parity algebra on random bases") {
  Gen gen;
  for (int trial = 0; trial < 6; ++trial) {
    int modes = gen.uniform_int(1, 3);
    int n_max = gen.uniform_int(3, 7);
    BasisPtr b = enumerate_basis(modes, n_max, false);
    const std::size_t safe = b->sector_begin(n_max);
    int i = gen.uniform_int(0, modes - 1);
    int j = gen.uniform_int(0, modes - 1);
    SpMat ai = annihilation(b, i).sparse();
    SpMat cj = creation(b, j).sparse();
    SpMat comm = SpMat(ai * cj) - SpMat(cj * ai);
    double worst = 0.0;
    for (int k = 0; k < comm.outerSize(); ++k) {
      for (SpMat::InnerIterator it(comm, k); it; ++it) {
        if (static_cast<std::size_t>(it.col()) >= safe) continue;
        double expect = (i == j && it.row() == it.col()) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(it.value() - Complex(expect)));
      }
    }
    CHECK(worst <= 1e-12);

    SpMat par = parity(b).sparse();
    ModeGrid g = gen.grid(modes, false);
    while (g.mode_count() != modes) g = gen.grid(modes, false);
    SpMat dg = dgamma(b, g).sparse();
    CHECK(SpMat(SpMat(par * dg) - SpMat(dg * par)).norm() == 0.0);
  }
}

TEST_CASE("property: assembled operators are Hermitian and decompose correctly") {
  Gen gen;
  for (int trial = 0; trial < 5; ++trial) {
    ModeGrid g = gen.grid(2, trial % 2 == 1);
    ModelParams p{gen.uniform(-1.0, 1.0), gen.uniform(0.0, 1.5), g, gen.uniform_int(4, 7)};
    AssembledOperator F = build_fiber(p);
    CHECK(F.hermiticity_defect() <= 1e-12 * std::max(1.0, F.max_abs()));

    if (!g.real_coupling()) continue;  // the qubit assembly is exercised on real grids
    SpectralResult full = eigensolve(build_full(p), 1);
    ModelParams pm = p;
    pm.eta = -p.eta;
    std::vector<double> merged = eigensolve(build_fiber(pm), 1).eigenvalues;
    std::vector<double> plus = eigensolve(F, 1).eigenvalues;
    merged.insert(merged.end(), plus.begin(), plus.end());
    std::sort(merged.begin(), merged.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < merged.size(); ++i)
      worst = std::max(worst, std::abs(merged[i] - full.eigenvalues[i]));
    CHECK(worst < 1e-10);

    // the fiber ordering by the sign of eta holds at any truncation
    ModelParams plo = p, phi = p;
    plo.eta = -std::abs(p.eta);
    phi.eta = +std::abs(p.eta);
    double lo = eigensolve(build_fiber(plo), 1).ground_energy;
    double hi = eigensolve(build_fiber(phi), 1).ground_energy;
    CHECK(lo <= hi + 1e-12);
  }
}

TEST_CASE("property: Weyl algebra on random amplitudes") {
  Gen gen;
  BasisPtr b = enumerate_basis(2, 36, false);
  const long nb = static_cast<long>(b->sector_begin(15));
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<Complex> f = {Complex(gen.uniform(-0.6, 0.6), gen.uniform(-0.4, 0.4)),
                              Complex(gen.uniform(-0.6, 0.6), gen.uniform(-0.4, 0.4))};
    std::vector<Complex> mf = {-f[0], -f[1]};

    AssembledOperator d = displacement(b, f);
    AssembledOperator dm = displacement(b, mf);
    Eigen::MatrixXcd D = d.dense_complex();
    Eigen::MatrixXcd Dm = dm.dense_complex();

    // D(f)^* = D(-f) and D(f) D(-f) = 1 on the low block
    CHECK((D.adjoint() - Dm).topLeftCorner(nb, nb).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::MatrixXcd prod = D * Dm;
    CHECK((prod - Eigen::MatrixXcd::Identity(prod.rows(), prod.cols()))
              .topLeftCorner(nb, nb)
              .cwiseAbs()
              .maxCoeff() < 1e-8);

    // displaced vacuum = normalised coherent vector
    FockVector vac = vacuum_vector(b);
    FockVector coh = coherent_vector(b, f, true);
    CHECK((d.apply(vac.coeff) - coh.coeff).norm() < 1e-11);

    // selfadjoint involution
    AssembledOperator w = weyl_parity(b, f);
    CHECK(w.hermiticity_defect() < 1e-12);
    Eigen::MatrixXcd W = w.dense_complex();
    CHECK((W * W - Eigen::MatrixXcd::Identity(W.rows(), W.cols()))
              .topLeftCorner(nb, nb)
              .cwiseAbs()
              .maxCoeff() < 1e-8);

    // coherent eigenvector property of the annihilators
    for (int j = 0; j < 2; ++j) {
      CHECK((annihilation(b, j).apply(coh.coeff) - f[j] * coh.coeff).norm() < 1e-9);
    }
  }
}

TEST_CASE("property: displacement conjugation of the fiber at random parameters") {
  Gen gen;
  for (int trial = 0; trial < 3; ++trial) {
    ModeGrid g = gen.grid(2, false);
    int modes = g.mode_count();
    ModelParams p{gen.uniform(-0.9, 0.9), gen.uniform(0.2, 1.2), g, 22};
    BasisPtr basis = enumerate_basis(modes, p.n_max, false);
    double split = 0.5 * g.min_omega();
    PolaronFrame f = build_polaron_frame(p, split, basis);

    std::vector<Complex> disp(modes);
    for (int j = 0; j < modes; ++j) disp[j] = p.g * g.v[j] / g.omega[j];
    AssembledOperator D = displacement(basis, disp);
    Eigen::MatrixXcd lhs =
        D.dense_complex() * build_fiber(p, basis).dense_complex() * D.dense_complex().adjoint();
    lhs.diagonal().array() += f.energy_shift;
    long nb = static_cast<long>(basis->sector_begin(10));
    Eigen::MatrixXcd rhs =
        f.op.is_real() ? f.op.dense_real().cast<Complex>() : f.op.dense_complex();
    CHECK((lhs - rhs).topLeftCorner(nb, nb).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("property: iterative solver matches dense on random operators") {
  Gen gen;
  for (int trial = 0; trial < 3; ++trial) {
    ModeGrid g = gen.grid(2, false);
    ModelParams p{gen.uniform(-1.0, 1.0), gen.uniform(0.2, 1.5), g, 12};
    AssembledOperator F = build_fiber(p);
    SolveOptions dense;
    dense.mode = SolveOptions::Mode::dense;
    SolveOptions iter;
    iter.mode = SolveOptions::Mode::iterative;
    iter.seed = gen.rng();
    SpectralResult rd = eigensolve(F, 3, dense);
    SpectralResult ri = eigensolve(F, 3, iter);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(rd.eigenvalues[i] - ri.eigenvalues[i]) < 1e-9);
  }
}
