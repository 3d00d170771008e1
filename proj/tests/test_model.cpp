#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sbtk/model.hpp"
#include "sbtk/scenario.hpp"
#include "sbtk/spectra.hpp"

using namespace sbtk;

namespace {

ModeGrid two_mode() {
  ModeGrid g;
  g.omega = {1.0, 2.0};
  g.v = {0.7, 0.3};
  g.weight = {1.0, 1.0};
  return g;
}

}  // namespace

TEST_CASE("fiber operator: decoupled spectrum") {
  ModelParams p{-1.0, 0.0, make_single_mode(1.0, 1.0), 4};
  SpectralResult r = eigensolve(build_fiber(p), 2);
  // vacuum: eta = -1; one boson: -eta + omega = 2
  CHECK(r.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  std::vector<double> ev = r.eigenvalues;
  CHECK(std::count_if(ev.begin(), ev.end(), [](double x) { return std::abs(x - 2.0) < 1e-12; }) ==
        1);
}

TEST_CASE("fiber operator: exactly solvable ground energy at eta = 0") {
  ModelParams p{0.0, 1.0, make_single_mode(1.0, 0.5), 40};
  SpectralResult r = eigensolve(build_fiber(p), 1);
  CHECK(std::abs(r.ground_energy + 0.25) < 1e-10);
}

TEST_CASE("fiber operator: truncation-stable ground energy") {
  ModelParams p{-1.0, 1.0, make_single_mode(1.0, 1.0), 40};
  double e40 = eigensolve(build_fiber(p), 1).ground_energy;
  p.n_max = 60;
  double e60 = eigensolve(build_fiber(p), 1).ground_energy;
  CHECK(std::abs(e40 - e60) < 1e-10);
}

TEST_CASE("full Hamiltonian: decoupled and fiber decomposition") {
  SUBCASE("g = 0: spectrum is {eta} + dgamma union {-eta} + dgamma") {
    ModelParams p{0.3, 0.0, make_single_mode(1.0, 1.0), 3};
    SpectralResult r = eigensolve(build_full(p), 1);
    std::vector<double> expect;
    for (int n = 0; n <= 3; ++n) {
      expect.push_back(0.3 + n);
      expect.push_back(-0.3 + n);
    }
    std::sort(expect.begin(), expect.end());
    for (std::size_t i = 0; i < expect.size(); ++i)
      CHECK(r.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(1e-14));
  }

  SUBCASE("spectrum equals the fiber multiset union") {
    ModelParams p{0.4, 1.0, two_mode(), 8};
    SpectralResult full = eigensolve(build_full(p), 1);
    ModelParams pm = p;
    pm.eta = -0.4;
    std::vector<double> merged = eigensolve(build_fiber(pm), 1).eigenvalues;
    std::vector<double> plus = eigensolve(build_fiber(p), 1).eigenvalues;
    merged.insert(merged.end(), plus.begin(), plus.end());
    std::sort(merged.begin(), merged.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < merged.size(); ++i)
      worst = std::max(worst, std::abs(merged[i] - full.eigenvalues[i]));
    CHECK(worst < 1e-10);
  }

  SUBCASE("eta = 0: every eigenvalue doubly degenerate") {
    ModelParams p{0.0, 0.8, two_mode(), 6};
    SpectralResult full = eigensolve(build_full(p), 1);
    for (std::size_t i = 0; i + 1 < full.eigenvalues.size(); i += 2)
      CHECK(std::abs(full.eigenvalues[i] - full.eigenvalues[i + 1]) < 1e-10);
  }

  SUBCASE("ground energy of the full operator equals the lower fiber's") {
    for (double eta : {0.6, -0.6}) {
      ModelParams p{eta, 1.0, two_mode(), 10};
      double e_full = eigensolve(build_full(p), 1).ground_energy;
      ModelParams pm = p;
      pm.eta = -std::abs(eta);
      double e_minus = eigensolve(build_fiber(pm), 1).ground_energy;
      CHECK(std::abs(e_full - e_minus) < 1e-11);
    }
  }
}

TEST_CASE("parity conjugation") {
  BasisPtr qb = enumerate_basis(2, 6, true);
  const std::size_t nf = qb->fock_size();

  SUBCASE("even sector fixed: e_1 (x) vacuum -> (vacuum, 0)") {
    FockVector psi{qb, Eigen::VectorXcd::Zero(static_cast<long>(2 * nf)), 0.0};
    psi.coeff[0] = 1.0;
    auto [a, b] = parity_conjugation(psi);
    CHECK(std::abs(a.coeff[0] - 1.0) == 0.0);
    CHECK(a.coeff.tail(a.coeff.size() - 1).norm() == 0.0);
    CHECK(b.coeff.norm() == 0.0);
  }

  SUBCASE("odd sectors swap channels") {
    std::vector<std::uint16_t> e1 = {1, 0};
    BasisPtr plain = enumerate_basis(2, 6, false);
    long idx = plain->index_of(e1.data());
    FockVector psi{qb, Eigen::VectorXcd::Zero(static_cast<long>(2 * nf)), 0.0};
    psi.coeff[idx] = 1.0;  // channel e_1, one-boson state
    auto [a, b] = parity_conjugation(psi);
    CHECK(a.coeff.norm() == 0.0);
    CHECK(std::abs(b.coeff[idx] - 1.0) == 0.0);
  }

  SUBCASE("involution on a generic vector") {
    FockVector psi{qb, Eigen::VectorXcd(static_cast<long>(2 * nf)), 0.0};
    for (long i = 0; i < psi.coeff.size(); ++i)
      psi.coeff[i] = Complex(std::sin(1.7 * i + 0.3), std::cos(0.9 * i));
    auto [a, b] = parity_conjugation(psi);
    FockVector mid{qb, Eigen::VectorXcd(psi.coeff.size()), 0.0};
    mid.coeff << a.coeff, b.coeff;
    auto [c, d] = parity_conjugation(mid);
    Eigen::VectorXcd back(psi.coeff.size());
    back << c.coeff, d.coeff;
    CHECK((back - psi.coeff).norm() <= 1e-15 * psi.coeff.norm());
  }

  SUBCASE("conjugated full Hamiltonian is the fiber direct sum, entrywise") {
    ModelParams p{0.4, 1.0, two_mode(), 6};
    BasisPtr basis = enumerate_basis(2, 6, true);
    BasisPtr plain = enumerate_basis(2, 6, false);
    Eigen::MatrixXcd H(build_full(p, basis).sparse());
    const long n = static_cast<long>(plain->fock_size());

    // V as a matrix: channel-major, odd sectors swapped
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (long i = 0; i < n; ++i) {
      if (plain->total(i) % 2 == 0) {
        V(i, i) = 1.0;
        V(i + n, i + n) = 1.0;
      } else {
        V(i, i + n) = 1.0;
        V(i + n, i) = 1.0;
      }
    }
    Eigen::MatrixXcd VH = V * H * V;
    ModelParams pm = p;
    pm.eta = -p.eta;
    Eigen::MatrixXcd Fm(build_fiber(pm, plain).sparse());
    Eigen::MatrixXcd Fp(build_fiber(p, plain).sparse());
    // channel e_1 carries the +eta fiber, channel e_{-1} the -eta fiber
    CHECK((VH.topLeftCorner(n, n) - Fp).cwiseAbs().maxCoeff() == 0.0);
    CHECK((VH.bottomRightCorner(n, n) - Fm).cwiseAbs().maxCoeff() == 0.0);
    CHECK(VH.topRightCorner(n, n).cwiseAbs().maxCoeff() == 0.0);
    CHECK(VH.bottomLeftCorner(n, n).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("polaron frame") {
  ModeGrid g = two_mode();

  SUBCASE("eta = 0, all modes high: plain dgamma with ground energy 0") {
    ModelParams p{0.0, 1.0, g, 10};
    BasisPtr basis = enumerate_basis(2, 10, false);
    PolaronFrame f = build_polaron_frame(p, 0.5, basis);
    SpectralResult r = eigensolve(f.op, 1);
    CHECK(std::abs(r.ground_energy) < 1e-12);
  }

  SUBCASE("spectral shift identity at converged truncation") {
    ModelParams p{0.4, 1.0, g, 32};
    BasisPtr basis = enumerate_basis(2, 32, false);
    AssembledOperator F = build_fiber(p, basis);
    PolaronFrame f = build_polaron_frame(p, 0.5, basis);
    double shift = p.g * p.g * g.weighted_norm2(0.5);
    CHECK(f.energy_shift == doctest::Approx(shift).epsilon(1e-14));
    SpectralResult rf = eigensolve(F, 1);
    SpectralResult rt = eigensolve(f.op, 1);
    for (int i = 0; i < 10; ++i)
      CHECK(std::abs(rt.eigenvalues[i] - rf.eigenvalues[i] - shift) < 1e-6);
  }

  SUBCASE("matrix identity: conjugating the fiber by the frame displacement") {
    // W(f,1) F W(f,1)^* + shift = polaron operator, on the low block
    ModelParams p{-0.6, 1.0, g, 24};
    BasisPtr basis = enumerate_basis(2, 24, false);
    std::vector<Complex> disp = {p.g * g.v[0] / g.omega[0], p.g * g.v[1] / g.omega[1]};
    AssembledOperator D = displacement(basis, disp);
    Eigen::MatrixXd F = build_fiber(p, basis).dense_real();
    PolaronFrame f = build_polaron_frame(p, 0.5, basis);
    Eigen::MatrixXd lhs = D.dense_real() * F * D.dense_real().transpose();
    lhs.diagonal().array() += f.energy_shift;
    Eigen::MatrixXd rhs = f.op.dense_real();
    long nb = static_cast<long>(basis->sector_begin(13));
    CHECK((lhs - rhs).topLeftCorner(nb, nb).cwiseAbs().maxCoeff() < 1e-7);
  }

  SUBCASE("lower bound from the split") {
    // min eigenvalue >= -|eta| - |w^-1/2 (low part of g v)|^2
    ModelParams p{-0.8, 1.2, g, 18};
    BasisPtr basis = enumerate_basis(2, 18, false);
    PolaronFrame f = build_polaron_frame(p, 1.5, basis);  // low part = mode 0
    SpectralResult r = eigensolve(f.op, 1);
    double low_half = p.g * p.g * std::norm(g.v[0]) / g.omega[0];
    CHECK(r.ground_energy >= -std::abs(p.eta) - low_half - 1e-10);
  }
}

TEST_CASE("scenario presets") {
  SUBCASE("massive: refinement of the coupling norms") {
    ScenarioSpec s = preset_by_name("massive_generic");
    s.nodes = 32;
    ModeGrid coarse = make_scenario(s);
    s.nodes = 256;
    ModeGrid fine = make_scenario(s);
    for (double sexp : {0.0, 0.5, 1.0}) {
      double rel = std::abs(coarse.weighted_norm2(sexp) - fine.weighted_norm2(sexp)) /
                   fine.weighted_norm2(sexp);
      CHECK(rel < 0.01);
    }
    CHECK(coarse.min_omega() == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("massive: rejects nonpositive mass") {
    ScenarioSpec s = preset_by_name("massive_generic");
    s.mass = 0.0;
    CHECK_THROWS_AS(make_scenario(s), std::invalid_argument);
  }

  SUBCASE("counterexample: infrared norm grows with the family parameter") {
    ScenarioSpec s = preset_by_name("counterexample_3d");
    double prev = 0.0;
    for (double gpar : {1.0, 10.0, 100.0}) {
      ModeGrid grid = make_scenario(s, gpar);
      double n1 = grid.weighted_norm2(1.0);
      CHECK(n1 > prev);
      prev = n1;
    }
  }

  SUBCASE("massless preset is infrared regular") {
    ScenarioSpec s = preset_by_name("massless_infrared_regular");
    ModeGrid grid = make_scenario(s);
    CHECK(std::isfinite(grid.weighted_norm2(1.0)));
    CHECK(grid.weighted_norm2(1.0) > 0.0);
  }

  SUBCASE("uv family: shared infrared segment across cutoffs") {
    ScenarioSpec s = preset_by_name("spin_boson_3d_cutoff");
    ModeGrid a = make_scenario(s, 4.0);
    ModeGrid b = make_scenario(s, 16.0);
    for (int j = 0; j < s.ir_nodes; ++j) {
      CHECK(a.omega[j] == b.omega[j]);
      CHECK(a.v[j] == b.v[j]);
    }
    // the ultraviolet part diverges in the omega^-1 norm
    double da = 0.0, db = 0.0;
    for (int j = s.ir_nodes; j < a.mode_count(); ++j) {
      da += std::norm(a.v[j]) / (a.omega[j] * a.omega[j]);
      db += std::norm(b.v[j]) / (b.omega[j] * b.omega[j]);
    }
    CHECK(db > da);
  }

  SUBCASE("unknown preset lists the available names") {
    CHECK_THROWS_WITH_AS(preset_by_name("nope"), doctest::Contains("available presets"),
                         std::runtime_error);
  }
}
