#include "sbtk/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sbtk/dense_linalg.hpp"
#include "sbtk/fock_ops.hpp"

namespace sbtk {

namespace {

constexpr double kResidualContract = 1e-8;

struct TridiagRitz {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

TridiagRitz ritz_of(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const int m = static_cast<int>(alpha.size());
  Eigen::VectorXd d(m), e(std::max(0, m - 1));
  for (int i = 0; i < m; ++i) d[i] = alpha[i];
  for (int i = 0; i + 1 < m; ++i) e[i] = beta[i];
  EighResult r = tridiagonal_eigh(d, e);
  return {r.values, r.vectors};
}

template <typename Scalar>
struct LanczosData {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  std::vector<Vec> q;
  std::vector<double> alpha, beta;
};

template <typename Scalar, typename Apply>
SpectralResult lanczos_lowest(Apply&& apply, long dim, int k, const SolveOptions& opt) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  require(k >= 1 && k <= dim, "eigensolve: bad eigenpair count");
  LanczosData<Scalar> L;
  const int maxit = std::min<long>(opt.max_iterations, dim);

  std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(dim)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v0(dim);
  for (long i = 0; i < dim; ++i) {
    if constexpr (std::is_same_v<Scalar, Complex>)
      v0[i] = Complex(gauss(rng), gauss(rng));
    else
      v0[i] = gauss(rng);
  }
  v0 /= v0.norm();
  L.q.push_back(v0);

  double norm_est = 0.0;
  TridiagRitz ritz;
  int converged_at = -1;

  for (int m = 0; m < maxit; ++m) {
    Vec w = apply(L.q[m]);
    double a = std::real(Scalar(L.q[m].dot(w)));
    L.alpha.push_back(a);
    w -= a * L.q[m];
    if (m > 0) w -= L.beta[m - 1] * L.q[m - 1];
    // full reorthogonalisation, twice
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& qi : L.q) w -= qi * Scalar(qi.dot(w));
    }
    double b = w.norm();

    const int steps = m + 1;
    const bool check_now = b < 1e-13 || steps % 4 == 0 || m == maxit - 1 || steps >= dim;
    if (check_now) {
      ritz = ritz_of(L.alpha, L.beta);
      norm_est = std::max(std::abs(ritz.values[0]), std::abs(ritz.values[steps - 1]));
      if (steps >= k) {
        bool ok = true;
        for (int i = 0; i < k; ++i) {
          double bound = std::abs(b * ritz.vectors(steps - 1, i));
          if (bound > opt.tolerance * (std::abs(ritz.values[i]) + norm_est + 1e-300)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          converged_at = steps;
          break;
        }
      }
    }
    if (b < 1e-13) {
      // exact invariant subspace; restart with a fresh orthogonal direction
      if (static_cast<long>(L.q.size()) >= dim) {
        converged_at = steps;
        ritz = ritz_of(L.alpha, L.beta);
        break;
      }
      Vec r(dim);
      for (long i = 0; i < dim; ++i) {
        if constexpr (std::is_same_v<Scalar, Complex>)
          r[i] = Complex(gauss(rng), gauss(rng));
        else
          r[i] = gauss(rng);
      }
      for (int pass = 0; pass < 2; ++pass)
        for (const Vec& qi : L.q) r -= qi * Scalar(qi.dot(r));
      double rn = r.norm();
      require(rn > 1e-13, "eigensolve: failed to extend Krylov space");
      L.beta.push_back(0.0);
      L.q.push_back(r / rn);
      continue;
    }
    L.beta.push_back(b);
    L.q.push_back(w / b);
  }

  if (converged_at < 0) {
    std::ostringstream os;
    os << "eigensolve: Lanczos did not converge in " << maxit << " iterations (dim=" << dim
       << ", k=" << k << ", tol=" << opt.tolerance << ", ||A||_est=" << norm_est << ")";
    fail(os.str());
  }

  const int m = converged_at;
  SpectralResult out;
  out.dense_mode = false;
  out.iterations = m;
  out.norm_estimate = norm_est;
  out.eigenvalues.assign(ritz.values.data(), ritz.values.data() + std::min(k, m));
  out.ground_energy = out.eigenvalues.front();
  if (opt.want_vectors) {
    out.vectors.resize(dim, std::min(k, m));
    for (int i = 0; i < std::min(k, m); ++i) {
      Vec y = Vec::Zero(dim);
      for (int j = 0; j < m; ++j) y += L.q[j] * Scalar(ritz.vectors(j, i));
      y /= y.norm();
      if constexpr (std::is_same_v<Scalar, Complex>)
        out.vectors.col(i) = y;
      else
        out.vectors.col(i) = y.template cast<Complex>();
    }
  }
  return out;
}

}  // namespace

SpectralResult eigensolve(const AssembledOperator& A, int k, const SolveOptions& opt) {
  const long dim = static_cast<long>(A.dim());
  require(k >= 1, "eigensolve: k must be positive");
  k = static_cast<int>(std::min<long>(k, dim));

  SolveOptions::Mode mode = opt.mode;
  if (mode == SolveOptions::Mode::automatic) {
    mode = (A.dim() <= opt.dense_cap) ? SolveOptions::Mode::dense : SolveOptions::Mode::iterative;
  }
  if (mode == SolveOptions::Mode::dense) {
    require(A.dim() <= opt.dense_cap, "eigensolve: dimension " + std::to_string(A.dim()) +
                                          " above the dense cap " + std::to_string(opt.dense_cap));
  }

  SpectralResult out;
  if (mode == SolveOptions::Mode::dense) {
    if (A.is_real()) {
      EighResult r = symmetric_eigh(A.dense_real(), true);
      out.eigenvalues.assign(r.values.data(), r.values.data() + dim);
      out.norm_estimate = std::max(std::abs(r.values[0]), std::abs(r.values[dim - 1]));
      if (opt.want_vectors) out.vectors = r.vectors.leftCols(k).cast<Complex>();
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A.dense_complex());
      require(es.info() == Eigen::Success, "eigensolve: dense Hermitian solve failed");
      out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + dim);
      out.norm_estimate =
          std::max(std::abs(out.eigenvalues.front()), std::abs(out.eigenvalues.back()));
      if (opt.want_vectors) out.vectors = es.eigenvectors().leftCols(k);
    }
    out.ground_energy = out.eigenvalues.front();
    out.dense_mode = true;
  } else {
    auto matvec_c = [&](const Eigen::VectorXcd& x) { return A.apply(x); };
    auto matvec_r = [&](const Eigen::VectorXd& x) { return A.apply(x); };
    out = A.is_real() ? lanczos_lowest<double>(matvec_r, dim, k, opt)
                      : lanczos_lowest<Complex>(matvec_c, dim, k, opt);
  }

  // residual contract on the returned pairs
  out.max_residual = 0.0;
  if (opt.want_vectors) {
    for (int i = 0; i < out.vectors.cols(); ++i) {
      Eigen::VectorXcd psi = out.vectors.col(i);
      double res = (A.apply(psi) - out.eigenvalues[i] * psi).norm();
      out.max_residual = std::max(out.max_residual, res);
      if (res > kResidualContract * (std::abs(out.eigenvalues[i]) + out.norm_estimate)) {
        std::ostringstream os;
        os << "eigensolve: residual " << res << " for eigenvalue " << out.eigenvalues[i]
           << " violates the contract (mode=" << (out.dense_mode ? "dense" : "iterative")
           << ", iterations=" << out.iterations << ")";
        fail(os.str());
      }
    }
  }
  return out;
}

FockVector eigenvector_of(const SpectralResult& r, const BasisPtr& basis, int i) {
  require(i >= 0 && i < r.vectors.cols(), "eigenvector_of: index out of range");
  FockVector psi{basis, r.vectors.col(i), 0.0};
  return psi;
}

Complex phase_fix(FockVector& psi) {
  long pivot = 0;
  if (std::abs(psi.coeff[0]) < 1e-12) {
    psi.coeff.cwiseAbs().maxCoeff(&pivot);
  }
  Complex c = psi.coeff[pivot];
  if (std::abs(c) == 0.0) return 1.0;
  Complex phase = std::conj(c) / std::abs(c);
  psi.coeff *= phase;
  return phase;
}

namespace {

Eigen::VectorXcd solve_shifted(const AssembledOperator& A, double lambda,
                               const Eigen::VectorXcd& rhs, double rtol, const char* who) {
  const long n = static_cast<long>(A.dim());
  Eigen::VectorXcd x;
  if (A.is_sparse()) {
    SpMat s = A.sparse();
    SpMat ident(n, n);
    ident.setIdentity();
    SpMat shifted = s - Complex(lambda) * ident;
    Eigen::SimplicialLDLT<SpMat> ldlt(shifted);
    require(ldlt.info() == Eigen::Success, std::string(who) + ": factorisation failed");
    double dmin = ldlt.vectorD().real().minCoeff();
    if (!(dmin > 0.0))
      fail(std::string(who) + ": shift is not below the spectrum (indefinite factorisation)");
    x = ldlt.solve(rhs);
    for (int pass = 0; pass < 3; ++pass) {
      Eigen::VectorXcd r = rhs - (shifted * x);
      if (r.norm() <= rtol * rhs.norm()) break;
      x += ldlt.solve(r);
    }
    double res = (shifted * x - rhs).norm();
    if (res > rtol * rhs.norm())
      fail(std::string(who) + ": relative residual " + std::to_string(res / rhs.norm()) +
           " above tolerance");
    return x;
  }
  Eigen::MatrixXcd m = A.dense_complex();
  m.diagonal().array() -= Complex(lambda);
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(m);
  require(ldlt.info() == Eigen::Success, std::string(who) + ": dense factorisation failed");
  if (!ldlt.isPositive())
    fail(std::string(who) + ": shift is not below the spectrum (indefinite factorisation)");
  x = ldlt.solve(rhs);
  for (int pass = 0; pass < 3; ++pass) {
    Eigen::VectorXcd r = rhs - m * x;
    if (r.norm() <= rtol * rhs.norm()) break;
    x += ldlt.solve(r);
  }
  double res = (m * x - rhs).norm();
  if (res > rtol * rhs.norm())
    fail(std::string(who) + ": relative residual above tolerance");
  return x;
}

}  // namespace

FockVector resolve(const AssembledOperator& A, double lambda, const FockVector& rhs, double rtol) {
  require(rhs.basis == A.basis() || rhs.coeff.size() == static_cast<long>(A.dim()),
          "resolve: basis mismatch");
  FockVector out;
  out.basis = A.basis();
  out.coeff = solve_shifted(A, lambda, rhs.coeff, rtol, "resolve");
  return out;
}

std::vector<double> pullthrough_residual(const AssembledOperator& F_opp, const ModeGrid& grid,
                                         double g, double ground_energy, const FockVector& psi) {
  const BasisPtr& basis = psi.basis;
  require(!basis->with_qubit(), "pullthrough_residual: fiber (no-qubit) state expected");
  require(grid.mode_count() == basis->modes(), "pullthrough_residual: grid mismatch");
  std::vector<double> res;
  res.reserve(grid.mode_count());
  for (int j = 0; j < grid.mode_count(); ++j) {
    Eigen::VectorXcd aj = annihilation(basis, j).apply(psi.coeff);
    FockVector z = resolve(F_opp, ground_energy - grid.omega[j], psi);
    res.push_back((aj + g * grid.v[j] * z.coeff).norm());
  }
  return res;
}

std::vector<FeshbachRow> feshbach_check(const AssembledOperator& F, const ModeGrid& grid,
                                        double eta, double g, double ground_energy,
                                        const std::vector<double>& lambdas) {
  const BasisPtr& basis = F.basis();
  require(!basis->with_qubit(), "feshbach_check: fiber operator expected");
  require(F.is_sparse(), "feshbach_check: sparse fiber operator expected");
  const long n = static_cast<long>(F.dim());
  require(n >= 2, "feshbach_check: need at least the vacuum and one state");

  // compression to the orthogonal complement of the vacuum (delete row/col 0)
  SpMat full = F.sparse();
  std::vector<Triplet> trip;
  trip.reserve(full.nonZeros());
  for (int k = 0; k < full.outerSize(); ++k) {
    for (SpMat::InnerIterator it(full, k); it; ++it) {
      if (it.row() == 0 || it.col() == 0) continue;
      trip.emplace_back(static_cast<int>(it.row() - 1), static_cast<int>(it.col() - 1),
                        it.value());
    }
  }
  SpMat reduced(n - 1, n - 1);
  reduced.setFromTriplets(trip.begin(), trip.end());

  // coupling vector: g v_j on the one-particle states
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n - 1);
  for (int j = 0; j < grid.mode_count(); ++j) {
    std::vector<std::uint16_t> occ(basis->modes(), 0);
    occ[j] = 1;
    long idx = basis->index_of(occ.data());
    require(idx >= 1, "feshbach_check: missing one-particle state");
    b[idx - 1] = g * grid.v[j];
  }

  FockVector vac = vacuum_vector(basis);
  std::vector<FeshbachRow> rows;
  for (double lambda : lambdas) {
    require(lambda <= ground_energy - 1e-6,
            "feshbach_check: shift within 1e-6 of the ground energy rejected");
    FockVector x = resolve(F, lambda, vac);
    double lhs = x.coeff[0].real();

    SpMat shifted = reduced;
    SpMat ident(n - 1, n - 1);
    ident.setIdentity();
    shifted -= Complex(lambda) * ident;
    Eigen::SimplicialLDLT<SpMat> ldlt(shifted);
    require(ldlt.info() == Eigen::Success && ldlt.vectorD().real().minCoeff() > 0.0,
            "feshbach_check: reduced operator not positive at this shift");
    Eigen::VectorXcd y = ldlt.solve(b);
    for (int pass = 0; pass < 2; ++pass) y += ldlt.solve((b - shifted * y).eval());
    double quad = std::real(b.dot(y));
    double rhs = 1.0 / (eta - lambda - quad);
    rows.push_back({lambda, lhs, rhs, std::abs(lhs - rhs)});
  }
  return rows;
}

std::vector<double> semigroup_distance(const AssembledOperator& A, const AssembledOperator& B,
                                       const std::vector<double>& ts, std::size_t dense_cap) {
  require(A.dim() == B.dim(), "semigroup_distance: dimension mismatch");
  require(A.dim() <= dense_cap, "semigroup_distance: dimension above the dense cap");
  require(A.is_real() && B.is_real(), "semigroup_distance: real operators expected");
  EighResult ea = symmetric_eigh(A.dense_real(), true);
  EighResult eb = symmetric_eigh(B.dense_real(), true);
  std::vector<double> out;
  out.reserve(ts.size());
  for (double t : ts) {
    require(t > 0.0, "semigroup_distance: t must be positive");
    Eigen::MatrixXd ma =
        (ea.vectors.array().rowwise() * (-t * ea.values.array()).exp().transpose()).matrix() *
        ea.vectors.transpose();
    Eigen::MatrixXd mb =
        (eb.vectors.array().rowwise() * (-t * eb.values.array()).exp().transpose()).matrix() *
        eb.vectors.transpose();
    out.push_back(spectral_norm(Eigen::MatrixXd(ma - mb)));
  }
  return out;
}

GapCensus gap_census(const SpectralResult& r, double m) {
  require(m > 0.0, "gap_census: gap proxy must be positive");
  GapCensus c;
  const double E = r.ground_energy;
  c.gap_edge = E + m;
  std::vector<double> inside;
  for (double ev : r.eigenvalues) {
    if (std::abs(ev - c.gap_edge) <= 1e-9) {
      ++c.ambiguous;
      continue;
    }
    if (ev >= E - 1e-12 && ev < c.gap_edge) inside.push_back(ev);
  }
  c.count = static_cast<int>(inside.size());
  for (std::size_t i = 1; i < inside.size(); ++i)
    c.splittings.push_back(inside[i] - inside[i - 1]);
  c.complete = !r.eigenvalues.empty() && r.eigenvalues.back() >= c.gap_edge;
  return c;
}

double expectation(const AssembledOperator& A, const FockVector& psi) {
  return std::real(psi.coeff.dot(A.apply(psi.coeff)));
}

}  // namespace sbtk
