#include "sbtk/fock_ops.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "sbtk/dense_linalg.hpp"

namespace sbtk {

namespace {

void require_plain(const BasisPtr& basis, const char* who) {
  require(!basis->with_qubit(), std::string(who) + ": expects a no-qubit basis");
}

std::string mode_detail(int j) {
  return "mode " + std::to_string(j);
}

}  // namespace

AssembledOperator annihilation(const BasisPtr& basis, int mode) {
  require_plain(basis, "annihilation");
  require(mode >= 0 && mode < basis->modes(), "annihilation: mode index out of range");
  std::vector<Triplet> trip;
  trip.reserve(basis->fock_size());
  for (std::size_t i = 0; i < basis->fock_size(); ++i) {
    int n = basis->occ(i, mode);
    if (n == 0) continue;
    long t = basis->lowered(i, mode);
    trip.emplace_back(static_cast<int>(t), static_cast<int>(i), std::sqrt(double(n)));
  }
  SpMat m(static_cast<long>(basis->fock_size()), static_cast<long>(basis->fock_size()));
  m.setFromTriplets(trip.begin(), trip.end());
  return AssembledOperator(basis, std::move(m), {"annihilation", mode_detail(mode), false});
}

AssembledOperator creation(const BasisPtr& basis, int mode) {
  require_plain(basis, "creation");
  require(mode >= 0 && mode < basis->modes(), "creation: mode index out of range");
  std::vector<Triplet> trip;
  trip.reserve(basis->fock_size());
  for (std::size_t i = 0; i < basis->fock_size(); ++i) {
    long t = basis->raised(i, mode);
    if (t < 0) continue;  // top shell maps to zero
    trip.emplace_back(static_cast<int>(t), static_cast<int>(i),
                      std::sqrt(double(basis->occ(i, mode) + 1)));
  }
  SpMat m(static_cast<long>(basis->fock_size()), static_cast<long>(basis->fock_size()));
  m.setFromTriplets(trip.begin(), trip.end());
  return AssembledOperator(basis, std::move(m), {"creation", mode_detail(mode), false});
}

AssembledOperator field(const BasisPtr& basis, const ModeGrid& grid, double scale) {
  require_plain(basis, "field");
  require(grid.mode_count() == basis->modes(), "field: grid/basis mode count mismatch");
  std::vector<Triplet> trip;
  trip.reserve(2 * basis->fock_size() * grid.mode_count());
  for (std::size_t i = 0; i < basis->fock_size(); ++i) {
    for (int j = 0; j < basis->modes(); ++j) {
      const Complex vj = grid.v[j];
      if (vj == Complex(0.0)) continue;
      long up = basis->raised(i, j);
      if (up >= 0) {
        trip.emplace_back(static_cast<int>(up), static_cast<int>(i),
                          scale * vj * std::sqrt(double(basis->occ(i, j) + 1)));
      }
      int n = basis->occ(i, j);
      if (n > 0) {
        long down = basis->lowered(i, j);
        trip.emplace_back(static_cast<int>(down), static_cast<int>(i),
                          scale * std::conj(vj) * std::sqrt(double(n)));
      }
    }
  }
  SpMat m(static_cast<long>(basis->fock_size()), static_cast<long>(basis->fock_size()));
  m.setFromTriplets(trip.begin(), trip.end());
  std::ostringstream os;
  os << "scale=" << scale << ", " << grid.mode_count() << " modes";
  return AssembledOperator(basis, std::move(m), {"field", os.str(), true});
}

AssembledOperator dgamma(const BasisPtr& basis, const ModeGrid& grid) {
  require_plain(basis, "dgamma");
  require(grid.mode_count() == basis->modes(), "dgamma: grid/basis mode count mismatch");
  std::vector<Triplet> trip;
  trip.reserve(basis->fock_size());
  for (std::size_t i = 0; i < basis->fock_size(); ++i) {
    double e = 0.0;
    for (int j = 0; j < basis->modes(); ++j) e += basis->occ(i, j) * grid.omega[j];
    trip.emplace_back(static_cast<int>(i), static_cast<int>(i), e);
  }
  SpMat m(static_cast<long>(basis->fock_size()), static_cast<long>(basis->fock_size()));
  m.setFromTriplets(trip.begin(), trip.end());
  return AssembledOperator(basis, std::move(m), {"dgamma", grid.label, true});
}

AssembledOperator number_operator(const BasisPtr& basis) {
  require_plain(basis, "number_operator");
  std::vector<Triplet> trip;
  trip.reserve(basis->fock_size());
  for (std::size_t i = 0; i < basis->fock_size(); ++i) {
    trip.emplace_back(static_cast<int>(i), static_cast<int>(i), double(basis->total(i)));
  }
  SpMat m(static_cast<long>(basis->fock_size()), static_cast<long>(basis->fock_size()));
  m.setFromTriplets(trip.begin(), trip.end());
  return AssembledOperator(basis, std::move(m), {"number", "", true});
}

AssembledOperator parity(const BasisPtr& basis) {
  require_plain(basis, "parity");
  std::vector<Triplet> trip;
  trip.reserve(basis->fock_size());
  for (std::size_t i = 0; i < basis->fock_size(); ++i) {
    trip.emplace_back(static_cast<int>(i), static_cast<int>(i),
                      (basis->total(i) % 2 == 0) ? 1.0 : -1.0);
  }
  SpMat m(static_cast<long>(basis->fock_size()), static_cast<long>(basis->fock_size()));
  m.setFromTriplets(trip.begin(), trip.end());
  return AssembledOperator(basis, std::move(m), {"parity", "", true});
}

Eigen::MatrixXd single_mode_displacement(double alpha, int ncap) {
  require(ncap >= 1, "single_mode_displacement: ncap must be positive");
  const double a = std::abs(alpha);
  if (a == 0.0) return Eigen::MatrixXd::Identity(ncap, ncap);

  // Spectral form of the one-mode generator a*(a^dag - a) on a padded space.
  // With Phi = diag(i^n), the Hermitian matrix i*(generator) is unitarily
  // equivalent to the real symmetric tridiagonal J with off-diagonal
  // a*sqrt(n+1); the padding keeps the displaced packets of every kept state
  // inside the computed space, so the returned corner carries the entries of
  // the untruncated operator.
  const double root = std::sqrt(double(ncap)) + a;
  const int npad = static_cast<int>(std::ceil(root * root + 8.0 * root + 20.0));
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(npad);
  Eigen::VectorXd off(npad - 1);
  for (int n = 0; n + 1 < npad; ++n) off[n] = a * std::sqrt(double(n + 1));
  EighResult eig = tridiagonal_eigh(diag, off);

  Eigen::MatrixXd qc = eig.vectors.topRows(ncap);
  Eigen::ArrayXd lam = eig.values.array();
  Eigen::MatrixXd c = (qc.array().rowwise() * lam.cos().transpose()).matrix() * qc.transpose();
  Eigen::MatrixXd s = (qc.array().rowwise() * lam.sin().transpose()).matrix() * qc.transpose();

  Eigen::MatrixXd d(ncap, ncap);
  for (int m = 0; m < ncap; ++m) {
    for (int n = 0; n < ncap; ++n) {
      switch (((m - n) % 4 + 4) % 4) {
        case 0: d(m, n) = c(m, n); break;
        case 1: d(m, n) = s(m, n); break;
        case 2: d(m, n) = -c(m, n); break;
        default: d(m, n) = -s(m, n); break;
      }
    }
  }
  if (alpha < 0.0) return d.transpose().eval();
  return d;
}

namespace {

// Per-mode factors of the multimode displacement; complex amplitudes are a
// phase conjugation of the real-amplitude operator.
std::vector<Eigen::MatrixXcd> one_mode_factors(const std::vector<Complex>& f, int n1) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(f.size());
  for (const Complex& fj : f) {
    if (fj.imag() == 0.0) {
      out.emplace_back(single_mode_displacement(fj.real(), n1).cast<Complex>());
      continue;
    }
    Eigen::MatrixXd base = single_mode_displacement(std::abs(fj), n1);
    double theta = std::arg(fj);
    Eigen::MatrixXcd m(n1, n1);
    for (int r = 0; r < n1; ++r)
      for (int col = 0; col < n1; ++col)
        m(r, col) = std::polar(1.0, theta * (r - col)) * base(r, col);
    out.emplace_back(std::move(m));
  }
  return out;
}

template <typename Mat, typename Factor>
Mat assemble_product(const BasisPtr& basis, const std::vector<Factor>& factors) {
  const std::size_t n = basis->fock_size();
  const int modes = basis->modes();
  Mat w(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::uint16_t* sc = basis->state(col);
    for (std::size_t row = 0; row < n; ++row) {
      const std::uint16_t* sr = basis->state(row);
      typename Mat::Scalar p = factors[0](sr[0], sc[0]);
      for (int j = 1; j < modes; ++j) {
        if (p == typename Mat::Scalar(0)) break;
        p *= factors[j](sr[j], sc[j]);
      }
      w(row, col) = p;
    }
  }
  return w;
}

template <typename Mat>
double unitarity_defect_low_block(const Mat& w, const BasisPtr& basis, int block_total) {
  std::size_t b = basis->sector_begin(std::min(block_total + 1, basis->n_max() + 1));
  b = std::min<std::size_t>(b, 512);  // diagnostic block, cost-capped
  if (b == 0) return 0.0;
  Mat cols = w.leftCols(static_cast<long>(b));
  Mat gram = cols.adjoint() * cols;
  return (gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

AssembledOperator displacement(const BasisPtr& basis, const std::vector<Complex>& f,
                               const DisplacementOptions& opts) {
  require_plain(basis, "displacement");
  require(static_cast<int>(f.size()) == basis->modes(), "displacement: amplitude size mismatch");
  require(basis->fock_size() <= opts.dense_dim_cap,
          "displacement: dense assembly above the dimension cap (" +
              std::to_string(basis->fock_size()) + " states)");
  const int n1 = basis->n_max() + 1;
  const int block = opts.check_block_total >= 0 ? opts.check_block_total : basis->n_max() / 2;

  bool realf = true;
  double norm2 = 0.0;
  for (const Complex& fj : f) {
    realf = realf && fj.imag() == 0.0;
    norm2 += std::norm(fj);
  }
  std::ostringstream os;
  os << "|f|^2=" << norm2 << ", " << f.size() << " modes";
  OperatorRecipe recipe{"displacement", os.str(), false};

  auto check_defect = [&](double defect) {
    if (opts.unitarity_bound >= 0.0 && defect > opts.unitarity_bound) {
      fail("displacement: unitarity defect " + std::to_string(defect) +
           " above the configured bound on the low-occupation block; raise n_max");
    }
    recipe.unitarity_defect = defect;
  };

  if (realf) {
    std::vector<Eigen::MatrixXd> factors;
    factors.reserve(f.size());
    for (const Complex& fj : f) factors.push_back(single_mode_displacement(fj.real(), n1));
    Eigen::MatrixXd w = assemble_product<Eigen::MatrixXd>(basis, factors);
    check_defect(unitarity_defect_low_block(w, basis, block));
    return AssembledOperator(basis, std::move(w), recipe);
  }
  auto factors = one_mode_factors(f, n1);
  Eigen::MatrixXcd w = assemble_product<Eigen::MatrixXcd>(basis, factors);
  check_defect(unitarity_defect_low_block(w, basis, block));
  return AssembledOperator(basis, std::move(w), recipe);
}

AssembledOperator weyl_parity(const BasisPtr& basis, const std::vector<Complex>& f,
                              const DisplacementOptions& opts) {
  AssembledOperator d = displacement(basis, f, opts);
  OperatorRecipe recipe = d.recipe();
  recipe.kind = "weyl_parity";
  recipe.hermitian = true;
  // right-multiplying by parity flips the sign of odd-total columns
  if (d.is_real()) {
    Eigen::MatrixXd w = d.dense_real();
    for (std::size_t c = 0; c < basis->fock_size(); ++c)
      if (basis->total(c) % 2 == 1) w.col(static_cast<long>(c)) *= -1.0;
    return AssembledOperator(basis, std::move(w), recipe);
  }
  Eigen::MatrixXcd w = d.dense_complex();
  for (std::size_t c = 0; c < basis->fock_size(); ++c)
    if (basis->total(c) % 2 == 1) w.col(static_cast<long>(c)) *= -1.0;
  return AssembledOperator(basis, std::move(w), recipe);
}

FockVector coherent_vector(const BasisPtr& basis, const std::vector<Complex>& f, bool normalized,
                           double tail_warn_tol) {
  require_plain(basis, "coherent_vector");
  require(static_cast<int>(f.size()) == basis->modes(), "coherent_vector: amplitude size mismatch");
  double norm2 = 0.0;
  for (const Complex& fj : f) norm2 += std::norm(fj);

  FockVector psi;
  psi.basis = basis;
  psi.coeff.resize(static_cast<long>(basis->fock_size()));
  const double log_shift = normalized ? -0.5 * norm2 : 0.0;
  for (std::size_t i = 0; i < basis->fock_size(); ++i) {
    double logmag = log_shift;
    double phase = 0.0;
    bool zero = false;
    for (int j = 0; j < basis->modes(); ++j) {
      int n = basis->occ(i, j);
      if (n == 0) continue;
      if (f[j] == Complex(0.0)) {
        zero = true;
        break;
      }
      logmag += n * std::log(std::abs(f[j])) - 0.5 * std::lgamma(double(n) + 1.0);
      phase += n * std::arg(f[j]);
    }
    if (zero) {
      psi.coeff[static_cast<long>(i)] = 0.0;
      continue;
    }
    require(logmag < 700.0, "coherent_vector: amplitude overflow; use the normalized form");
    psi.coeff[static_cast<long>(i)] = std::polar(std::exp(logmag), phase);
  }
  double kept = psi.coeff.squaredNorm();
  psi.tail_mass = normalized ? 1.0 - kept : 1.0 - kept * std::exp(-norm2);
  if (psi.tail_mass > tail_warn_tol) {
    std::cerr << "coherent_vector: truncated tail mass " << psi.tail_mass << " at n_max="
              << basis->n_max() << " exceeds " << tail_warn_tol << "\n";
  }
  return psi;
}

}  // namespace sbtk
