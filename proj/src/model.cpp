#include "sbtk/model.hpp"

#include <cmath>
#include <sstream>

namespace sbtk {

void ModelParams::validate() const {
  grid.validate();
  require(n_max >= 1, "ModelParams: n_max must be at least 1");
  require(g >= 0.0, "ModelParams: g must be nonnegative");
  require(std::isfinite(eta), "ModelParams: eta must be finite");
}

AssembledOperator build_fiber(const ModelParams& p, const BasisPtr& basis) {
  p.validate();
  require(!basis->with_qubit(), "build_fiber: no-qubit basis expected");
  require(basis->modes() == p.grid.mode_count(), "build_fiber: basis/grid mismatch");
  SpMat m = dgamma(basis, p.grid).sparse();
  if (p.eta != 0.0) m += Complex(p.eta) * parity(basis).sparse();
  if (p.g != 0.0) m += field(basis, p.grid, p.g).sparse();
  std::ostringstream os;
  os << "eta=" << p.eta << ", g=" << p.g << ", n_max=" << basis->n_max();
  return AssembledOperator(basis, std::move(m), {"fiber", os.str(), true});
}

AssembledOperator build_fiber(const ModelParams& p) {
  return build_fiber(p, FockBasis::enumerate(p.grid.mode_count(), p.n_max, false, p.state_cap));
}

AssembledOperator build_full(const ModelParams& p, const BasisPtr& basis) {
  p.validate();
  require(basis->with_qubit(), "build_full: qubit basis expected");
  require(basis->modes() == p.grid.mode_count(), "build_full: basis/grid mismatch");
  const long nf = static_cast<long>(basis->fock_size());

  // channel-major blocks: [ +eta + dG , phi ; phi , -eta + dG ]
  std::vector<Triplet> trip;
  BasisPtr plain = FockBasis::enumerate(basis->modes(), basis->n_max(), false, p.state_cap);
  const SpMat dg = dgamma(plain, p.grid).sparse();
  for (int k = 0; k < dg.outerSize(); ++k) {
    for (SpMat::InnerIterator it(dg, k); it; ++it) {
      trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
      trip.emplace_back(static_cast<int>(it.row() + nf), static_cast<int>(it.col() + nf),
                        it.value());
    }
  }
  if (p.eta != 0.0) {
    for (long i = 0; i < nf; ++i) {
      trip.emplace_back(static_cast<int>(i), static_cast<int>(i), Complex(p.eta));
      trip.emplace_back(static_cast<int>(i + nf), static_cast<int>(i + nf), Complex(-p.eta));
    }
  }
  if (p.g != 0.0) {
    const SpMat phi = field(plain, p.grid, p.g).sparse();
    for (int k = 0; k < phi.outerSize(); ++k) {
      for (SpMat::InnerIterator it(phi, k); it; ++it) {
        trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col() + nf), it.value());
        trip.emplace_back(static_cast<int>(it.row() + nf), static_cast<int>(it.col()), it.value());
      }
    }
  }
  SpMat m(2 * nf, 2 * nf);
  m.setFromTriplets(trip.begin(), trip.end());
  std::ostringstream os;
  os << "eta=" << p.eta << ", g=" << p.g << ", n_max=" << basis->n_max();
  return AssembledOperator(basis, std::move(m), {"full", os.str(), true});
}

AssembledOperator build_full(const ModelParams& p) {
  return build_full(p, FockBasis::enumerate(p.grid.mode_count(), p.n_max, true, p.state_cap));
}

std::pair<FockVector, FockVector> parity_conjugation(const FockVector& psi) {
  const BasisPtr& basis = psi.basis;
  require(basis && basis->with_qubit(), "parity_conjugation: qubit-basis vector expected");
  const std::size_t nf = basis->fock_size();
  require(static_cast<std::size_t>(psi.coeff.size()) == 2 * nf,
          "parity_conjugation: coefficient size mismatch");

  BasisPtr plain = FockBasis::enumerate(basis->modes(), basis->n_max(), false);
  FockVector a{plain, Eigen::VectorXcd(static_cast<long>(nf)), 0.0};
  FockVector b{plain, Eigen::VectorXcd(static_cast<long>(nf)), 0.0};
  for (std::size_t i = 0; i < nf; ++i) {
    const Complex c1 = psi.coeff[static_cast<long>(i)];
    const Complex c2 = psi.coeff[static_cast<long>(i + nf)];
    if (basis->total(i) % 2 == 0) {
      a.coeff[static_cast<long>(i)] = c1;
      b.coeff[static_cast<long>(i)] = c2;
    } else {
      a.coeff[static_cast<long>(i)] = c2;
      b.coeff[static_cast<long>(i)] = c1;
    }
  }
  return {a, b};
}

PolaronFrame build_polaron_frame(const ModelParams& p, double split_mass, const BasisPtr& basis,
                                 const DisplacementOptions& opts) {
  p.validate();
  require(!basis->with_qubit(), "build_polaron_frame: no-qubit basis expected");
  require(basis->modes() == p.grid.mode_count(), "build_polaron_frame: basis/grid mismatch");
  require(split_mass > 0.0, "build_polaron_frame: split mass must be positive");

  const int M = p.grid.mode_count();
  std::vector<Complex> alpha(M, Complex(0.0));
  ModeGrid low = p.grid;  // keeps omega; coupling only on the low modes
  double shift = 0.0;
  double disp_norm2 = 0.0;
  for (int j = 0; j < M; ++j) {
    if (p.grid.omega[j] > split_mass) {
      alpha[j] = 2.0 * p.g * p.grid.v[j] / p.grid.omega[j];
      low.v[j] = 0.0;
      shift += p.g * p.g * std::norm(p.grid.v[j]) / p.grid.omega[j];
      disp_norm2 += std::norm(alpha[j]) / 4.0;  // tail guidance uses alpha/2 = g w^-1 v
    }
  }

  std::ostringstream os;
  os << "eta=" << p.eta << ", g=" << p.g << ", split=" << split_mass;

  // coherent tail mass of the frame displacement g w^-1 v at this n_max
  double tail = 0.0;
  if (disp_norm2 > 0.0) {
    double logterm = -disp_norm2, sum = 0.0;
    for (int n = 0; n <= basis->n_max(); ++n) {
      sum += std::exp(logterm);
      logterm += std::log(disp_norm2) - std::log(double(n + 1));
    }
    tail = std::max(0.0, 1.0 - sum);
  }

  bool low_nonzero = false;
  for (int j = 0; j < M; ++j) low_nonzero = low_nonzero || low.v[j] != Complex(0.0);

  auto sparse_part = [&]() {
    SpMat m = dgamma(basis, p.grid).sparse();
    if (p.g != 0.0 && low_nonzero) m += field(basis, low, p.g).sparse();
    return m;
  };

  if (disp_norm2 == 0.0) {
    // nothing displaced: W(0,-1) is the plain parity and everything is sparse
    SpMat m = sparse_part();
    if (p.eta != 0.0) m += Complex(p.eta) * parity(basis).sparse();
    AssembledOperator op(basis, std::move(m), {"polaron_fiber", os.str(), true});
    return {std::move(op), parity(basis), shift, alpha, tail};
  }

  AssembledOperator w = weyl_parity(basis, alpha, opts);
  if (p.eta == 0.0) {
    AssembledOperator op(basis, sparse_part(), {"polaron_fiber", os.str(), true});
    return {std::move(op), std::move(w), shift, alpha, tail};
  }
  if (w.is_real()) {
    Eigen::MatrixXd m = p.eta * w.dense_real();
    const SpMat sp = sparse_part();
    for (int k = 0; k < sp.outerSize(); ++k)
      for (SpMat::InnerIterator it(sp, k); it; ++it) m(it.row(), it.col()) += it.value().real();
    AssembledOperator op(basis, std::move(m), {"polaron_fiber", os.str(), true});
    return {std::move(op), std::move(w), shift, alpha, tail};
  }
  Eigen::MatrixXcd m = Complex(p.eta) * w.dense_complex();
  {
    const SpMat sp = sparse_part();
    for (int k = 0; k < sp.outerSize(); ++k)
      for (SpMat::InnerIterator it(sp, k); it; ++it) m(it.row(), it.col()) += it.value();
  }
  AssembledOperator op(basis, std::move(m), {"polaron_fiber", os.str(), true});
  return {std::move(op), std::move(w), shift, alpha, tail};
}

AssembledOperator build_polaron_fiber(const ModelParams& p, double split_mass,
                                      const BasisPtr& basis) {
  return build_polaron_frame(p, split_mass, basis).op;
}

AssembledOperator build_polaron_fiber(const ModelParams& p, double split_mass) {
  BasisPtr basis = FockBasis::enumerate(p.grid.mode_count(), p.n_max, false, p.state_cap);
  return build_polaron_fiber(p, split_mass, basis);
}

}  // namespace sbtk
