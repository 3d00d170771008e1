#include "sbtk/assembled_operator.hpp"

#include <cmath>

namespace sbtk {

namespace {
constexpr double kHermTol = 1e-12;
}

AssembledOperator::AssembledOperator(BasisPtr basis, SpMat m, OperatorRecipe r)
    : basis_(std::move(basis)), m_(std::move(m)), recipe_(std::move(r)) {
  const SpMat& s = std::get<SpMat>(m_);
  require(s.rows() == s.cols(), "AssembledOperator: matrix must be square");
  require(static_cast<std::size_t>(s.rows()) == basis_->size(),
          "AssembledOperator: matrix/basis dimension mismatch");
  dim_ = basis_->size();
  check_hermitian();
}

AssembledOperator::AssembledOperator(BasisPtr basis, Eigen::MatrixXd m, OperatorRecipe r)
    : basis_(std::move(basis)), m_(std::move(m)), recipe_(std::move(r)) {
  const auto& d = std::get<Eigen::MatrixXd>(m_);
  require(d.rows() == d.cols() && static_cast<std::size_t>(d.rows()) == basis_->size(),
          "AssembledOperator: matrix/basis dimension mismatch");
  dim_ = basis_->size();
  check_hermitian();
}

AssembledOperator::AssembledOperator(BasisPtr basis, Eigen::MatrixXcd m, OperatorRecipe r)
    : basis_(std::move(basis)), m_(std::move(m)), recipe_(std::move(r)) {
  const auto& d = std::get<Eigen::MatrixXcd>(m_);
  require(d.rows() == d.cols() && static_cast<std::size_t>(d.rows()) == basis_->size(),
          "AssembledOperator: matrix/basis dimension mismatch");
  dim_ = basis_->size();
  check_hermitian();
}

bool AssembledOperator::is_real() const {
  if (std::holds_alternative<Eigen::MatrixXd>(m_)) return true;
  if (std::holds_alternative<Eigen::MatrixXcd>(m_)) return false;
  const SpMat& s = std::get<SpMat>(m_);
  for (int k = 0; k < s.outerSize(); ++k) {
    for (SpMat::InnerIterator it(s, k); it; ++it) {
      if (it.value().imag() != 0.0) return false;
    }
  }
  return true;
}

Eigen::VectorXcd AssembledOperator::apply(const Eigen::VectorXcd& x) const {
  require(static_cast<std::size_t>(x.size()) == dim_, "apply: vector dimension mismatch");
  if (const SpMat* s = std::get_if<SpMat>(&m_)) return *s * x;
  if (const Eigen::MatrixXd* d = std::get_if<Eigen::MatrixXd>(&m_))
    return (d->cast<Complex>() * x).eval();
  return std::get<Eigen::MatrixXcd>(m_) * x;
}

Eigen::VectorXd AssembledOperator::apply(const Eigen::VectorXd& x) const {
  require(static_cast<std::size_t>(x.size()) == dim_, "apply: vector dimension mismatch");
  if (const Eigen::MatrixXd* d = std::get_if<Eigen::MatrixXd>(&m_)) return *d * x;
  if (const SpMat* s = std::get_if<SpMat>(&m_)) {
    Eigen::VectorXcd y = *s * x.cast<Complex>();
    return y.real();
  }
  fail("apply: real vector on complex dense operator");
}

const SpMat& AssembledOperator::sparse() const {
  require(is_sparse(), "sparse(): operator '" + recipe_.kind + "' has dense storage");
  return std::get<SpMat>(m_);
}

Eigen::MatrixXd AssembledOperator::dense_real() const {
  if (const Eigen::MatrixXd* d = std::get_if<Eigen::MatrixXd>(&m_)) return *d;
  if (const SpMat* s = std::get_if<SpMat>(&m_)) {
    Eigen::MatrixXcd full(*s);
    require(full.imag().cwiseAbs().maxCoeff() == 0.0,
            "dense_real: operator '" + recipe_.kind + "' has complex entries");
    return full.real();
  }
  fail("dense_real: operator '" + recipe_.kind + "' is complex dense");
}

Eigen::MatrixXcd AssembledOperator::dense_complex() const {
  if (const SpMat* s = std::get_if<SpMat>(&m_)) return Eigen::MatrixXcd(*s);
  if (const Eigen::MatrixXd* d = std::get_if<Eigen::MatrixXd>(&m_)) return d->cast<Complex>();
  return std::get<Eigen::MatrixXcd>(m_);
}

double AssembledOperator::max_abs() const {
  if (const SpMat* s = std::get_if<SpMat>(&m_)) {
    double m = 0.0;
    for (int k = 0; k < s->outerSize(); ++k)
      for (SpMat::InnerIterator it(*s, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
  }
  if (const Eigen::MatrixXd* d = std::get_if<Eigen::MatrixXd>(&m_))
    return d->size() ? d->cwiseAbs().maxCoeff() : 0.0;
  const auto& d = std::get<Eigen::MatrixXcd>(m_);
  return d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
}

double AssembledOperator::hermiticity_defect() const {
  if (const SpMat* s = std::get_if<SpMat>(&m_)) {
    SpMat diff = *s - SpMat(s->adjoint());
    double m = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
      for (SpMat::InnerIterator it(diff, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
  }
  if (const Eigen::MatrixXd* d = std::get_if<Eigen::MatrixXd>(&m_))
    return (*d - d->transpose()).cwiseAbs().maxCoeff();
  const auto& d = std::get<Eigen::MatrixXcd>(m_);
  return (d - d.adjoint()).cwiseAbs().maxCoeff();
}

void AssembledOperator::check_hermitian() const {
  if (!recipe_.hermitian) return;
  double scale = max_abs();
  if (scale == 0.0) return;
  double defect = hermiticity_defect();
  if (defect > kHermTol * scale) {
    fail("AssembledOperator '" + recipe_.kind + "': hermiticity defect " +
         std::to_string(defect) + " above tolerance");
  }
}

}  // namespace sbtk
