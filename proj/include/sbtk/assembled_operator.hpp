#ifndef SBTK_ASSEMBLED_OPERATOR_HPP
#define SBTK_ASSEMBLED_OPERATOR_HPP

#include <memory>
#include <string>
#include <variant>

#include "sbtk/common.hpp"
#include "sbtk/fock_basis.hpp"

namespace sbtk {

/// Construction record carried by every assembled operator.
struct OperatorRecipe {
  std::string kind;
  std::string detail;
  bool hermitian = true;          // checked at construction when set
  double unitarity_defect = 0.0;  // displacement operators: ||W*W - I|| on the low block
};

/*
 * A matrix over a FockBasis together with its construction recipe.  Storage
 * is sparse complex for the elementary operators and dense (real or complex)
 * for displacement-type operators, which are dense in the occupation basis.
 */
class AssembledOperator {
 public:
  AssembledOperator(BasisPtr basis, SpMat m, OperatorRecipe r);
  AssembledOperator(BasisPtr basis, Eigen::MatrixXd m, OperatorRecipe r);
  AssembledOperator(BasisPtr basis, Eigen::MatrixXcd m, OperatorRecipe r);

  std::size_t dim() const { return dim_; }
  const BasisPtr& basis() const { return basis_; }
  const OperatorRecipe& recipe() const { return recipe_; }

  bool is_sparse() const { return std::holds_alternative<SpMat>(m_); }
  bool is_real() const;  // all stored entries real (within 0 tolerance for sparse)

  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;  // requires real content

  const SpMat& sparse() const;
  Eigen::MatrixXd dense_real() const;    // throws when content is complex
  Eigen::MatrixXcd dense_complex() const;

  double max_abs() const;
  double hermiticity_defect() const;  // max |A - A^H| entrywise

 private:
  void check_hermitian() const;

  BasisPtr basis_;
  std::variant<SpMat, Eigen::MatrixXd, Eigen::MatrixXcd> m_;
  OperatorRecipe recipe_;
  std::size_t dim_ = 0;
};

}  // namespace sbtk

#endif
