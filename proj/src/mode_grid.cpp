#include "sbtk/mode_grid.hpp"

#include <algorithm>
#include <cmath>

namespace sbtk {

double ModeGrid::min_omega() const {
  require(!omega.empty(), "ModeGrid: empty grid");
  return *std::min_element(omega.begin(), omega.end());
}

double ModeGrid::max_omega() const {
  require(!omega.empty(), "ModeGrid: empty grid");
  return *std::max_element(omega.begin(), omega.end());
}

double ModeGrid::weighted_norm2(double s) const {
  double sum = 0.0;
  for (int j = 0; j < mode_count(); ++j) {
    sum += std::norm(v[j]) * std::pow(omega[j], -2.0 * s);
  }
  return sum;
}

bool ModeGrid::real_coupling(double tol) const {
  for (const Complex& vj : v) {
    if (std::abs(vj.imag()) > tol) return false;
  }
  return true;
}

void ModeGrid::validate() const {
  require(!omega.empty(), "ModeGrid: at least one mode required");
  require(omega.size() == v.size() && omega.size() == weight.size(),
          "ModeGrid: omega/v/weight size mismatch");
  for (double w : omega) {
    require(w > 0.0 && std::isfinite(w), "ModeGrid: frequencies must be strictly positive");
  }
  for (double w : weight) {
    require(w > 0.0 && std::isfinite(w), "ModeGrid: weights must be strictly positive");
  }
  for (const Complex& vj : v) {
    require(std::isfinite(vj.real()) && std::isfinite(vj.imag()), "ModeGrid: non-finite amplitude");
  }
  for (double s : {0.0, 0.5, 1.0}) {
    double n = weighted_norm2(s);
    require(std::isfinite(n) && n >= 0.0, "ModeGrid: weighted norm not finite");
  }
}

}  // namespace sbtk
