#include "rotctl/basis.hpp"

#include <string>

#include "rotctl/errors.hpp"
#include "rotctl/molecule.hpp"

namespace rotctl {

RotationalBasis::RotationalBasis(int j_target, int j_buffer)
    : j_target_(j_target), j_buffer_(j_buffer) {
  if (j_target < 1) {
    throw DomainError("basis: j_target must be >= 1, got " + std::to_string(j_target));
  }
  if (j_buffer < 0) {
    throw DomainError("basis: j_buffer must be >= 0, got " + std::to_string(j_buffer));
  }
}

Eigen::MatrixXd SymTridiagonal::dense() const {
  const Eigen::Index n = diag.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m.diagonal() = diag;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = off(i);
    m(i + 1, i) = off(i);
  }
  return m;
}

SymTridiagonal cos_tridiagonal(std::size_t n) {
  if (n == 0) throw DomainError("cos_tridiagonal: dimension must be positive");
  SymTridiagonal t;
  t.diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  t.off.resize(static_cast<Eigen::Index>(n - 1));
  for (std::size_t j = 0; j + 1 < n; ++j) {
    t.off(static_cast<Eigen::Index>(j)) = cos_matrix_element(static_cast<int>(j));
  }
  return t;
}

Eigen::MatrixXd cos_operator_matrix(std::size_t n) { return cos_tridiagonal(n).dense(); }

Eigen::MatrixXd cos_operator_matrix(const RotationalBasis& basis) {
  return cos_operator_matrix(basis.size());
}

Eigen::MatrixXd cos2_operator_matrix(std::size_t n) {
  const Eigen::MatrixXd big = cos_operator_matrix(n + 2);
  const Eigen::MatrixXd squared = big * big;
  const auto k = static_cast<Eigen::Index>(n);
  return squared.topLeftCorner(k, k);
}

Eigen::MatrixXd cos2_operator_matrix(const RotationalBasis& basis) {
  return cos2_operator_matrix(basis.size());
}

}  // namespace rotctl
