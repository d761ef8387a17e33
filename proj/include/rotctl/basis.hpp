#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace rotctl {

/// Truncated |J, m=0> ladder: the controlled states J = 0..j_target plus
/// j_buffer extra states used only to detect leakage.
class RotationalBasis {
 public:
  static constexpr int kDefaultBuffer = 8;

  explicit RotationalBasis(int j_target, int j_buffer = kDefaultBuffer);

  int j_target() const noexcept { return j_target_; }
  int j_buffer() const noexcept { return j_buffer_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(j_target_ + j_buffer_ + 1); }

 private:
  int j_target_;
  int j_buffer_;
};

/// Real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal (off(i) couples rows i and i + 1).
struct SymTridiagonal {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  std::size_t size() const noexcept { return static_cast<std::size_t>(diag.size()); }
  Eigen::MatrixXd dense() const;
};

/// cos(theta) in the m = 0 rotor basis of dimension n (n >= 1).
SymTridiagonal cos_tridiagonal(std::size_t n);

Eigen::MatrixXd cos_operator_matrix(const RotationalBasis& basis);
Eigen::MatrixXd cos_operator_matrix(std::size_t n);

/// cos^2(theta), built by squaring cos(theta) on a basis two states larger
/// and truncating back so that the edge rows are exact.
Eigen::MatrixXd cos2_operator_matrix(const RotationalBasis& basis);
Eigen::MatrixXd cos2_operator_matrix(std::size_t n);

}  // namespace rotctl
