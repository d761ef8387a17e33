#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotctl/tdse.hpp"

namespace rotctl {

/// cos(theta) and cos^2(theta) matrices for one basis size, built once and
/// reused across a trajectory.
class ObservableOperators {
 public:
  explicit ObservableOperators(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  double orientation(const Eigen::VectorXcd& psi) const;
  double alignment(const Eigen::VectorXcd& psi) const;

 private:
  std::size_t size_;
  SymTridiagonal cos_;
  Eigen::MatrixXd cos2_;
};

double orientation(const Eigen::VectorXcd& psi);
double alignment(const Eigen::VectorXcd& psi);
Eigen::VectorXd populations(const Eigen::VectorXcd& psi);

enum class SeriesKind { Orientation, Alignment, Population, Norm };

struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> values;
  SeriesKind kind = SeriesKind::Orientation;
  int j = -1;  // state index for population series

  std::string label() const;
};

ObservableSeries series(const Trajectory& trajectory, SeriesKind kind, int j = -1);

struct PeakStatistics {
  double t_star = 0.0;
  double max = 0.0;
  std::vector<double> peak_times;   // refined local maxima above half the window maximum
  std::vector<double> spacings;
  double mean_spacing = 0.0;
  double spacing_spread = 0.0;      // max |spacing - mean|
};

/// Peak analysis on samples with t in [t_a, t_b]. Local maxima above half the
/// window maximum are refined by a parabola through three samples.
PeakStatistics peak_statistics(const ObservableSeries& series, double t_a, double t_b);

struct AngularDistribution {
  std::vector<double> theta;
  std::vector<double> density;   // includes the sin(theta) Jacobian
  double slope_start = 0.0;      // exact d rho / d theta at 0 and pi
  double slope_end = 0.0;

  /// Trapezoidal integral of the density over [0, pi] with the first
  /// Euler-Maclaurin end correction, so the error is O(h^4).
  double integral() const;
  /// Trapezoidal integral over [0, pi/2].
  double forward_weight() const;
};

/// rho(theta) = 2 pi sin(theta) |sum_J c_J Y_J0(theta)|^2 on a uniform grid of
/// n_grid points spanning [0, pi]; n_grid >= 64.
AngularDistribution angular_distribution(const Eigen::VectorXcd& psi, std::size_t n_grid);

/// P_0..P_jmax at x by upward recurrence.
std::vector<double> legendre_values(int j_max, double x);

}  // namespace rotctl
