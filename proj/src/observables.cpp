#include "rotctl/observables.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "rotctl/errors.hpp"
#include "rotctl/units.hpp"

namespace rotctl {

ObservableOperators::ObservableOperators(std::size_t size)
    : size_(size), cos_(cos_tridiagonal(size)), cos2_(cos2_operator_matrix(size)) {}

double ObservableOperators::orientation(const Eigen::VectorXcd& psi) const {
  if (static_cast<std::size_t>(psi.size()) != size_) {
    throw DomainError("orientation: state size does not match the operator");
  }
  double sum = 0.0;
  for (Eigen::Index j = 0; j + 1 < psi.size(); ++j) {
    sum += cos_.off(j) * std::real(std::conj(psi(j + 1)) * psi(j));
  }
  return 2.0 * sum;
}

double ObservableOperators::alignment(const Eigen::VectorXcd& psi) const {
  if (static_cast<std::size_t>(psi.size()) != size_) {
    throw DomainError("alignment: state size does not match the operator");
  }
  const Eigen::VectorXd re = psi.real();
  const Eigen::VectorXd im = psi.imag();
  return re.dot(cos2_ * re) + im.dot(cos2_ * im);
}

double orientation(const Eigen::VectorXcd& psi) {
  return ObservableOperators(static_cast<std::size_t>(psi.size())).orientation(psi);
}

double alignment(const Eigen::VectorXcd& psi) {
  return ObservableOperators(static_cast<std::size_t>(psi.size())).alignment(psi);
}

Eigen::VectorXd populations(const Eigen::VectorXcd& psi) { return psi.cwiseAbs2(); }

std::string ObservableSeries::label() const {
  switch (kind) {
    case SeriesKind::Orientation: return "orientation";
    case SeriesKind::Alignment: return "alignment";
    case SeriesKind::Population: return "population(" + std::to_string(j) + ")";
    case SeriesKind::Norm: return "norm";
  }
  return "unknown";
}

ObservableSeries series(const Trajectory& trajectory, SeriesKind kind, int j) {
  if (trajectory.states.empty()) throw DomainError("series: empty trajectory");
  const auto size = static_cast<std::size_t>(trajectory.states.front().size());
  if (kind == SeriesKind::Population && (j < 0 || static_cast<std::size_t>(j) >= size)) {
    throw DomainError("series: population index out of range");
  }
  ObservableSeries out;
  out.kind = kind;
  out.j = kind == SeriesKind::Population ? j : -1;
  out.times = trajectory.times;
  out.values.reserve(trajectory.states.size());
  const ObservableOperators ops(size);
  for (const auto& psi : trajectory.states) {
    switch (kind) {
      case SeriesKind::Orientation: out.values.push_back(ops.orientation(psi)); break;
      case SeriesKind::Alignment: out.values.push_back(ops.alignment(psi)); break;
      case SeriesKind::Population: out.values.push_back(std::norm(psi(j))); break;
      case SeriesKind::Norm: out.values.push_back(psi.norm()); break;
    }
  }
  return out;
}

PeakStatistics peak_statistics(const ObservableSeries& s, double t_a, double t_b) {
  const auto first = std::lower_bound(s.times.begin(), s.times.end(), t_a);
  const auto last = std::upper_bound(s.times.begin(), s.times.end(), t_b);
  if (first >= last) throw DomainError("peak_statistics: window contains no samples");
  const auto lo = static_cast<std::size_t>(std::distance(s.times.begin(), first));
  const auto hi = static_cast<std::size_t>(std::distance(s.times.begin(), last));  // exclusive

  PeakStatistics stats;
  std::size_t arg = lo;
  for (std::size_t i = lo; i < hi; ++i) {
    if (s.values[i] > s.values[arg]) arg = i;
  }
  stats.t_star = s.times[arg];
  stats.max = s.values[arg];

  const auto refine = [&](std::size_t i, double& t, double& v) {
    const double y0 = s.values[i - 1], y1 = s.values[i], y2 = s.values[i + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    t = s.times[i];
    v = y1;
    if (denom < 0.0) {
      const double offset = 0.5 * (y0 - y2) / denom;  // in samples, within (-1, 1)
      const double h = 0.5 * (s.times[i + 1] - s.times[i - 1]);
      t += offset * h;
      v = y1 - 0.25 * (y0 - y2) * offset;
    }
  };

  if (arg > lo && arg + 1 < hi) refine(arg, stats.t_star, stats.max);

  const double threshold = 0.5 * stats.max;
  for (std::size_t i = lo + 1; i + 1 < hi; ++i) {
    if (s.values[i] > s.values[i - 1] && s.values[i] >= s.values[i + 1] && s.values[i] > threshold) {
      double t, v;
      refine(i, t, v);
      stats.peak_times.push_back(t);
    }
  }
  for (std::size_t i = 1; i < stats.peak_times.size(); ++i) {
    stats.spacings.push_back(stats.peak_times[i] - stats.peak_times[i - 1]);
  }
  if (!stats.spacings.empty()) {
    double sum = 0.0;
    for (double d : stats.spacings) sum += d;
    stats.mean_spacing = sum / static_cast<double>(stats.spacings.size());
    for (double d : stats.spacings) {
      stats.spacing_spread = std::max(stats.spacing_spread, std::abs(d - stats.mean_spacing));
    }
  }
  return stats;
}

std::vector<double> legendre_values(int j_max, double x) {
  std::vector<double> p(static_cast<std::size_t>(std::max(j_max, 0)) + 1);
  p[0] = 1.0;
  if (j_max >= 1) p[1] = x;
  for (int j = 1; j < j_max; ++j) {
    p[static_cast<std::size_t>(j) + 1] =
        ((2.0 * j + 1.0) * x * p[static_cast<std::size_t>(j)] - j * p[static_cast<std::size_t>(j) - 1]) /
        (j + 1.0);
  }
  return p;
}

double AngularDistribution::integral() const {
  double sum = 0.0;
  for (std::size_t i = 1; i < theta.size(); ++i) {
    sum += 0.5 * (density[i] + density[i - 1]) * (theta[i] - theta[i - 1]);
  }
  if (theta.size() < 2) return sum;
  const double h = theta[1] - theta[0];
  return sum - h * h / 12.0 * (slope_end - slope_start);
}

double AngularDistribution::forward_weight() const {
  // Linear interpolation to theta = pi/2 for the final partial panel.
  const double half = units::kPi / 2.0;
  double sum = 0.0;
  for (std::size_t i = 1; i < theta.size(); ++i) {
    if (theta[i] <= half) {
      sum += 0.5 * (density[i] + density[i - 1]) * (theta[i] - theta[i - 1]);
    } else {
      if (theta[i - 1] < half) {
        const double frac = (half - theta[i - 1]) / (theta[i] - theta[i - 1]);
        const double mid = density[i - 1] + frac * (density[i] - density[i - 1]);
        sum += 0.5 * (density[i - 1] + mid) * (half - theta[i - 1]);
      }
      break;
    }
  }
  return sum;
}

AngularDistribution angular_distribution(const Eigen::VectorXcd& psi, std::size_t n_grid) {
  if (n_grid < 64) throw DomainError("angular_distribution: grid needs at least 64 points");
  const int j_max = static_cast<int>(psi.size()) - 1;
  AngularDistribution out;
  out.theta.resize(n_grid);
  out.density.resize(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double theta = units::kPi * static_cast<double>(i) / static_cast<double>(n_grid - 1);
    const std::vector<double> p = legendre_values(j_max, std::cos(theta));
    std::complex<double> amp = 0.0;
    for (int j = 0; j <= j_max; ++j) {
      const double y = std::sqrt((2.0 * j + 1.0) / (4.0 * units::kPi)) * p[static_cast<std::size_t>(j)];
      amp += psi(j) * y;
    }
    out.theta[i] = theta;
    out.density[i] = 2.0 * units::kPi * std::sin(theta) * std::norm(amp);
    // sin(theta) vanishes at both ends, so only its derivative survives there.
    if (i == 0) out.slope_start = 2.0 * units::kPi * std::norm(amp);
    if (i + 1 == n_grid) out.slope_end = -2.0 * units::kPi * std::norm(amp);
  }
  return out;
}

}  // namespace rotctl
