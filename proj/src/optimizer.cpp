#include "rotctl/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rotctl/basis.hpp"
#include "rotctl/errors.hpp"
#include "rotctl/units.hpp"

namespace rotctl {

namespace {

constexpr int kBisectionCap = 400;
constexpr int kLogSpaceAbove = 12;

void require_jmax(int j_max, const char* op) {
  if (j_max < 1) {
    throw DomainError(std::string(op) + ": j_max must be >= 1, got " + std::to_string(j_max));
  }
}

double squared_element(int j) {
  const double m = cos_matrix_element(j);
  return m * m;
}

// D_0..D_order at lambda, each stored as (mantissa, log scale) so that the
// product D = mantissa * exp(scale) never under- or overflows.
struct ScaledValue {
  double mantissa;
  double log_scale;
};

std::vector<ScaledValue> scaled_determinants(int order, double lambda) {
  std::vector<ScaledValue> out;
  out.reserve(static_cast<std::size_t>(order) + 1);
  double prev = 1.0;  // D_{k-1}
  double cur = lambda;  // D_k
  double scale = 0.0;
  out.push_back({1.0, 0.0});
  if (order >= 1) out.push_back({cur, 0.0});
  for (int k = 2; k <= order; ++k) {
    const double next = lambda * cur - squared_element(k - 2) * prev;
    prev = cur;
    cur = next;
    const double mag = std::abs(cur);
    if (mag > 1e150 || (mag < 1e-150 && mag > 0.0)) {
      prev /= mag;
      cur /= mag;
      scale += std::log(mag);
    }
    out.push_back({cur, scale});
  }
  return out;
}

// Number of eigenvalues of the tridiagonal matrix strictly below x.
int sturm_count(const SymTridiagonal& t, double x) {
  const auto n = static_cast<Eigen::Index>(t.size());
  int count = 0;
  double d = t.diag(0) - x;
  for (Eigen::Index i = 0;; ++i) {
    if (d == 0.0) d = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1.0);
    if (d < 0.0) ++count;
    if (i + 1 == n) break;
    d = t.diag(i + 1) - x - t.off(i) * t.off(i) / d;
  }
  return count;
}

// Solves (T - shift I) y = rhs by Gaussian elimination without pivoting;
// only called with a definite shifted matrix.
Eigen::VectorXd solve_shifted(const SymTridiagonal& t, double shift, const Eigen::VectorXd& rhs) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::VectorXd c(n), d(n), y(n);
  double pivot = t.diag(0) - shift;
  c(0) = n > 1 ? t.off(0) / pivot : 0.0;
  d(0) = rhs(0) / pivot;
  for (Eigen::Index i = 1; i < n; ++i) {
    pivot = t.diag(i) - shift - t.off(i - 1) * c(i - 1);
    c(i) = i + 1 < n ? t.off(i) / pivot : 0.0;
    d(i) = (rhs(i) - t.off(i - 1) * d(i - 1)) / pivot;
  }
  y(n - 1) = d(n - 1);
  for (Eigen::Index i = n - 2; i >= 0; --i) y(i) = d(i) - c(i) * y(i + 1);
  return y;
}

}  // namespace

double char_poly_eval(int j_max, double lambda) {
  require_jmax(j_max, "char_poly_eval");
  double prev = 1.0;
  double cur = lambda;
  for (int k = 2; k <= j_max + 1; ++k) {
    const double next = lambda * cur - squared_element(k - 2) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double max_orientation(int j_max) {
  require_jmax(j_max, "max_orientation");
  // The largest root of D_j (the order-j determinant) is the previous
  // orientation maximum and D_{j+1} is negative there; D_{j+1}(1) > 0.
  double previous_root = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    double lo = previous_root;
    double hi = 1.0;
    int iterations = 0;
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (++iterations > kBisectionCap) {
        throw NumericError("max_orientation: bisection did not converge for j_max=" +
                           std::to_string(j));
      }
      if (char_poly_eval(j, mid) > 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    previous_root = char_poly_eval(j, hi) == 0.0 ? hi : lo;
  }
  return previous_root;
}

std::vector<double> optimal_amplitudes(int j_max, double lambda) {
  require_jmax(j_max, "optimal_amplitudes");
  const auto dets = scaled_determinants(j_max, lambda);
  const auto n = static_cast<std::size_t>(j_max) + 1;
  std::vector<double> c(n);

  const auto fail = [&](int j) {
    throw InconsistentLambdaError("optimal_amplitudes: amplitude c_" + std::to_string(j) +
                                  " is not positive for lambda=" + std::to_string(lambda));
  };

  if (j_max > kLogSpaceAbove) {
    std::vector<double> log_ratio(n);
    double log_prod = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) log_prod += std::log(cos_matrix_element(static_cast<int>(j) - 1));
      const auto& d = dets[j];
      if (!(d.mantissa > 0.0) || !std::isfinite(d.mantissa)) fail(static_cast<int>(j));
      log_ratio[j] = std::log(d.mantissa) + d.log_scale - log_prod;
    }
    const double top = *std::max_element(log_ratio.begin(), log_ratio.end());
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      c[j] = std::exp(log_ratio[j] - top);
      sum += c[j] * c[j];
    }
    const double norm = std::sqrt(sum);
    for (auto& v : c) v /= norm;
  } else {
    double prod = 1.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) prod *= cos_matrix_element(static_cast<int>(j) - 1);
      c[j] = dets[j].mantissa * std::exp(dets[j].log_scale) / prod;
      sum += c[j] * c[j];
    }
    const double norm = std::sqrt(sum);
    for (auto& v : c) v /= norm;
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (!(c[j] > 0.0) || !std::isfinite(c[j])) fail(static_cast<int>(j));
  }
  return c;
}

std::vector<double> optimal_phases(int j_max, double delta_phi) {
  if (j_max < 0) throw DomainError("optimal_phases: j_max must be >= 0");
  std::vector<double> phi(static_cast<std::size_t>(j_max) + 1);
  for (int j = 0; j <= j_max; ++j) phi[static_cast<std::size_t>(j)] = delta_phi * j * (j + 1) / 2.0;
  return phi;
}

EigenPair eigen_oracle(int j_max) {
  require_jmax(j_max, "eigen_oracle");
  const auto n = static_cast<std::size_t>(j_max) + 1;
  const SymTridiagonal t = cos_tridiagonal(n);
  const auto ni = static_cast<int>(n);

  // Gershgorin bound on the spectrum.
  double bound = 0.0;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    double row = std::abs(t.diag(i));
    if (i > 0) row += std::abs(t.off(i - 1));
    if (i + 1 < static_cast<Eigen::Index>(n)) row += std::abs(t.off(i));
    bound = std::max(bound, row);
  }

  double lo = -bound;
  double hi = bound;
  for (int it = 0;; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (it > kBisectionCap) throw NumericError("eigen_oracle: Sturm bisection did not converge");
    if (sturm_count(t, mid) == ni) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double value = hi;

  // Shift just above the top eigenvalue so T - shift is negative definite.
  double shift = value + 1e-13;
  while (sturm_count(t, shift) != ni) shift += 1e-13;

  Eigen::VectorXd v = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)).normalized();
  for (int it = 0; it < 8; ++it) {
    Eigen::VectorXd y = solve_shifted(t, shift, v);
    y.normalize();
    if (y.sum() < 0.0) y = -y;
    const double change = (y - v).norm();
    v = std::move(y);
    if (change < 1e-15) break;
  }

  const Eigen::MatrixXd dense = t.dense();
  const double residual = (dense * v - value * v).norm();
  if (!(residual < 1e-12)) {
    throw NumericError("eigen_oracle: eigen-residual " + std::to_string(residual) + " too large");
  }
  return {value, v, residual};
}

OrientationTarget make_orientation_target(int j_max, double delta_phi) {
  OrientationTarget target;
  target.j_max = j_max;
  target.lambda = max_orientation(j_max);
  target.amplitudes = optimal_amplitudes(j_max, target.lambda);
  target.phases = optimal_phases(j_max, delta_phi);
  target.delta_phi = delta_phi;
  return target;
}

void validate(const OrientationTarget& target) {
  require_jmax(target.j_max, "OrientationTarget");
  const auto n = static_cast<std::size_t>(target.j_max) + 1;
  if (target.amplitudes.size() != n || target.phases.size() != n) {
    throw DomainError("OrientationTarget: amplitude/phase count does not match j_max");
  }
  if (!(target.lambda > 0.0 && target.lambda < 1.0)) {
    throw DomainError("OrientationTarget: lambda must lie in (0, 1)");
  }
  double sum = 0.0;
  for (double c : target.amplitudes) {
    if (!(c > 0.0)) throw DomainError("OrientationTarget: amplitudes must be positive");
    sum += c * c;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw DomainError("OrientationTarget: amplitudes are not normalized");
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double step = target.phases[j + 1] - target.phases[j];
    const double expected = static_cast<double>(j + 1) * target.delta_phi;
    const double wrapped = std::remainder(step - expected, 2.0 * units::kPi);
    if (std::abs(wrapped) > 1e-9) {
      throw DomainError("OrientationTarget: phases do not follow the ladder condition");
    }
  }
}

double predicted_orientation(const OrientationTarget& target, const Molecule& molecule, double t) {
  double sum = 0.0;
  for (int j = 0; j < target.j_max; ++j) {
    const auto k = static_cast<std::size_t>(j);
    const double relative_phase = target.phases[k + 1] - target.phases[k];
    sum += target.amplitudes[k + 1] * target.amplitudes[k] * cos_matrix_element(j) *
           std::cos(transition_frequency(molecule, j) * t - relative_phase);
  }
  return 2.0 * sum;
}

}  // namespace rotctl
