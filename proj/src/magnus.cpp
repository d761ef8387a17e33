#include "rotctl/magnus.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "rotctl/errors.hpp"
#include "rotctl/quadrature.hpp"
#include "rotctl/units.hpp"

namespace rotctl {

namespace {

constexpr double kQuadratureTol = 1e-10;
constexpr double kNegligibleHalfWidth = 10.0;

// int_a^b E_n(t) exp(-i omega_n t) dt, restricted to where the envelope is
// non-negligible. The absolute time reference is kept so that pieces over
// consecutive intervals add coherently.
std::complex<double> area_integral(const Subpulse& pulse, double a, double b) {
  const double lo = std::max(a, pulse.center - kNegligibleHalfWidth * pulse.duration);
  const double hi = std::min(b, pulse.center + kNegligibleHalfWidth * pulse.duration);
  if (!(hi > lo)) return 0.0;
  // exp(-i w t) = exp(-i w tau) exp(-i w (t - tau)); the constant factor is
  // pulled out to keep the integrand phase small.
  const auto integrand = [&](double t) {
    const double phase = -pulse.carrier * (t - pulse.center);
    return pulse.field(t) * std::complex<double>(std::cos(phase), std::sin(phase));
  };
  const int pieces =
      4 + static_cast<int>(std::ceil((hi - lo) * 2.0 * pulse.carrier / (2.0 * units::kPi)));
  const QuadratureResult r = integrate(integrand, lo, hi, kQuadratureTol, pieces);
  return r.value * std::polar(1.0, -pulse.carrier * pulse.center);
}

}  // namespace

double partial_area(const Subpulse& pulse, double t_start, double t) {
  if (t <= t_start) return 0.0;
  return pulse.dipole * std::abs(area_integral(pulse, t_start, t));
}

void require_sequential(const PulseSequence& sequence) {
  const auto& pulses = sequence.subpulses();
  for (std::size_t i = 1; i < pulses.size(); ++i) {
    const double gap = pulses[i].center - pulses[i - 1].center;
    if (gap < 2.0 * (pulses[i].duration + pulses[i - 1].duration)) {
      throw DomainError("analytic propagator: subpulses " + std::to_string(i) + " and " +
                        std::to_string(i + 1) + " overlap");
    }
  }
}

Eigen::VectorXcd ladder_coefficients(const PulseSequence& sequence, const std::vector<double>& areas) {
  const auto& pulses = sequence.subpulses();
  const auto n = static_cast<Eigen::Index>(pulses.size());
  Eigen::VectorXcd c(n + 1);
  const std::complex<double> i_unit(0.0, 1.0);
  std::complex<double> chain = 1.0;  // prod_{k<=J} i sin theta_k exp[-i(phi_k - w_k tau_k)]
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& p = pulses[static_cast<std::size_t>(j)];
    const double theta = areas[static_cast<std::size_t>(j)];
    c(j) = chain * std::cos(theta);
    chain *= i_unit * std::sin(theta) * std::polar(1.0, -(p.phase - p.carrier * p.center));
  }
  c(n) = chain;
  return c;
}

AnalyticState magnus_state(const PulseSequence& sequence, double t) {
  require_sequential(sequence);
  std::vector<double> areas;
  areas.reserve(sequence.size());
  for (const auto& p : sequence.subpulses()) areas.push_back(partial_area(p, sequence.t_on(), t));
  return {ladder_coefficients(sequence, areas), t, Picture::Interaction};
}

std::vector<AnalyticState> magnus_series(const PulseSequence& sequence,
                                         const std::vector<double>& times) {
  require_sequential(sequence);
  const auto& pulses = sequence.subpulses();
  std::vector<std::complex<double>> integrals(pulses.size(), 0.0);
  std::vector<double> areas(pulses.size(), 0.0);
  std::vector<AnalyticState> out;
  out.reserve(times.size());
  double previous = sequence.t_on();
  for (double t : times) {
    if (t < previous && !out.empty()) {
      throw DomainError("magnus_series: times must be non-decreasing");
    }
    if (t > previous) {
      for (std::size_t k = 0; k < pulses.size(); ++k) {
        integrals[k] += area_integral(pulses[k], previous, t);
        areas[k] = pulses[k].dipole * std::abs(integrals[k]);
      }
      previous = t;
    }
    out.push_back({ladder_coefficients(sequence, areas), t, Picture::Interaction});
  }
  return out;
}

AnalyticState to_schrodinger_picture(const AnalyticState& state, const Molecule& molecule) {
  if (state.picture == Picture::Schrodinger) return state;
  AnalyticState out = state;
  for (Eigen::Index j = 0; j < out.coeffs.size(); ++j) {
    out.coeffs(j) *= std::polar(1.0, -rotational_energy(molecule, static_cast<int>(j)) * state.time);
  }
  out.picture = Picture::Schrodinger;
  return out;
}

}  // namespace rotctl
