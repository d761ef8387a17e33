#include "rotctl/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "rotctl/errors.hpp"
#include "rotctl/quadrature.hpp"
#include "rotctl/units.hpp"

namespace rotctl {

namespace {

using units::kPi;

constexpr double kArccosSlack = 1e-12;
constexpr double kQuadratureTol = 1e-10;
constexpr double kAreaHalfWidth = 8.0;      // in units of T_n
constexpr double kNegligibleHalfWidth = 10.0;

}  // namespace

double Subpulse::envelope(double t) const {
  const double s = (t - center) / duration;
  return std::exp(-0.5 * s * s);
}

double Subpulse::field(double t) const {
  return amplitude * envelope(t) * std::cos(carrier * (t - center) + phase);
}

PulseSequence::PulseSequence(Molecule molecule, std::vector<Subpulse> subpulses, double t_on,
                             double t_off)
    : molecule_(std::move(molecule)), subpulses_(std::move(subpulses)), t_on_(t_on), t_off_(t_off) {
  if (subpulses_.empty()) throw DomainError("PulseSequence: no subpulses");
  if (!(t_off_ > t_on_)) throw DomainError("PulseSequence: t_off must exceed t_on");
  for (std::size_t i = 0; i < subpulses_.size(); ++i) {
    const auto& p = subpulses_[i];
    if (!(p.duration > 0.0)) throw DomainError("PulseSequence: subpulse duration must be positive");
    if (!(p.dipole > 0.0)) throw DomainError("PulseSequence: transition dipole must be positive");
    if (i > 0) {
      const auto& q = subpulses_[i - 1];
      if (!(p.carrier > q.carrier)) {
        throw DomainError("PulseSequence: carriers must be strictly increasing");
      }
      if (!(p.center > q.center)) {
        throw DomainError("PulseSequence: subpulses must be time-ordered");
      }
    }
  }
}

std::vector<double> pulse_areas_from_amplitudes(std::span<const double> amplitudes) {
  if (amplitudes.size() < 2) {
    throw DomainError("pulse_areas_from_amplitudes: need at least two amplitudes");
  }
  double norm = 0.0;
  for (double c : amplitudes) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw InfeasibleTargetError(
          "pulse_areas_from_amplitudes: amplitudes must be real and non-negative");
    }
    norm += c * c;
  }
  if (std::abs(norm - 1.0) > 1e-10) {
    throw InfeasibleTargetError("pulse_areas_from_amplitudes: amplitudes must satisfy sum c^2 = 1");
  }

  std::vector<double> areas;
  areas.reserve(amplitudes.size() - 1);
  double remaining = 1.0;  // prod_{k<n} sin theta_k
  for (std::size_t n = 1; n < amplitudes.size(); ++n) {
    const double c = amplitudes[n - 1];
    double arg;
    if (remaining == 0.0) {
      if (c != 0.0) {
        throw InfeasibleTargetError("pulse_areas_from_amplitudes: c_" + std::to_string(n - 1) +
                                    " is unreachable after complete depletion");
      }
      arg = 1.0;
    } else {
      arg = c / remaining;
    }
    if (arg > 1.0 + kArccosSlack) {
      throw InfeasibleTargetError("pulse_areas_from_amplitudes: arccos argument " +
                                  std::to_string(arg) + " exceeds 1 for subpulse " +
                                  std::to_string(n));
    }
    arg = std::min(arg, 1.0);
    const double theta = std::acos(arg);
    areas.push_back(theta);
    remaining *= std::sin(theta);
  }
  return areas;
}

std::vector<double> subpulse_phases(const Molecule& molecule, std::span<const double> centers,
                                    double phi_1) {
  std::vector<double> phases;
  if (centers.empty()) return phases;
  for (std::size_t i = 1; i < centers.size(); ++i) {
    if (!(centers[i] > centers[i - 1])) {
      throw DomainError("subpulse_phases: centers must be time-ordered");
    }
  }
  phases.reserve(centers.size());
  const double first = -phi_1 + transition_frequency(molecule, 0) * centers[0];
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double omega = transition_frequency(molecule, static_cast<int>(i));
    phases.push_back(omega * centers[i] - n * first - (n - 1.0) * kPi / 2.0);
  }
  return phases;
}

double ladder_phase_step(const Molecule& molecule, double tau_1, double phi_1) {
  return kPi / 2.0 - phi_1 + transition_frequency(molecule, 0) * tau_1;
}

double first_phase_for_ladder_step(const Molecule& molecule, double tau_1, double delta_phi) {
  return kPi / 2.0 - delta_phi + transition_frequency(molecule, 0) * tau_1;
}

double field_amplitude_for_area(double area, double duration, double dipole) {
  return std::sqrt(2.0 / kPi) * area / (duration * dipole);
}

DesignOptions default_design_options(const Molecule& molecule) {
  DesignOptions options;
  options.subpulse_duration = 3.0 * molecule.revival_period_au();
  return options;
}

PulseSequence design_sequence(std::span<const double> amplitudes, double delta_phi,
                              const Molecule& molecule, const DesignOptions& options) {
  const double duration = options.subpulse_duration > 0.0 ? options.subpulse_duration
                                                          : 3.0 * molecule.revival_period_au();
  if (options.subpulse_duration < 0.0 || !std::isfinite(duration)) {
    throw DomainError("design_sequence: subpulse duration must be positive");
  }
  if (!(options.spacing_factor >= 4.0)) {
    throw DomainError("design_sequence: spacing factor must be >= 4 to keep subpulses apart");
  }

  const std::vector<double> areas = pulse_areas_from_amplitudes(amplitudes);
  const std::size_t count = areas.size();

  std::vector<double> centers(count);
  for (std::size_t i = 0; i < count; ++i) {
    centers[i] = options.spacing_factor * static_cast<double>(i) * duration;
  }
  const double phi_1 =
      options.phi_1.value_or(first_phase_for_ladder_step(molecule, centers[0], delta_phi));
  const std::vector<double> phases = subpulse_phases(molecule, centers, phi_1);

  std::vector<Subpulse> subpulses;
  subpulses.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Subpulse p;
    p.n = static_cast<int>(i + 1);
    p.area = areas[i];
    p.dipole = transition_dipole(molecule, static_cast<int>(i));
    p.duration = duration;
    p.amplitude = field_amplitude_for_area(p.area, duration, p.dipole);
    p.carrier = transition_frequency(molecule, static_cast<int>(i));
    p.center = centers[i];
    p.phase = phases[i];
    subpulses.push_back(p);
  }
  const double t_on = centers.front() - 5.0 * duration;
  const double t_off = centers.back() + 5.0 * duration;
  return PulseSequence(molecule, std::move(subpulses), t_on, t_off);
}

PulseSequence design_sequence(const OrientationTarget& target, const Molecule& molecule,
                              const DesignOptions& options) {
  validate(target);
  return design_sequence(target.amplitudes, target.delta_phi, molecule, options);
}

double field_amplitude(const PulseSequence& sequence, double t) {
  double e = 0.0;
  for (const auto& p : sequence.subpulses()) e += p.field(t);
  return e;
}

double spectral_area(const Subpulse& pulse, double dipole, double omega, double a, double b) {
  const double lo = std::max(a, pulse.center - kNegligibleHalfWidth * pulse.duration);
  const double hi = std::min(b, pulse.center + kNegligibleHalfWidth * pulse.duration);
  if (!(hi > lo)) return 0.0;
  // Referencing the exponential to the pulse center only changes the
  // global phase of the integral, not its modulus.
  const auto integrand = [&](double t) {
    const double phase = -omega * (t - pulse.center);
    return pulse.field(t) * std::complex<double>(std::cos(phase), std::sin(phase));
  };
  const double fastest = omega + pulse.carrier;
  const int pieces = 8 + static_cast<int>(std::ceil((hi - lo) * fastest / (2.0 * kPi)));
  const QuadratureResult r = integrate(integrand, lo, hi, kQuadratureTol, pieces);
  return dipole * std::abs(r.value);
}

double numeric_pulse_area(const Subpulse& pulse) {
  return spectral_area(pulse, pulse.dipole, pulse.carrier,
                       pulse.center - kAreaHalfWidth * pulse.duration,
                       pulse.center + kAreaHalfWidth * pulse.duration);
}

double analytic_spectrum_magnitude(const Subpulse& pulse, double omega) {
  const double t = pulse.duration;
  const double scale = 0.5 * pulse.amplitude * std::sqrt(2.0 * kPi) * t;
  const double resonant = std::exp(-0.5 * (omega - pulse.carrier) * (omega - pulse.carrier) * t * t);
  const double counter = std::exp(-0.5 * (omega + pulse.carrier) * (omega + pulse.carrier) * t * t);
  const std::complex<double> value =
      scale * (resonant * std::polar(1.0, pulse.phase) + counter * std::polar(1.0, -pulse.phase));
  return std::abs(value);
}

CrossTalkReport cross_talk_report(const PulseSequence& sequence) {
  const auto& pulses = sequence.subpulses();
  const auto n = static_cast<Eigen::Index>(pulses.size());
  CrossTalkReport report;
  report.areas = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = pulses[static_cast<std::size_t>(i)];
    const double a = p.center - kAreaHalfWidth * p.duration;
    const double b = p.center + kAreaHalfWidth * p.duration;
    for (Eigen::Index m = 0; m < n; ++m) {
      const auto& q = pulses[static_cast<std::size_t>(m)];
      report.areas(i, m) = spectral_area(p, q.dipole, q.carrier, a, b);
      if (i != m) report.max_off_diagonal = std::max(report.max_off_diagonal, report.areas(i, m));
    }
  }
  report.flagged = report.max_off_diagonal > CrossTalkReport::kThreshold;
  return report;
}

double peak_intensity_wcm2(const PulseSequence& sequence) {
  double peak = 0.0;
  for (const auto& p : sequence.subpulses()) {
    peak = std::max(peak, units::intensity_wcm2(p.amplitude));
  }
  return peak;
}

}  // namespace rotctl
