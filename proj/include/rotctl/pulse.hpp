#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rotctl/molecule.hpp"
#include "rotctl/optimizer.hpp"

namespace rotctl {

/// One Gaussian subpulse resonant with the n-1 -> n transition:
///   E_n(t) = amplitude * exp(-(t - center)^2 / (2 duration^2))
///            * cos(carrier (t - center) + phase).
/// All quantities are atomic units; angles are radians.
struct Subpulse {
  int n = 1;
  double area = 0.0;        // designed pulse area theta_n(t_f)
  double amplitude = 0.0;   // peak field E_n
  double carrier = 0.0;     // omega_{n,n-1}
  double center = 0.0;      // tau_n
  double duration = 0.0;    // T_n (envelope standard deviation, 1 / bandwidth)
  double phase = 0.0;       // phi_n
  double dipole = 0.0;      // mu_{n,n-1}

  double field(double t) const;
  double envelope(double t) const;

  bool operator==(const Subpulse&) const = default;
};

/// Time-ordered subpulse train with strictly increasing carriers.
class PulseSequence {
 public:
  PulseSequence(Molecule molecule, std::vector<Subpulse> subpulses, double t_on, double t_off);

  const Molecule& molecule() const noexcept { return molecule_; }
  const std::vector<Subpulse>& subpulses() const noexcept { return subpulses_; }
  std::size_t size() const noexcept { return subpulses_.size(); }
  double t_on() const noexcept { return t_on_; }
  double t_off() const noexcept { return t_off_; }

  bool operator==(const PulseSequence&) const = default;

 private:
  Molecule molecule_;
  std::vector<Subpulse> subpulses_;
  double t_on_;
  double t_off_;
};

/// theta_1 = arccos c_0, theta_n = arccos(c_{n-1} / prod_{k<n} sin theta_k).
/// Arguments up to 1 + 1e-12 are clamped; beyond that the target is
/// infeasible and InfeasibleTargetError is thrown.
std::vector<double> pulse_areas_from_amplitudes(std::span<const double> amplitudes);

/// phi_n = omega_{n,n-1} tau_n - n(-phi_1 + omega_{1,0} tau_1) - (n-1) pi/2.
std::vector<double> subpulse_phases(const Molecule& molecule, std::span<const double> centers,
                                    double phi_1);

/// Relative phase phi_1 - phi_0 of the prepared ladder for a given first
/// subpulse phase, and its inverse.
double ladder_phase_step(const Molecule& molecule, double tau_1, double phi_1);
double first_phase_for_ladder_step(const Molecule& molecule, double tau_1, double delta_phi);

/// E_n = sqrt(2/pi) theta_n / (T_n mu_{n,n-1}).
double field_amplitude_for_area(double area, double duration, double dipole);

struct DesignOptions {
  double subpulse_duration = 0.0;   // T_sub (au); 0 selects 3 T_rot
  double spacing_factor = 5.0;      // tau_n = spacing_factor (n-1) T_sub
  std::optional<double> phi_1;      // unset: chosen so the ladder step equals delta_phi
};

DesignOptions default_design_options(const Molecule& molecule);

/// Builds the resonant ladder-climbing sequence that prepares `amplitudes`
/// with the phase ladder step `delta_phi`, starting from |0>.
PulseSequence design_sequence(std::span<const double> amplitudes, double delta_phi,
                              const Molecule& molecule, const DesignOptions& options);
PulseSequence design_sequence(const OrientationTarget& target, const Molecule& molecule,
                              const DesignOptions& options);

/// Total field E(t).
double field_amplitude(const PulseSequence& sequence, double t);

/// mu |int_a^b E_n(t) exp(-i omega t) dt| by adaptive quadrature of the
/// exact field (counter-rotating part included).
double spectral_area(const Subpulse& pulse, double dipole, double omega, double a, double b);

/// Full-pulse area, integrated over center +- 8 T_n.
double numeric_pulse_area(const Subpulse& pulse);

/// Closed-form |int E_n(t) exp(-i omega t) dt| for the Gaussian subpulse.
double analytic_spectrum_magnitude(const Subpulse& pulse, double omega);

struct CrossTalkReport {
  Eigen::MatrixXd areas;   // (n, m): area of subpulse n on transition m
  double max_off_diagonal = 0.0;
  bool flagged = false;

  static constexpr double kThreshold = 1e-3;
};

CrossTalkReport cross_talk_report(const PulseSequence& sequence);

/// Largest subpulse peak intensity, W/cm^2.
double peak_intensity_wcm2(const PulseSequence& sequence);

}  // namespace rotctl
