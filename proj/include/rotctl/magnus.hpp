#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rotctl/pulse.hpp"

namespace rotctl {

enum class Picture { Interaction, Schrodinger };

/// Coefficients over J = 0..N from the first-order Magnus ladder solution.
struct AnalyticState {
  Eigen::VectorXcd coeffs;
  double time = 0.0;
  Picture picture = Picture::Interaction;
};

/// theta_n(t) = mu_{n,n-1} |int_{t_start}^{t} E_n(t') exp(-i omega_{n,n-1} t') dt'|.
double partial_area(const Subpulse& pulse, double t_start, double t);

/// Throws DomainError when neighbouring subpulses overlap (centers closer
/// than 2 (T_n + T_{n+1})); the ladder solution is not valid there.
void require_sequential(const PulseSequence& sequence);

/// Ladder coefficients for given subpulse areas and phase factors; exposed so
/// callers with precomputed areas avoid the quadrature.
Eigen::VectorXcd ladder_coefficients(const PulseSequence& sequence, const std::vector<double>& areas);

AnalyticState magnus_state(const PulseSequence& sequence, double t);

/// magnus_state on an increasing time grid; the pulse-area integrals are
/// accumulated interval by interval instead of restarting at t_on.
std::vector<AnalyticState> magnus_series(const PulseSequence& sequence,
                                         const std::vector<double>& times);

/// Multiplies c_J by exp(-i omega_J t).
AnalyticState to_schrodinger_picture(const AnalyticState& state, const Molecule& molecule);

}  // namespace rotctl
