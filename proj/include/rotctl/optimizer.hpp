#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rotctl/molecule.hpp"

namespace rotctl {

/// Optimal field-free orientation target inside the subspace J = 0..j_max.
struct OrientationTarget {
  int j_max = 0;
  double lambda = 0.0;              // max |<cos theta>| reachable in the subspace
  std::vector<double> amplitudes;   // c_0..c_{j_max}, positive, unit norm
  std::vector<double> phases;       // phi_0..phi_{j_max}
  double delta_phi = 0.0;           // phi_1 - phi_0
};

/// Characteristic polynomial of the (j_max+1)-dimensional cos(theta)
/// matrix, D_{j_max+1}(lambda), via the three-term determinant recurrence.
double char_poly_eval(int j_max, double lambda);

/// Largest root of char_poly_eval(j_max, .), located by bisection between the
/// largest root for j_max - 1 (interlacing) and 1.
double max_orientation(int j_max);

/// Amplitudes from the determinant-ratio formula, normalized to unit sum of
/// squares. Throws InconsistentLambdaError if any amplitude is not positive.
std::vector<double> optimal_amplitudes(int j_max, double lambda);

/// phi_0 = 0, phi_J = delta_phi * J (J + 1) / 2.
std::vector<double> optimal_phases(int j_max, double delta_phi);

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;
};

/// Largest eigenpair of the (j_max+1)-dimensional cos(theta) matrix by
/// Sturm-count bisection and inverse iteration. Independent of the
/// polynomial route above.
EigenPair eigen_oracle(int j_max);

OrientationTarget make_orientation_target(int j_max, double delta_phi = 0.0);

/// Throws DomainError if the target breaks its invariants.
void validate(const OrientationTarget& target);

/// Field-free <cos theta>(t) of the target superposition, with the
/// Schrodinger-picture convention exp(-i omega_J t).
double predicted_orientation(const OrientationTarget& target, const Molecule& molecule, double t);

}  // namespace rotctl
