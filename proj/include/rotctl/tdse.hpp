#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rotctl/basis.hpp"
#include "rotctl/molecule.hpp"
#include "rotctl/pulse.hpp"

namespace rotctl {

/// Schrodinger-picture coefficients over the truncated basis at `time`.
struct WavefunctionState {
  Eigen::VectorXcd coeffs;
  double time = 0.0;

  double norm() const { return coeffs.norm(); }
  static WavefunctionState ground(std::size_t size, double time);
};

/// Active windows are merged [tau_n - 5 T_n, tau_n + 5 T_n] spans; the field
/// is treated as zero outside them. Observables are sampled every
/// `sample_step` from t_start to t_end.
struct PropagationSchedule {
  std::vector<std::pair<double, double>> windows;
  double t_start = 0.0;
  double t_end = 0.0;
  double sample_step = 0.0;
};

/// `sample_step_trot` and `post_revivals` are in units of T_rot; the run
/// starts at t_on and ends post_revivals T_rot after t_off.
PropagationSchedule make_schedule(const PulseSequence& sequence, double sample_step_trot = 0.01,
                                  double post_revivals = 5.0);

enum class Stepper {
  ExponentialMidpoint,   // exp(-i H(t + dt/2) dt), second order
  CommutatorFree4,       // two exponentials at Gauss nodes, fourth order
};

/// H = B J^2 - mu0 E cos(theta) on the basis.
SymTridiagonal hamiltonian_at(const Molecule& molecule, const RotationalBasis& basis, double field);

using FieldFunction = std::function<double(double)>;

/// Exact stepper (eigendecomposition of the tridiagonal Hamiltonian) bound
/// to one molecule and basis. Holds scratch storage, so one instance per
/// thread.
class TdsePropagator {
 public:
  TdsePropagator(const Molecule& molecule, const RotationalBasis& basis);

  const RotationalBasis& basis() const noexcept { return basis_; }

  void step_exponential_midpoint(WavefunctionState& state, const FieldFunction& field, double dt);
  void step_commutator_free4(WavefunctionState& state, const FieldFunction& field, double dt);
  void step(WavefunctionState& state, const FieldFunction& field, double dt, Stepper stepper);

  /// Phase-only update exp(-i omega_J dt).
  void free_evolution(WavefunctionState& state, double dt) const;

  /// Steps from state.time to t_b with steps no longer than dt.
  void propagate_window(WavefunctionState& state, const FieldFunction& field, double t_b, double dt,
                        Stepper stepper);

 private:
  void apply_exponential(Eigen::VectorXcd& psi, double field, double dt);

  Molecule molecule_;
  RotationalBasis basis_;
  Eigen::VectorXd energies_;
  Eigen::VectorXd couplings_;  // mu0 M_{J+1,J}
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_;
  Eigen::VectorXd diag_;
  Eigen::VectorXd off_;
  Eigen::VectorXd re_;
  Eigen::VectorXd im_;
};

WavefunctionState step_exponential_midpoint(const Molecule& molecule, const RotationalBasis& basis,
                                            const WavefunctionState& state,
                                            const FieldFunction& field, double dt);
WavefunctionState free_evolution(const Molecule& molecule, const WavefunctionState& state, double dt);

struct PropagatorOptions {
  int j_buffer = RotationalBasis::kDefaultBuffer;
  double samples_per_cycle = 50.0;
  Stepper stepper = Stepper::CommutatorFree4;
  double truncation_limit = 1e-6;   // allowed population in the top two states
  bool check_truncation = true;
};

/// min_n (2 pi / omega_n) / samples_per_cycle.
double default_time_step(const PulseSequence& sequence, double samples_per_cycle);

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;
  double max_norm_error = 0.0;
  double max_leakage = 0.0;
  std::size_t steps = 0;
  double time_step = 0.0;
};

/// Propagates from |0> (or `initial`) at schedule.t_start, stepping inside
/// active windows and evolving freely in the gaps. Throws TruncationError when
/// the top two basis states collect more than options.truncation_limit.
Trajectory run_experiment(const PulseSequence& sequence, const PropagationSchedule& schedule,
                          const PropagatorOptions& options = {},
                          const std::optional<Eigen::VectorXcd>& initial = std::nullopt);

/// Basis used by run_experiment: J_max = number of subpulses.
RotationalBasis basis_for(const PulseSequence& sequence, int j_buffer);

}  // namespace rotctl
