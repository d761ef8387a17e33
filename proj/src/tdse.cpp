#include "rotctl/tdse.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "rotctl/errors.hpp"
#include "rotctl/units.hpp"

namespace rotctl {

namespace {

constexpr double kWindowHalfWidth = 5.0;  // in units of T_n

// Gauss-Legendre nodes and mixing weights of the fourth-order
// commutator-free exponential integrator.
const double kSqrt3 = std::sqrt(3.0);
const double kNode1 = 0.5 - kSqrt3 / 6.0;
const double kNode2 = 0.5 + kSqrt3 / 6.0;
const double kWeightA = (3.0 - 2.0 * kSqrt3) / 12.0;
const double kWeightB = (3.0 + 2.0 * kSqrt3) / 12.0;

}  // namespace

WavefunctionState WavefunctionState::ground(std::size_t size, double time) {
  WavefunctionState s;
  s.coeffs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size));
  s.coeffs(0) = 1.0;
  s.time = time;
  return s;
}

PropagationSchedule make_schedule(const PulseSequence& sequence, double sample_step_trot,
                                  double post_revivals) {
  if (!(sample_step_trot > 0.0)) throw DomainError("make_schedule: sample step must be positive");
  if (post_revivals < 0.0) throw DomainError("make_schedule: post-sequence span must be >= 0");
  const double t_rot = sequence.molecule().revival_period_au();
  PropagationSchedule schedule;
  schedule.t_start = sequence.t_on();
  schedule.t_end = sequence.t_off() + post_revivals * t_rot;
  schedule.sample_step = sample_step_trot * t_rot;

  std::vector<std::pair<double, double>> spans;
  for (const auto& p : sequence.subpulses()) {
    spans.emplace_back(p.center - kWindowHalfWidth * p.duration,
                       p.center + kWindowHalfWidth * p.duration);
  }
  std::sort(spans.begin(), spans.end());
  for (const auto& s : spans) {
    if (!schedule.windows.empty() && s.first <= schedule.windows.back().second) {
      schedule.windows.back().second = std::max(schedule.windows.back().second, s.second);
    } else {
      schedule.windows.push_back(s);
    }
  }
  return schedule;
}

SymTridiagonal hamiltonian_at(const Molecule& molecule, const RotationalBasis& basis, double field) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  SymTridiagonal h;
  h.diag.resize(n);
  h.off.resize(n - 1);
  for (Eigen::Index j = 0; j < n; ++j) h.diag(j) = rotational_energy(molecule, static_cast<int>(j));
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    h.off(j) = -field * transition_dipole(molecule, static_cast<int>(j));
  }
  return h;
}

TdsePropagator::TdsePropagator(const Molecule& molecule, const RotationalBasis& basis)
    : molecule_(molecule),
      basis_(basis),
      solver_(static_cast<Eigen::Index>(basis.size())) {
  const SymTridiagonal h0 = hamiltonian_at(molecule, basis, 0.0);
  energies_ = h0.diag;
  couplings_.resize(h0.off.size());
  for (Eigen::Index j = 0; j < couplings_.size(); ++j) {
    couplings_(j) = transition_dipole(molecule, static_cast<int>(j));
  }
  diag_ = energies_;
  off_.resize(couplings_.size());
  re_.resize(energies_.size());
  im_.resize(energies_.size());
}

void TdsePropagator::apply_exponential(Eigen::VectorXcd& psi, double field, double dt) {
  off_ = -field * couplings_;
  solver_.computeFromTridiagonal(diag_, off_, Eigen::ComputeEigenvectors);
  if (solver_.info() != Eigen::Success) {
    throw NumericError("TdsePropagator: tridiagonal eigendecomposition failed");
  }
  const auto& q = solver_.eigenvectors();
  const auto& lambda = solver_.eigenvalues();
  re_.noalias() = q.transpose() * psi.real();
  im_.noalias() = q.transpose() * psi.imag();
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const double c = std::cos(lambda(k) * dt);
    const double s = std::sin(lambda(k) * dt);
    // (re + i im) * (c - i s)
    const double r = re_(k) * c + im_(k) * s;
    const double i = im_(k) * c - re_(k) * s;
    re_(k) = r;
    im_(k) = i;
  }
  psi.real() = q * re_;
  psi.imag() = q * im_;
}

void TdsePropagator::step_exponential_midpoint(WavefunctionState& state, const FieldFunction& field,
                                               double dt) {
  if (!(dt > 0.0)) throw DomainError("step_exponential_midpoint: dt must be positive");
  apply_exponential(state.coeffs, field(state.time + 0.5 * dt), dt);
  state.time += dt;
}

void TdsePropagator::step_commutator_free4(WavefunctionState& state, const FieldFunction& field,
                                           double dt) {
  if (!(dt > 0.0)) throw DomainError("step_commutator_free4: dt must be positive");
  const double f1 = field(state.time + kNode1 * dt);
  const double f2 = field(state.time + kNode2 * dt);
  // Each factor is exp(-i dt (a H1 + b H2)) with a + b = 1/2, i.e. an
  // exponential of the Hamiltonian at effective field 2 (a f1 + b f2) over
  // dt / 2.
  apply_exponential(state.coeffs, 2.0 * (kWeightB * f1 + kWeightA * f2), 0.5 * dt);
  apply_exponential(state.coeffs, 2.0 * (kWeightA * f1 + kWeightB * f2), 0.5 * dt);
  state.time += dt;
}

void TdsePropagator::step(WavefunctionState& state, const FieldFunction& field, double dt,
                          Stepper stepper) {
  if (stepper == Stepper::CommutatorFree4) {
    step_commutator_free4(state, field, dt);
  } else {
    step_exponential_midpoint(state, field, dt);
  }
}

void TdsePropagator::free_evolution(WavefunctionState& state, double dt) const {
  if (dt == 0.0) return;
  for (Eigen::Index j = 0; j < state.coeffs.size(); ++j) {
    state.coeffs(j) *= std::polar(1.0, -energies_(j) * dt);
  }
  state.time += dt;
}

void TdsePropagator::propagate_window(WavefunctionState& state, const FieldFunction& field,
                                      double t_b, double dt, Stepper stepper) {
  const double span = t_b - state.time;
  if (!(span > 0.0)) throw DomainError("propagate_window: t_b must exceed the current time");
  if (!(dt > 0.0)) throw DomainError("propagate_window: dt must be positive");
  const auto steps = static_cast<long>(std::ceil(span / dt - 1e-9));
  const double h = span / static_cast<double>(steps);
  const double t_a = state.time;
  for (long k = 0; k < steps; ++k) {
    state.time = t_a + static_cast<double>(k) * h;
    step(state, field, h, stepper);
  }
  state.time = t_b;
}

WavefunctionState step_exponential_midpoint(const Molecule& molecule, const RotationalBasis& basis,
                                            const WavefunctionState& state,
                                            const FieldFunction& field, double dt) {
  TdsePropagator prop(molecule, basis);
  WavefunctionState out = state;
  prop.step_exponential_midpoint(out, field, dt);
  return out;
}

WavefunctionState free_evolution(const Molecule& molecule, const WavefunctionState& state,
                                 double dt) {
  WavefunctionState out = state;
  for (Eigen::Index j = 0; j < out.coeffs.size(); ++j) {
    out.coeffs(j) *= std::polar(1.0, -rotational_energy(molecule, static_cast<int>(j)) * dt);
  }
  out.time += dt;
  return out;
}

double default_time_step(const PulseSequence& sequence, double samples_per_cycle) {
  if (!(samples_per_cycle > 0.0)) throw DomainError("samples per cycle must be positive");
  double fastest = 0.0;
  for (const auto& p : sequence.subpulses()) fastest = std::max(fastest, p.carrier);
  return 2.0 * units::kPi / fastest / samples_per_cycle;
}

RotationalBasis basis_for(const PulseSequence& sequence, int j_buffer) {
  return RotationalBasis(static_cast<int>(sequence.size()), j_buffer);
}

Trajectory run_experiment(const PulseSequence& sequence, const PropagationSchedule& schedule,
                          const PropagatorOptions& options,
                          const std::optional<Eigen::VectorXcd>& initial) {
  if (!(schedule.t_end > schedule.t_start)) throw DomainError("run_experiment: empty schedule");
  if (!(schedule.sample_step > 0.0)) throw DomainError("run_experiment: sample step must be positive");

  const RotationalBasis basis = basis_for(sequence, options.j_buffer);
  TdsePropagator prop(sequence.molecule(), basis);
  const double dt = default_time_step(sequence, options.samples_per_cycle);

  // Only subpulses whose envelope is non-negligible contribute at t.
  const auto& pulses = sequence.subpulses();
  const FieldFunction field = [&pulses](double t) {
    double e = 0.0;
    for (const auto& p : pulses) {
      if (std::abs(t - p.center) < 12.0 * p.duration) e += p.field(t);
    }
    return e;
  };

  WavefunctionState state = WavefunctionState::ground(basis.size(), schedule.t_start);
  if (initial) {
    if (static_cast<std::size_t>(initial->size()) != basis.size()) {
      throw DomainError("run_experiment: initial state does not match the basis size");
    }
    state.coeffs = *initial;
  }

  Trajectory traj;
  traj.time_step = dt;
  const auto samples =
      static_cast<long>(std::floor((schedule.t_end - schedule.t_start) / schedule.sample_step + 1e-9));
  traj.times.reserve(static_cast<std::size_t>(samples) + 1);
  traj.states.reserve(static_cast<std::size_t>(samples) + 1);

  const auto n = static_cast<Eigen::Index>(basis.size());
  const bool guard = options.check_truncation && basis.j_buffer() >= 2;
  const auto record = [&](const WavefunctionState& s) {
    traj.times.push_back(s.time);
    traj.states.push_back(s.coeffs);
    traj.max_norm_error = std::max(traj.max_norm_error, std::abs(s.norm() - 1.0));
    const double leak = s.coeffs.tail(2).squaredNorm();
    traj.max_leakage = std::max(traj.max_leakage, leak);
    if (guard && leak > options.truncation_limit) {
      throw TruncationError("truncation guard: population " + std::to_string(leak) +
                                " in the top two of " + std::to_string(n) + " basis states at t=" +
                                std::to_string(s.time) + " au",
                            leak);
    }
  };

  record(state);
  std::size_t window = 0;
  for (long k = 1; k <= samples; ++k) {
    const double target = schedule.t_start + static_cast<double>(k) * schedule.sample_step;
    while (state.time < target) {
      while (window < schedule.windows.size() && schedule.windows[window].second <= state.time) {
        ++window;
      }
      if (window < schedule.windows.size() && schedule.windows[window].first <= state.time) {
        const double stop = std::min(target, schedule.windows[window].second);
        const double span = stop - state.time;
        const auto steps = static_cast<long>(std::ceil(span / dt - 1e-9));
        prop.propagate_window(state, field, stop, dt, options.stepper);
        traj.steps += static_cast<std::size_t>(steps);
      } else {
        double stop = target;
        if (window < schedule.windows.size()) stop = std::min(stop, schedule.windows[window].first);
        prop.free_evolution(state, stop - state.time);
        state.time = stop;
      }
    }
    state.time = target;
    record(state);
  }
  return traj;
}

}  // namespace rotctl
