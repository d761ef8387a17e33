#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "rotctl/errors.hpp"
#include "rotctl/magnus.hpp"
#include "rotctl/observables.hpp"
#include "rotctl/optimizer.hpp"
#include "rotctl/pulse.hpp"
#include "rotctl/tdse.hpp"
#include "rotctl/units.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace rotctl;

namespace {

const Molecule kLih = Molecule::lih();
const double kTrot = kLih.revival_period_au();

PulseSequence design(int j_max) {
  return design_sequence(make_orientation_target(j_max), kLih, default_design_options(kLih));
}

Eigen::VectorXcd random_state(std::size_t n, unsigned seed) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double a = std::sin(1.7 * (k + 1) * seed + 0.3);
    const double b = std::cos(2.3 * (k + 2) * seed);
    v(k) = {a, b};
  }
  return v.normalized();
}

}  // namespace

TEST_CASE("hamiltonian structure", "[tdse]") {
  const RotationalBasis basis(3, 2);
  const SymTridiagonal h0 = hamiltonian_at(kLih, basis, 0.0);
  REQUIRE(h0.size() == 6);
  for (int j = 0; j < 6; ++j) CHECK(h0.diag(j) == rotational_energy(kLih, j));
  CHECK((h0.off.array() == 0.0).all());
  const SymTridiagonal h = hamiltonian_at(kLih, basis, 1e-5);
  CHECK_THAT(h.off(0), WithinRel(-1e-5 * kLih.mu0_au() / std::sqrt(3.0), 1e-14));
  const Eigen::MatrixXd d = h.dense();
  CHECK((d.transpose().array() == d.array()).all());
}

TEST_CASE("free evolution", "[tdse]") {
  const RotationalBasis basis(4);
  TdsePropagator prop(kLih, basis);
  WavefunctionState s{random_state(basis.size(), 3), 0.0};
  const Eigen::VectorXcd psi0 = s.coeffs;
  WavefunctionState same = s;
  prop.free_evolution(same, 0.0);
  CHECK((same.coeffs - psi0).cwiseAbs().maxCoeff() == 0.0);
  prop.free_evolution(s, kTrot);
  CHECK((s.coeffs - psi0).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(s.time == kTrot);
  const WavefunctionState expected = free_evolution(kLih, WavefunctionState{psi0, 0.0}, 0.3 * kTrot);
  WavefunctionState step{psi0, 0.0};
  prop.free_evolution(step, 0.3 * kTrot);
  CHECK((step.coeffs - expected.coeffs).cwiseAbs().maxCoeff() < 1e-14);

  // Orientation of a freely rotating wavepacket repeats every T_rot.
  for (double f : {0.1, 0.35, 0.8}) {
    const double a = orientation(free_evolution(kLih, {psi0, 0.0}, f * kTrot).coeffs);
    const double b = orientation(free_evolution(kLih, {psi0, 0.0}, (f + 1.0) * kTrot).coeffs);
    CHECK_THAT(a, WithinAbs(b, 1e-10));
  }
}

TEST_CASE("zero field stepping is free evolution", "[tdse]") {
  const RotationalBasis basis(2, 4);
  TdsePropagator prop(kLih, basis);
  const auto zero = [](double) { return 0.0; };
  const Eigen::VectorXcd psi0 = random_state(basis.size(), 5);
  WavefunctionState stepped{psi0, 0.0};
  prop.step_exponential_midpoint(stepped, zero, kTrot);
  CHECK((stepped.coeffs - psi0).cwiseAbs().maxCoeff() < 1e-10);

  WavefunctionState window{psi0, 0.0};
  prop.propagate_window(window, zero, 0.77 * kTrot, 0.01 * kTrot, Stepper::CommutatorFree4);
  const WavefunctionState exact = free_evolution(kLih, {psi0, 0.0}, 0.77 * kTrot);
  CHECK((window.coeffs - exact.coeffs).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(window.time == 0.77 * kTrot);

  const WavefunctionState free_fn = step_exponential_midpoint(kLih, basis, {psi0, 0.0}, zero, 0.2 * kTrot);
  CHECK((free_fn.coeffs - free_evolution(kLih, {psi0, 0.0}, 0.2 * kTrot).coeffs).cwiseAbs().maxCoeff() < 1e-10);

  WavefunctionState bad{psi0, 0.0};
  CHECK_THROWS_AS(prop.step_exponential_midpoint(bad, zero, 0.0), DomainError);
  CHECK_THROWS_AS(prop.propagate_window(bad, zero, -1.0, 1.0, Stepper::CommutatorFree4), DomainError);
}

TEST_CASE("two-level Rabi oscillation in a static field", "[tdse]") {
  // Levels 0 and 2B coupled by V = mu0 E / sqrt(3): the exact population of
  // |1> is (2V/W)^2 sin^2(W t / 2) with W = sqrt((2B)^2 + 4 V^2).
  const RotationalBasis basis(1, 0);
  TdsePropagator prop(kLih, basis);
  const double e0 = 2e-5;
  const auto field = [e0](double) { return e0; };
  const double v = kLih.mu0_au() * e0 / std::sqrt(3.0);
  const double gap = 2.0 * kLih.b_au();
  const double w = std::sqrt(gap * gap + 4.0 * v * v);
  for (Stepper stepper : {Stepper::ExponentialMidpoint, Stepper::CommutatorFree4}) {
    WavefunctionState s = WavefunctionState::ground(2, 0.0);
    const double dt = 0.013 * kTrot;
    for (int k = 1; k <= 300; ++k) {
      prop.step(s, field, dt, stepper);
      const double t = k * dt;
      const double expected = std::pow(2.0 * v / w, 2) * std::pow(std::sin(0.5 * w * t), 2);
      REQUIRE_THAT(std::norm(s.coeffs(1)), WithinAbs(expected, 1e-8));
    }
  }
}

TEST_CASE("schedule windows", "[tdse]") {
  const PulseSequence seq = design(4);
  const PropagationSchedule sch = make_schedule(seq, 0.01, 5.0);
  CHECK(sch.t_start == seq.t_on());
  CHECK_THAT(sch.t_end, WithinRel(seq.t_off() + 5.0 * kTrot, 1e-15));
  CHECK_THAT(sch.sample_step, WithinRel(0.01 * kTrot, 1e-15));
  // Default spacing makes neighbouring +-5 T spans touch, so they merge.
  REQUIRE(sch.windows.size() == 1);
  CHECK(sch.windows[0].first == seq.t_on());
  CHECK(sch.windows[0].second == seq.t_off());

  DesignOptions wide = default_design_options(kLih);
  wide.spacing_factor = 12.0;
  const PulseSequence spread = design_sequence(make_orientation_target(4), kLih, wide);
  const PropagationSchedule split = make_schedule(spread);
  REQUIRE(split.windows.size() == 4);
  for (std::size_t i = 0; i < split.windows.size(); ++i) {
    const auto& p = spread.subpulses()[i];
    const auto& w = split.windows[i];
    CHECK(w.first <= p.center - 5.0 * p.duration);
    CHECK(w.second >= p.center + 5.0 * p.duration);
    if (i > 0) CHECK(w.first > split.windows[i - 1].second);
  }
  // Touching subpulses merge into one window.
  DesignOptions tight = default_design_options(kLih);
  tight.spacing_factor = 4.0;
  const PropagationSchedule merged = make_schedule(design_sequence(make_orientation_target(3), kLih, tight));
  CHECK(merged.windows.size() == 1);
  CHECK_THROWS_AS(make_schedule(seq, 0.0), DomainError);
}

TEST_CASE("time step follows the fastest carrier", "[tdse]") {
  const PulseSequence seq = design(15);
  const double period = 2.0 * units::kPi / seq.subpulses().back().carrier;
  CHECK_THAT(default_time_step(seq, 50.0), WithinRel(period / 50.0, 1e-15));
  CHECK_THAT(units::au_to_fs(period), WithinAbs(148.0, 1.0));
  CHECK_THAT(units::au_to_fs(default_time_step(seq, 50.0)), WithinAbs(3.0, 0.05));
}

TEST_CASE("single-pulse run", "[tdse]") {
  const PulseSequence seq = design(1);
  const Trajectory traj = run_experiment(seq, make_schedule(seq, 0.01, 3.0));
  REQUIRE(traj.times.size() == traj.states.size());
  CHECK(traj.max_norm_error < 1e-8);
  CHECK(traj.max_leakage < 1e-6);
  const Eigen::VectorXcd& last = traj.states.back();
  CHECK_THAT(std::norm(last(1)), WithinAbs(0.5, 0.01));
  const AnalyticState magnus = magnus_state(seq, seq.t_off());
  CHECK_THAT(std::norm(last(1)), WithinAbs(std::norm(magnus.coeffs(1)), 0.01));
  for (std::size_t k = 1; k < traj.times.size(); ++k) CHECK(traj.times[k] > traj.times[k - 1]);
}

TEST_CASE("step halving and buffer enlargement", "[tdse]") {
  const PulseSequence seq = design(3);
  const PropagationSchedule sch = make_schedule(seq, 0.05, 1.0);
  PropagatorOptions base;
  const Trajectory a = run_experiment(seq, sch, base);
  PropagatorOptions fine = base;
  fine.samples_per_cycle = 2.0 * base.samples_per_cycle;
  const Trajectory b = run_experiment(seq, sch, fine);
  REQUIRE(a.times.size() == b.times.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    worst = std::max(worst, std::abs(orientation(a.states[k]) - orientation(b.states[k])));
    worst = std::max(worst, std::abs(alignment(a.states[k]) - alignment(b.states[k])));
  }
  CHECK(worst < 1e-6);

  PropagatorOptions wide = base;
  wide.j_buffer = 12;
  const Trajectory c = run_experiment(seq, sch, wide);
  const Eigen::VectorXd pa = populations(a.states.back());
  const Eigen::VectorXd pc = populations(c.states.back());
  for (int j = 0; j <= 3; ++j) CHECK(std::abs(pa(j) - pc(j)) < 1e-8);
}

TEST_CASE("truncation guard", "[tdse]") {
  // Sub-revival pulses are broadband enough to climb far past J_max.
  DesignOptions o = default_design_options(kLih);
  o.subpulse_duration = 0.05 * kTrot;
  const PulseSequence seq = design_sequence(make_orientation_target(2), kLih, o);
  PropagatorOptions p;
  p.j_buffer = 2;
  CHECK_THROWS_AS(run_experiment(seq, make_schedule(seq, 0.01, 0.5), p), TruncationError);
  p.check_truncation = false;
  const Trajectory t = run_experiment(seq, make_schedule(seq, 0.01, 0.5), p);
  CHECK(t.max_leakage > 1e-6);
}

TEST_CASE("initial state handling", "[tdse]") {
  const PulseSequence seq = design(1);
  const PropagationSchedule sch = make_schedule(seq, 0.1, 0.5);
  CHECK_THROWS_AS(run_experiment(seq, sch, {}, Eigen::VectorXcd::Ones(3)), DomainError);
  const RotationalBasis basis = basis_for(seq, 8);
  Eigen::VectorXcd start = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  start(0) = 1.0;
  const Trajectory a = run_experiment(seq, sch);
  const Trajectory b = run_experiment(seq, sch, {}, start);
  CHECK((a.states.back() - b.states.back()).cwiseAbs().maxCoeff() == 0.0);
}
