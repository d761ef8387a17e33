#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "rotctl/errors.hpp"
#include "rotctl/optimizer.hpp"
#include "rotctl/pulse.hpp"
#include "rotctl/units.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace rotctl;

namespace {

const Molecule kLih = Molecule::lih();
const double kTrot = kLih.revival_period_au();

// Plain trapezoidal sum of E(t) exp(-i omega t); Gaussian-windowed integrands
// converge geometrically under this rule.
std::complex<double> trapezoid_transform(const Subpulse& p, double omega, double half_width,
                                         int points) {
  const double a = p.center - half_width * p.duration;
  const double h = 2.0 * half_width * p.duration / points;
  std::complex<double> sum = 0.0;
  for (int k = 0; k <= points; ++k) {
    const double t = a + k * h;
    const double w = (k == 0 || k == points) ? 0.5 : 1.0;
    sum += w * p.field(t) * std::polar(1.0, -omega * (t - p.center));
  }
  return sum * h;
}

}  // namespace

TEST_CASE("pulse areas from amplitudes", "[pulse]") {
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<double> half{r, r};
  CHECK_THAT(pulse_areas_from_amplitudes(half)[0], WithinAbs(units::kPi / 4.0, 1e-15));
  const std::vector<double> ground{1.0, 0.0};
  CHECK(pulse_areas_from_amplitudes(ground)[0] == 0.0);

  const OrientationTarget t = make_orientation_target(15);
  const auto areas = pulse_areas_from_amplitudes(t.amplitudes);
  REQUIRE(areas.size() == 15);
  double prod = 1.0;
  for (std::size_t n = 0; n < areas.size(); ++n) {
    CHECK(areas[n] >= 0.0);
    CHECK(areas[n] <= units::kPi / 2.0);
    CHECK_THAT(std::cos(areas[n]) * prod, WithinAbs(t.amplitudes[n], 1e-12));
    prod *= std::sin(areas[n]);
  }
  CHECK_THAT(prod, WithinAbs(t.amplitudes[15], 1e-12));
}

TEST_CASE("infeasible amplitude lists", "[pulse]") {
  const std::vector<double> single{1.0};
  CHECK_THROWS_AS(pulse_areas_from_amplitudes(single), DomainError);
  const std::vector<double> unnormalized{0.9, 0.9};
  CHECK_THROWS_AS(pulse_areas_from_amplitudes(unnormalized), InfeasibleTargetError);
  const std::vector<double> negative{0.6, -0.8};
  CHECK_THROWS_AS(pulse_areas_from_amplitudes(negative), InfeasibleTargetError);
  // A full pi/2 transfer followed by a zero-area pulse.
  const std::vector<double> transfer{0.0, 1.0, 0.0};
  const auto a = pulse_areas_from_amplitudes(transfer);
  CHECK_THAT(a[0], WithinAbs(units::kPi / 2.0, 1e-15));
  CHECK(a[1] == 0.0);
}

TEST_CASE("subpulse phases", "[pulse]") {
  const std::vector<double> one{0.0};
  CHECK(subpulse_phases(kLih, one, 0.0)[0] == 0.0);
  const std::vector<double> two{0.0, 15.0 * kTrot};
  const auto ph = subpulse_phases(kLih, two, 0.0);
  CHECK_THAT(ph[1], WithinAbs(transition_frequency(kLih, 1) * two[1] - units::kPi / 2.0, 1e-9));
  const std::vector<double> unordered{1.0, 0.5};
  CHECK_THROWS_AS(subpulse_phases(kLih, unordered, 0.0), DomainError);
  for (double d : {0.0, 0.4, -1.1}) {
    const double tau = 0.37 * kTrot;
    CHECK_THAT(ladder_phase_step(kLih, tau, first_phase_for_ladder_step(kLih, tau, d)),
               WithinAbs(d, 1e-12));
  }
}

TEST_CASE("default single-pulse design", "[pulse]") {
  const PulseSequence seq = design_sequence(make_orientation_target(1), kLih, default_design_options(kLih));
  REQUIRE(seq.size() == 1);
  const Subpulse& p = seq.subpulses()[0];
  CHECK_THAT(p.area, WithinAbs(units::kPi / 4.0, 1e-12));
  CHECK_THAT(p.duration, WithinRel(3.0 * kTrot, 1e-15));
  CHECK_THAT(units::au_to_ps(p.duration), WithinAbs(6.6, 0.1));
  CHECK_THAT(p.carrier, WithinRel(2.0 * kLih.b_au(), 1e-15));
  CHECK(p.center == 0.0);
  CHECK_THAT(p.amplitude,
             WithinRel(std::sqrt(2.0 / units::kPi) * p.area / (p.duration * p.dipole), 1e-15));
}

TEST_CASE("fifteen-pulse design layout", "[pulse]") {
  const PulseSequence seq = design_sequence(make_orientation_target(15), kLih, default_design_options(kLih));
  REQUIRE(seq.size() == 15);
  CHECK_THAT(seq.subpulses().back().center / kTrot, WithinAbs(210.0, 1e-9));
  CHECK_THAT(seq.t_on() / kTrot, WithinAbs(-15.0, 1e-9));
  CHECK_THAT(seq.t_off() / kTrot, WithinAbs(225.0, 1e-9));
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Subpulse& p = seq.subpulses()[i];
    CHECK(p.n == static_cast<int>(i + 1));
    CHECK_THAT(p.carrier, WithinRel(2.0 * kLih.b_au() * p.n, 1e-14));
    CHECK(p.area >= 0.0);
    CHECK(p.area <= units::kPi / 2.0);
    if (i > 0) CHECK(p.center > seq.subpulses()[i - 1].center);
  }
  CHECK(peak_intensity_wcm2(seq) > 0.0);
}

TEST_CASE("design rejects bad options", "[pulse]") {
  const OrientationTarget t = make_orientation_target(3);
  DesignOptions o = default_design_options(kLih);
  o.spacing_factor = 3.5;
  CHECK_THROWS_AS(design_sequence(t, kLih, o), DomainError);
  o = default_design_options(kLih);
  o.subpulse_duration = -1.0;
  CHECK_THROWS_AS(design_sequence(t, kLih, o), DomainError);
}

TEST_CASE("sequence constructor invariants", "[pulse]") {
  const PulseSequence good = design_sequence(make_orientation_target(2), kLih, default_design_options(kLih));
  auto pulses = good.subpulses();
  std::swap(pulses[0].carrier, pulses[1].carrier);
  CHECK_THROWS_AS(PulseSequence(kLih, pulses, good.t_on(), good.t_off()), DomainError);
  pulses = good.subpulses();
  pulses[1].center = pulses[0].center;
  CHECK_THROWS_AS(PulseSequence(kLih, pulses, good.t_on(), good.t_off()), DomainError);
  CHECK_THROWS_AS(PulseSequence(kLih, {}, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(PulseSequence(kLih, good.subpulses(), 1.0, 0.0), DomainError);
}

TEST_CASE("field values", "[pulse]") {
  DesignOptions o = default_design_options(kLih);
  o.phi_1 = 0.0;
  const PulseSequence seq = design_sequence(make_orientation_target(1), kLih, o);
  const Subpulse& p = seq.subpulses()[0];
  CHECK(field_amplitude(seq, p.center) == p.amplitude);
  CHECK(std::abs(field_amplitude(seq, seq.t_off() + 10.0 * p.duration)) < 1e-15);
  CHECK(std::abs(field_amplitude(seq, seq.t_on() - 10.0 * p.duration)) < 1e-15);
}

TEST_CASE("pulse areas survive quadrature", "[pulse]") {
  for (int j : {1, 5, 15}) {
    const PulseSequence seq = design_sequence(make_orientation_target(j), kLih, default_design_options(kLih));
    for (const Subpulse& p : seq.subpulses()) {
      CHECK_THAT(numeric_pulse_area(p), WithinRel(p.area, 1e-6));
    }
  }
  // Independent rule on one pulse.
  const PulseSequence seq = design_sequence(make_orientation_target(4), kLih, default_design_options(kLih));
  for (const Subpulse& p : seq.subpulses()) {
    const double area = p.dipole * std::abs(trapezoid_transform(p, p.carrier, 8.0, 400000));
    CHECK_THAT(area, WithinRel(p.area, 1e-6));
  }
}

TEST_CASE("doubling the duration halves the field", "[pulse]") {
  const OrientationTarget t = make_orientation_target(3);
  DesignOptions a = default_design_options(kLih);
  DesignOptions b = a;
  b.subpulse_duration = 2.0 * a.subpulse_duration;
  const PulseSequence sa = design_sequence(t, kLih, a);
  const PulseSequence sb = design_sequence(t, kLih, b);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    CHECK_THAT(sb.subpulses()[i].amplitude, WithinRel(0.5 * sa.subpulses()[i].amplitude, 1e-14));
    CHECK_THAT(numeric_pulse_area(sb.subpulses()[i]), WithinRel(numeric_pulse_area(sa.subpulses()[i]), 1e-6));
  }
}

TEST_CASE("subpulse spectrum is the Gaussian", "[pulse]") {
  const PulseSequence seq = design_sequence(make_orientation_target(3), kLih, default_design_options(kLih));
  for (const Subpulse& p : seq.subpulses()) {
    const double at_carrier = analytic_spectrum_magnitude(p, p.carrier);
    const double dft = std::abs(trapezoid_transform(p, p.carrier, 8.0, 200000));
    CHECK_THAT(dft, WithinRel(at_carrier, 1e-4));
    CHECK(at_carrier > analytic_spectrum_magnitude(p, p.carrier * 1.01));
    CHECK(at_carrier > analytic_spectrum_magnitude(p, p.carrier * 0.99));
    const double off = p.carrier + 0.5 / p.duration;
    CHECK_THAT(std::abs(trapezoid_transform(p, off, 8.0, 200000)),
               WithinRel(analytic_spectrum_magnitude(p, off), 1e-4));
  }
}

TEST_CASE("cross-talk between transitions", "[pulse]") {
  const PulseSequence seq = design_sequence(make_orientation_target(5), kLih, default_design_options(kLih));
  const CrossTalkReport r = cross_talk_report(seq);
  CHECK_FALSE(r.flagged);
  CHECK(r.max_off_diagonal < 1e-3);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    CHECK_THAT(r.areas(k, k), WithinRel(seq.subpulses()[i].area, 1e-6));
  }
  const PulseSequence one = design_sequence(make_orientation_target(1), kLih, default_design_options(kLih));
  const CrossTalkReport r1 = cross_talk_report(one);
  REQUIRE(r1.areas.rows() == 1);
  CHECK_THAT(r1.areas(0, 0), WithinRel(one.subpulses()[0].area, 1e-6));

  DesignOptions shortp = default_design_options(kLih);
  shortp.subpulse_duration = 0.1 * kTrot;
  CHECK(cross_talk_report(design_sequence(make_orientation_target(3), kLih, shortp)).flagged);
}

TEST_CASE("design is deterministic", "[pulse]") {
  const OrientationTarget t = make_orientation_target(9);
  const PulseSequence a = design_sequence(t, kLih, default_design_options(kLih));
  const PulseSequence b = design_sequence(t, kLih, default_design_options(kLih));
  CHECK(a == b);
}

TEST_CASE("peak intensity conversion", "[pulse]") {
  const PulseSequence seq = design_sequence(make_orientation_target(4), kLih, default_design_options(kLih));
  double emax = 0.0;
  for (const auto& p : seq.subpulses()) emax = std::max(emax, p.amplitude);
  CHECK_THAT(peak_intensity_wcm2(seq), WithinRel(3.50944506e16 * emax * emax, 1e-15));
}
