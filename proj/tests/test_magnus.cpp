#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "rotctl/errors.hpp"
#include "rotctl/magnus.hpp"
#include "rotctl/observables.hpp"
#include "rotctl/optimizer.hpp"
#include "rotctl/pulse.hpp"
#include "rotctl/units.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace rotctl;

namespace {

const Molecule kLih = Molecule::lih();
const double kTrot = kLih.revival_period_au();

PulseSequence design(int j_max, double delta_phi = 0.0) {
  return design_sequence(make_orientation_target(j_max, delta_phi), kLih, default_design_options(kLih));
}

double wrap(double x) { return std::remainder(x, 2.0 * units::kPi); }

// int_a^b E(t) exp(-i omega (t - center)) dt by composite Simpson.
std::complex<double> simpson_area(const Subpulse& p, double a, double b) {
  const int points = 400000;
  const double h = (b - a) / points;
  std::complex<double> sum = 0.0;
  for (int k = 0; k <= points; ++k) {
    const double t = a + k * h;
    const double w = (k == 0 || k == points) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += w * p.field(t) * std::polar(1.0, -p.carrier * (t - p.center));
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("partial pulse areas", "[magnus]") {
  const PulseSequence seq = design(3);
  for (const Subpulse& p : seq.subpulses()) {
    CHECK(partial_area(p, seq.t_on(), p.center - 8.0 * p.duration) < 1e-10);
    // The resonant half of the field gives exactly theta/2 at the center. The
    // counter-rotating half adds a term of relative size 1/(omega T sqrt(2 pi))
    // in quadrature, i.e. a second-order shift.
    const double cr = 1.0 / (p.carrier * p.duration * std::sqrt(2.0 * units::kPi));
    const double half = partial_area(p, seq.t_on(), p.center);
    CHECK(std::abs(half / (0.5 * p.area) - 1.0) <= 0.5 * cr * cr * 1.05 + 1e-6);
    CHECK_THAT(half, WithinRel(p.dipole * std::abs(simpson_area(p, std::max(seq.t_on(), p.center - 10.0 * p.duration), p.center)), 1e-8));
    CHECK_THAT(partial_area(p, seq.t_on(), p.center + 8.0 * p.duration), WithinRel(p.area, 1e-6));
    double previous = 0.0;
    for (double s = -4.0; s <= 4.0; s += 0.25) {
      const double a = partial_area(p, seq.t_on(), p.center + s * p.duration);
      CHECK(a >= previous - 1e-6);
      previous = a;
    }
  }
}

TEST_CASE("ladder state before, during and after the sequence", "[magnus]") {
  const PulseSequence seq = design(1);
  const AnalyticState before = magnus_state(seq, seq.t_on());
  CHECK(before.picture == Picture::Interaction);
  CHECK(std::abs(before.coeffs(0) - 1.0) < 1e-15);
  CHECK(std::abs(before.coeffs(1)) < 1e-15);
  const AnalyticState after = magnus_state(seq, seq.t_off());
  CHECK_THAT(std::norm(after.coeffs(0)), WithinAbs(0.5, 1e-6));
  CHECK_THAT(std::norm(after.coeffs(1)), WithinAbs(0.5, 1e-6));
}

TEST_CASE("fifteen-pulse ladder reproduces the optimal populations", "[magnus]") {
  const OrientationTarget target = make_orientation_target(15);
  const PulseSequence seq = design_sequence(target, kLih, default_design_options(kLih));
  const AnalyticState s = magnus_state(seq, seq.t_off());
  REQUIRE(s.coeffs.size() == 16);
  CHECK_THAT(s.coeffs.norm(), WithinAbs(1.0, 1e-12));
  for (int j = 0; j <= 15; ++j) {
    const double c = target.amplitudes[static_cast<std::size_t>(j)];
    CHECK_THAT(std::norm(s.coeffs(j)), WithinAbs(c * c, 1e-6));
  }
  // Field-free orientation of the prepared state tracks the target prediction.
  const AnalyticState sch = to_schrodinger_picture(magnus_state(seq, 230.0 * kTrot), kLih);
  CHECK_THAT(orientation(sch.coeffs), WithinAbs(predicted_orientation(target, kLih, 230.0 * kTrot), 1e-5));
  CHECK_THAT(orientation(sch.coeffs), WithinAbs(target.lambda, 1e-5));
}

TEST_CASE("ladder phases follow the requested step", "[magnus]") {
  for (double delta : {0.0, 0.4, -1.3}) {
    const PulseSequence seq = design(6, delta);
    const AnalyticState s = magnus_state(seq, seq.t_off());
    for (int j = 0; j < 6; ++j) {
      const double step = std::arg(s.coeffs(j + 1) / s.coeffs(j));
      CHECK_THAT(wrap(step - (j + 1) * delta), WithinAbs(0.0, 1e-6));
    }
  }
}

TEST_CASE("series matches pointwise evaluation and stays normalized", "[magnus]") {
  const PulseSequence seq = design(3);
  std::vector<double> times;
  for (double t = seq.t_on(); t <= seq.t_off(); t += 0.5 * kTrot) times.push_back(t);
  const auto series = magnus_series(seq, times);
  REQUIRE(series.size() == times.size());
  for (std::size_t k = 0; k < times.size(); k += 7) {
    const AnalyticState direct = magnus_state(seq, times[k]);
    CHECK((direct.coeffs - series[k].coeffs).cwiseAbs().maxCoeff() < 1e-8);
  }
  for (const auto& s : series) CHECK_THAT(s.coeffs.norm(), WithinAbs(1.0, 1e-12));
  const std::vector<double> backwards{seq.t_on() + 1.0, seq.t_on()};
  CHECK_THROWS_AS(magnus_series(seq, backwards), DomainError);
}

TEST_CASE("populations change only while their pulses are on", "[magnus]") {
  const PulseSequence seq = design(4);
  const auto& pulses = seq.subpulses();
  std::vector<double> times;
  for (double t = seq.t_on(); t <= seq.t_off(); t += 0.25 * kTrot) times.push_back(t);
  const auto series = magnus_series(seq, times);
  for (std::size_t k = 1; k < times.size(); ++k) {
    for (int j = 0; j <= 4; ++j) {
      bool active = false;
      for (int n : {j, j + 1}) {
        if (n < 1 || n > 4) continue;
        const auto& p = pulses[static_cast<std::size_t>(n - 1)];
        if (std::abs(times[k] - p.center) < 6.0 * p.duration ||
            std::abs(times[k - 1] - p.center) < 6.0 * p.duration) {
          active = true;
        }
      }
      if (!active) {
        CHECK(std::abs(std::norm(series[k].coeffs(j)) - std::norm(series[k - 1].coeffs(j))) < 1e-7);
      }
    }
  }
}

TEST_CASE("overlapping subpulses are rejected", "[magnus]") {
  const PulseSequence seq = design(2);
  auto pulses = seq.subpulses();
  pulses[1].center = pulses[0].center + 2.0 * pulses[0].duration;
  const PulseSequence overlapping(kLih, pulses, seq.t_on(), seq.t_off());
  CHECK_THROWS_AS(magnus_state(overlapping, 0.0), DomainError);
  CHECK_THROWS_AS(require_sequential(overlapping), DomainError);
  CHECK_NOTHROW(require_sequential(seq));
}

TEST_CASE("Schrodinger picture conversion", "[magnus]") {
  const OrientationTarget target = make_orientation_target(5);
  AnalyticState s;
  s.coeffs.resize(6);
  for (int j = 0; j <= 5; ++j) s.coeffs(j) = target.amplitudes[static_cast<std::size_t>(j)];
  const double lambda = target.lambda;
  s.time = 0.0;
  CHECK((to_schrodinger_picture(s, kLih).coeffs - s.coeffs).cwiseAbs().maxCoeff() == 0.0);
  s.time = kTrot;
  const AnalyticState full = to_schrodinger_picture(s, kLih);
  CHECK(full.picture == Picture::Schrodinger);
  CHECK((full.coeffs - s.coeffs).cwiseAbs().maxCoeff() < 1e-10);
  s.time = 0.5 * kTrot;
  const AnalyticState half = to_schrodinger_picture(s, kLih);
  for (int j = 0; j <= 5; ++j) CHECK_THAT(std::abs(half.coeffs(j)), WithinAbs(std::abs(s.coeffs(j)), 1e-15));
  // At T_rot/2 the J -> J+1 coherence picks up (-1)^(J+1), so only the
  // two-state packet is fully anti-oriented.
  double expected = 0.0;
  for (int j = 0; j < 5; ++j) {
    expected += 2.0 * (j % 2 == 0 ? -1.0 : 1.0) * target.amplitudes[static_cast<std::size_t>(j)] *
                target.amplitudes[static_cast<std::size_t>(j + 1)] * cos_matrix_element(j);
  }
  CHECK_THAT(orientation(half.coeffs), WithinAbs(expected, 1e-10));
  CHECK(orientation(half.coeffs) > -lambda);
  AnalyticState two;
  two.coeffs = Eigen::VectorXcd::Constant(2, 1.0 / std::sqrt(2.0));
  two.time = 0.5 * kTrot;
  CHECK_THAT(orientation(to_schrodinger_picture(two, kLih).coeffs), WithinAbs(-max_orientation(1), 1e-10));
  // Already in the Schrodinger picture: unchanged.
  CHECK((to_schrodinger_picture(half, kLih).coeffs - half.coeffs).cwiseAbs().maxCoeff() == 0.0);
}
