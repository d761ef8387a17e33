#pragma once

#include <complex>
#include <functional>

namespace rotctl {

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of a complex
/// integrand on [a, b]. The range is first split into `initial_intervals`
/// equal pieces (useful for oscillatory integrands), then the interval with
/// the largest error estimate is bisected until the summed estimate drops
/// below `abs_tol`. Throws NumericError past `max_intervals`.
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                           double abs_tol, int initial_intervals = 1, int max_intervals = 200000);

}  // namespace rotctl
