#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace nov {

using cplx = std::complex<double>;

struct QuadResult {
  cplx value;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Integrand on [a, b]. Besides the abscissa it receives the distances to
/// both endpoints, computed without cancellation, so that (t - a)^{-1/2}
/// and (b - t)^{-1/2} factors stay accurate near the ends.
using Integrand = std::function<cplx(double t, double from_a, double to_b)>;

struct QuadOptions {
  double tolerance = 1e-10;  // relative
  int max_level = 12;
};

/// Double-exponential (tanh-sinh) rule on a finite interval. Endpoint
/// singularities up to |t - end|^{-1/2} are absorbed by the transform.
/// Throws Error(NoConvergence) when the level cap is reached.
QuadResult quad_singular(const Integrand& f, double a, double b, const QuadOptions& opts = {});

}  // namespace nov
