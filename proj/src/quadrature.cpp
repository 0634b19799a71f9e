#include "nonoverlap/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "nonoverlap/error.hpp"

namespace nov {

namespace {

// Abscissae beyond this are below double resolution of the endpoint gap.
constexpr double kTMax = 4.0;

struct Node {
  double x, from_a, to_b, weight;
};

Node node(double t, double a, double b) {
  const double half = 0.5 * (b - a);
  const double u = 0.5 * std::numbers::pi * std::sinh(t);
  const double cu = std::cosh(u);
  const double w = 0.5 * std::numbers::pi * std::cosh(t) / (cu * cu);
  // 1 - tanh(u) = 2 / (1 + e^{2u}), and symmetrically for 1 + tanh(u).
  const double to_b = (b - a) / (1.0 + std::exp(2.0 * u));
  const double from_a = (b - a) / (1.0 + std::exp(-2.0 * u));
  const double x = (t >= 0.0) ? b - to_b : a + from_a;
  return {x, from_a, to_b, half * w};
}

}  // namespace

QuadResult quad_singular(const Integrand& f, double a, double b, const QuadOptions& opts) {
  QuadResult res;
  double h = 1.0;
  cplx sum{};
  auto add = [&](double t) {
    Node n = node(t, a, b);
    if (n.from_a <= 0.0 || n.to_b <= 0.0 || n.weight == 0.0) return;
    cplx v = f(n.x, n.from_a, n.to_b);
    ++res.evaluations;
    sum += n.weight * v;
  };

  add(0.0);
  for (double t = h; t <= kTMax; t += h) {
    add(t);
    add(-t);
  }
  cplx estimate = h * sum;
  for (int level = 1; level <= opts.max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTMax; t += 2.0 * h) {
      add(t);
      add(-t);
    }
    cplx next = h * sum;
    const double diff = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && diff <= opts.tolerance * std::max(std::abs(next), 1e-300)) {
      res.value = next;
      res.error_estimate = diff;
      return res;
    }
    res.error_estimate = diff;
  }
  throw Error(ErrorCode::NoConvergence, "tanh-sinh quadrature did not reach tolerance at level cap");
}

}  // namespace nov
