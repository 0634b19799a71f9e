#include "nonoverlap/sampler.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "nonoverlap/error.hpp"

namespace nov {

// Admissibility of the family. g(z) = z + a z^2 has g'(z) = 1 + 2az != 0 on
// |z| < 1 when |a| <= 1/2, and g(z1) = g(z2) forces (z1 - z2)(1 + a(z1 + z2)) = 0
// with |a(z1 + z2)| < 1, so g is univalent on E. |g(z)| < 1 + |a| there, hence
// f = R e^{i theta1} g / (1 + |a|) maps E into the open disk |w| < R with
// f(0) = 0. F = R e^{i theta2} zeta maps E* onto |w| > R with F(inf) = inf.
// The images are disjoint.
PairSample sample_pair(double R, double theta1, double theta2, cplx a, const ProblemConfig& cfg) {
  cfg.validate();
  if (!(R > 0.0) || !std::isfinite(R)) throw Error(ErrorCode::Domain, "R must be positive");
  if (!(std::abs(a) <= 0.5)) throw Error(ErrorCode::Domain, "|a| must not exceed 1/2");
  PairSample s{R, theta1, theta2, a, {}, {}};
  const double r = cfg.r;
  s.w1 = R * std::polar(1.0, theta1) * r * (1.0 + a * r) / (1.0 + std::abs(a));
  s.w2 = R * std::polar(1.0, theta2) * cfg.rho;
  return s;
}

std::vector<CloudPoint> sample_cloud(const FunctionalSpec& spec, const ProblemConfig& cfg, int count,
                                     std::uint64_t seed) {
  if (count < 1) throw Error(ErrorCode::Config, "sample count must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_r(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<CloudPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double R = std::exp(log_r(rng));
    const double t1 = angle(rng);
    const double t2 = angle(rng);
    const double rad = 0.5 * std::sqrt(unit(rng));
    const cplx a = std::polar(rad, angle(rng));
    const PairSample s = sample_pair(R, t1, t2, a, cfg);
    out.push_back({s, eval_functional(spec, {s.w1, s.w2})});
  }
  return out;
}

}  // namespace nov
