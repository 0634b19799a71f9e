#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "nonoverlap/functional.hpp"
#include "nonoverlap/reduction.hpp"

namespace nov {

/// One admissible pair from the family
///   f(z) = R e^{i theta1} z (1 + a z) / (1 + |a|),   F(zeta) = R e^{i theta2} zeta
/// with |a| <= 1/2, evaluated at z = r, zeta = rho.
struct PairSample {
  double R = 1.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  cplx a;
  cplx w1, w2;
};

/// Throws Error(Domain) unless R > 0 and |a| <= 1/2.
PairSample sample_pair(double R, double theta1, double theta2, cplx a, const ProblemConfig& cfg);

struct CloudPoint {
  PairSample pair;
  cplx I;
};

/// count functional values with log R uniform in [-1, 1], theta1, theta2
/// uniform in [0, 2pi) and a uniform in the disk of radius 1/2.
std::vector<CloudPoint> sample_cloud(const FunctionalSpec& spec, const ProblemConfig& cfg, int count,
                                     std::uint64_t seed);

}  // namespace nov
