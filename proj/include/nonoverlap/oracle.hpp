#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nonoverlap/functional.hpp"
#include "nonoverlap/quadrature.hpp"
#include "nonoverlap/reduction.hpp"

namespace nov {

/// Minimum distance from the integration segment at which a singular point
/// is accepted; closer tuples are rejected with Error(GuardViolation).
inline constexpr double kGuardMargin = 0.02;

/// Result of comparing a quadrature against a closed form up to a global
/// sign. `sign` is the factor s in {+1, -1} for which quad ~ s * closed.
struct OracleCheck {
  cplx quad;
  cplx closed;
  int sign = 1;
  double rel_error = 0.0;
};

OracleCheck compare_modulo_sign(cplx quad, cplx closed);
/// Plain relative error; sign is always +1.
OracleCheck compare_direct(cplx quad, cplx closed);

/// Square root continued along a parameterised path s in [0, 1] starting from
/// sqrt(g(0)) with g(0) on the principal branch (value 1 when g(0) = 1). The
/// radicand is sampled on a fine grid at construction; evaluations pick the
/// sign nearest to the tracked value at the closest sample. g must not vanish
/// on the path.
class BranchTracker {
 public:
  BranchTracker(std::function<cplx(double)> radicand, int samples = 1024);
  cplx sqrt_at(double s) const;

 private:
  std::function<cplx(double)> g_;
  std::vector<cplx> tracked_;
};

// Defining integrals of the Legendre forms by direct quadrature. Paths are
// straight segments 0 -> phi (t = phi s) and the square root is continued
// from 1 at t = 0.
QuadResult quad_K(cplx k, const QuadOptions& opts = {});
QuadResult quad_F(cplx phi, cplx k, const QuadOptions& opts = {});
QuadResult quad_Pi_complete(cplx n, cplx k, const QuadOptions& opts = {});
QuadResult quad_Pi_incomplete(cplx phi, cplx n, cplx k, const QuadOptions& opts = {});

/// min distance of 1 - k^2 sin^2 t and 1 + n sin^2 t from the cut (-inf, 0] along t = phi s.
double elliptic_path_clearance(cplx phi, cplx n, cplx k);

// Reduction checks. Each integrates sqrt((C1 w - C2) / (w (w - w1)(w - w2))) dw
// along a straight path in t = w / scale and compares against the closed form.
//   J: w = w1 t,  t in [0, 1]     closed -2 p h Pi(n, k)
//   L: w = w2 t,  t in [1, inf)   closed 2 (l Pi(phi, m, k) - h0 F(phi, k))
//   T: w = w2 t,  t in [0, 1]     closed 2i q h* Pi(n*, k')
// L converges only when C1 = 0 and T additionally requires the two interior
// singular points b* and w1/w2 on the same side of the path.
OracleCheck check_J_reduction(cplx p, cplx q, const EvalPoint& pt, const QuadOptions& opts = {});
OracleCheck check_L_reduction(cplx p, cplx q, const EvalPoint& pt, const QuadOptions& opts = {});
OracleCheck check_T_reduction(cplx p, cplx q, const EvalPoint& pt, const QuadOptions& opts = {});

/// int_{-1}^0 dz / sqrt(z (r - z)(1 - r z)) against -i K(sqrt(1 - r^2)).
OracleCheck check_T1(const ProblemConfig& cfg, const QuadOptions& opts = {});
/// Integral over the arc z = -e^{i t}, t in [0, alpha], against -(2 alpha/pi) K(r).
OracleCheck check_T2(const ProblemConfig& cfg, double alpha, const QuadOptions& opts = {});
/// Same arc integral in closed form through the Landen transformation,
///   -(2 / (1 + r)) F(alpha / 2, 2 sqrt(r) / (1 + r)).
cplx arc_integral_landen(double r, double alpha);
/// int_1^rho dz / sqrt(z (rho - z)(1 - rho z)) against (i / rho) K(sqrt(1 - 1/rho^2)).
OracleCheck check_T3(const ProblemConfig& cfg, const QuadOptions& opts = {});
/// int_0^r dz / sqrt(z (r - z)(1 - r z)) against 2 K(r). Positive integrand,
/// so no sign freedom.
OracleCheck check_anchor(const ProblemConfig& cfg, const QuadOptions& opts = {});

struct VerifyOptions {
  std::uint64_t seed = 1;
  int tuples = 100;      // per reduction check
  int elliptic_args = 500;
  double tolerance = 1e-8;
  double base_tolerance = 1e-9;  // T1, T2, T3
  double anchor_tolerance = 1e-10;
};

struct VerifyEntry {
  std::string check;
  std::string params;  // JSON object text
  OracleCheck result;
  double tolerance;
  bool passed;
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;
  bool all_passed = true;
  std::string to_json() const;
};

struct ReductionTuple {
  cplx p, q;
  EvalPoint pt;
};

/// Random tuples accepted by the corresponding check's guards: p, q in the
/// unit square, w1 in half of it, w2 in twice it. The L family lies on the
/// slice q = -p w1 / w2 (C1 = 0).
enum class ReductionKind { J, L, T };
std::vector<ReductionTuple> admissible_tuples(ReductionKind kind, int count, std::uint64_t seed);

/// Random (phi, n, k) with |k|, |n| <= 0.9, |phi| <= pi/2 and path clearance
/// at least 0.05.
struct EllipticArgs {
  cplx phi, n, k;
};
std::vector<EllipticArgs> safe_elliptic_args(int count, std::uint64_t seed);

VerifyReport run_verification(const ProblemConfig& cfg, const VerifyOptions& opts);

}  // namespace nov
