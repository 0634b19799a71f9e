#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "nonoverlap/functional.hpp"
#include "nonoverlap/reduction.hpp"

namespace nov {

/// One solved point of the boundary curve.
///
/// `alpha` is the sweep parameter of the curve equation (the coefficient of
/// the i/pi term); `normal_angle` is the direction angle psi entering p, q,
/// solved as an unknown alongside w1 = f(r), w2 = F(rho).
struct BoundaryPoint {
  double alpha = 0.0;
  double equation_alpha = 0.0;  // representative of alpha in [-pi, pi]
  double normal_angle = 0.0;
  cplx w1, w2;
  double A = 0.0, B = 0.0;
  cplx I0;
  double residual_norm = 0.0;
  BranchReference branch{};
  std::vector<std::string> branch_log;
};

struct TraceFailure {
  double alpha;
  std::string reason;
};

struct TraceOptions {
  int steps = 360;
  double solver_tol = 1e-10;     // residual max-norm for Newton convergence
  double accept_tol = 1e-9;      // residual max-norm required of accepted points
  double closure_tol = 1e-6;     // relative to the curve diameter
  double step_tol = 1e-13;
  int max_iterations = 60;
  int refine_levels = 3;
  double refine_factor = 5.0;    // bisect where |dI0| > factor * median
  double max_fail_fraction = 0.25;
};

struct TraceResult {
  std::vector<BoundaryPoint> points;  // strictly increasing alpha in [0, 2pi)
  std::vector<TraceFailure> failures;
  bool closed = false;
  double closure_defect = 0.0;  // |I0(2pi) - I0(0)| / diameter
  double diameter = 0.0;
  std::string functional;
  ProblemConfig config;
  int steps = 0;
};

/// The principal-branch closed forms cover the sweep only for alpha in
/// (-pi, pi): beyond pi, k'^2 crosses its cut and the curve continues with
/// the i alpha / pi term shifted by 2i. Returns alpha - 2 pi round(alpha / 2 pi).
double equation_alpha(double alpha) noexcept;

/// Unknowns of one solve.
struct SolverState {
  cplx w1, w2;
  double normal_angle = 0.0;
};

/// Damped Gauss-Newton on the six-component boundary residual with a
/// finite-difference Jacobian and SVD minimum-norm steps. Principal-branch
/// closed forms are sign-aligned to `ref` (updated along the iterates).
/// Throws Error(NoConvergence) or Error(InvalidBoundary).
BoundaryPoint solve_boundary_point(double alpha, const FunctionalSpec& spec, const ProblemConfig& cfg,
                                   const SolverState& guess, const BranchReference& ref,
                                   const TraceOptions& opts = {});

/// Seed solve without a reference: coarse log-polar grid over (w1, w2, psi)
/// and the four relative signs of sqrt(A), sqrt(B), then Newton from the best
/// candidates.
BoundaryPoint seed_boundary_point(double alpha, const FunctionalSpec& spec, const ProblemConfig& cfg,
                                  const TraceOptions& opts = {});

/// Throws Error(TraceAbort) if more than max_fail_fraction of the grid fails.
TraceResult trace_curve(const FunctionalSpec& spec, const std::string& functional_text, const ProblemConfig& cfg,
                        const TraceOptions& opts = {});

enum class Containment { Inside, Outside, NearBoundary };

const char* containment_name(Containment c) noexcept;

/// Winding number of the closed polyline through the traced I0 values, with
/// a near-boundary band of 1e-6 times the diameter. Throws Error(NotClosed).
Containment contains(const TraceResult& trace, cplx point);

/// Number of pairs of non-adjacent segments of the closed polyline that
/// intersect.
int polyline_self_intersections(const std::vector<cplx>& vertices);

}  // namespace nov
