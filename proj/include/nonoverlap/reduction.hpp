#pragma once

#include <array>
#include <complex>

#include "nonoverlap/functional.hpp"

namespace nov {

/// Moduli of the evaluation points: r = |z0| in (0, 1), rho = |zeta0| > 1.
struct ProblemConfig {
  double r = 0.5;
  double rho = 2.0;

  /// Throws Error(Config) naming the violated constraint.
  void validate() const;
};

/// Complete integrals that depend on the configuration only.
struct ProblemModuli {
  double K_r;         // K(r)
  double K_r_comp;    // K(sqrt(1 - r^2))
  double K_rho;       // K(1/rho)
  double K_rho_comp;  // K(sqrt(1 - 1/rho^2))

  explicit ProblemModuli(const ProblemConfig& cfg);
};

/// Every derived quantity of the integrated boundary equations at one
/// candidate (p, q, w1, w2).
///
/// When C1 vanishes (which it does at every boundary point) b and b_star are
/// infinite; n, n_star, l, a, a_star are computed in forms that stay finite
/// and tend to zero continuously.
struct ReductionConstants {
  cplx C1, C2;
  // disk side
  cplx a, b, c, h, n, k;
  // exterior side
  cplx a_star, b_star, c_star, l, phi, m, h0;
  cplx sin_phi, cos2_phi;
  // connecting path
  cplx h_star, n_star, k_prime;
  bool c1_vanishes = false;
};

/// Throws Error(Degenerate) naming the vanishing denominator: p+q, C2,
/// w1-w2, or k(1-c*).
ReductionConstants derive_constants(cplx p, cplx q, const EvalPoint& pt);

/// sqrt(A) from  -p h Pi(n, k) = sqrt(A) K(r).
cplx sqrt_a_closed_form(const ReductionConstants& rc, cplx p, const ProblemModuli& mod);

/// sqrt(B) from  l Pi(phi, m, k) - h0 F(phi, k) = (sqrt(B)/rho) K(1/rho).
cplx sqrt_b_closed_form(const ReductionConstants& rc, const ProblemConfig& cfg, const ProblemModuli& mod);

/// q h* Pi(n*, k'), the closed form of the integral from 0 to F(rho) up to
/// the factor 2i.
cplx connecting_closed_form(const ReductionConstants& rc, cplx q);

/// Relative signs applied to the principal-branch closed forms when no
/// continuation reference exists yet.
struct BranchSigns {
  int sqrt_a = 1;
  int sqrt_b = 1;
};

/// Closed-form values at a previously accepted point. Each new evaluation is
/// sign-aligned to these so that the chosen branch is carried continuously.
struct BranchReference {
  cplx sqrt_a;
  cplx sqrt_b;
  cplx connecting;
};

struct CurveTerms {
  cplx sqrt_a, sqrt_b, connecting;
  cplx A, B;
  /// LHS - RHS of  q h* Pi(n*,k') = (sqrtA/2) K(r') + (sqrtB/(2 rho)) K(rho')
  ///                                + (alpha/pi) i sqrtA K(r).
  cplx residual;
  int flips = 0;  // sign flips applied by reference alignment
};

CurveTerms curve_terms(double alpha, cplx p, cplx q, const EvalPoint& pt, const ProblemConfig& cfg,
                       const ProblemModuli& mod, const BranchSigns& signs = {},
                       const BranchReference* ref = nullptr);

/// Principal-branch residual of the curve equation before sqrt(A), sqrt(B)
/// are eliminated.
cplx curve_residual(double alpha, cplx p, cplx q, const EvalPoint& pt, const ProblemConfig& cfg);

/// Both sides of the curve equation after dividing by sqrt(A) K(r):
///   -(q h*)/(p h) Pi(n*,k')/Pi(n,k)
///     = K(r')/(2K(r)) - (l Pi(phi,m,k) - h0 F(phi,k)) / (2 p h Pi(n,k)) * K(rho')/K(1/rho) + i alpha/pi,
/// evaluated from freshly derived constants, with each closed form
/// sign-aligned to `ref`.
struct CurveEquationSides {
  cplx lhs, rhs;
};
CurveEquationSides curve_equation_sides(double alpha, cplx p, cplx q, const EvalPoint& pt, const ProblemConfig& cfg,
                                        const BranchReference& ref);

/// Square system for the tracer at sweep angle alpha:
///   [Im A, Im B, Re res, Im res, Re C1, Im C1]
/// with p, q taken from pq(spec, pt, normal_angle).
struct BoundaryResidual {
  std::array<double, 6> values;
  CurveTerms terms;
  GradientPair gp;
  cplx C1;
};

BoundaryResidual full_residual(double alpha, double normal_angle, const FunctionalSpec& spec, const EvalPoint& pt,
                               const ProblemConfig& cfg, const ProblemModuli& mod, const BranchSigns& signs = {},
                               const BranchReference* ref = nullptr);

}  // namespace nov
