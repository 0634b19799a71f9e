#include "nonoverlap/reduction.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nonoverlap/elliptic.hpp"
#include "nonoverlap/error.hpp"

namespace nov {

namespace {

constexpr double kDegenerate = 1e-14;

void require_nonzero(cplx v, double scale, const char* name) {
  if (!(std::abs(v) > kDegenerate * scale) || !std::isfinite(std::abs(v)))
    throw Error(ErrorCode::Degenerate, std::string("vanishing denominator: ") + name);
}

void require_finite(cplx v, const char* name) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw Error(ErrorCode::Degenerate, std::string("non-finite constant: ") + name);
}

cplx align(cplx value, cplx reference, int& flips) {
  if ((value * std::conj(reference)).real() < 0.0) {
    ++flips;
    return -value;
  }
  return value;
}

}  // namespace

void ProblemConfig::validate() const {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::Config, "r must lie in (0, 1)");
  if (!(rho > 1.0 && std::isfinite(rho))) throw Error(ErrorCode::Config, "rho must lie in (1, inf)");
}

ProblemModuli::ProblemModuli(const ProblemConfig& cfg) {
  cfg.validate();
  K_r = ellip_K(cfg.r).real();
  K_r_comp = ellip_K(std::sqrt(1.0 - cfg.r * cfg.r)).real();
  K_rho = ellip_K(1.0 / cfg.rho).real();
  K_rho_comp = ellip_K(std::sqrt(1.0 - 1.0 / (cfg.rho * cfg.rho))).real();
}

ReductionConstants derive_constants(cplx p, cplx q, const EvalPoint& pt) {
  const cplx w1 = pt.w1, w2 = pt.w2;
  const double wscale = std::abs(w1) + std::abs(w2);
  require_nonzero(w1, wscale, "w1");
  require_nonzero(w2, wscale, "w2");
  require_nonzero(w1 - w2, wscale, "w1 - w2");
  const cplx pq_sum = p + q;
  require_nonzero(pq_sum, std::abs(p) + std::abs(q), "p + q");

  ReductionConstants rc;
  rc.C1 = p * w1 + q * w2;
  rc.C2 = pq_sum * w1 * w2;
  require_nonzero(rc.C2, std::abs(pq_sum) * std::abs(w1) * std::abs(w2), "C2");
  const double c1_scale = std::abs(p * w1) + std::abs(q * w2);
  rc.c1_vanishes = std::abs(rc.C1) <= 1e-12 * c1_scale;
  // Scale-invariant functionals have C1 = 0 exactly. Rounding noise there
  // would enter the exterior integral through sqrt(cos^2 phi), so a C1 that is
  // zero to working precision is taken as zero.
  if (std::abs(rc.C1) <= 8.0 * std::numeric_limits<double>::epsilon() * c1_scale) rc.C1 = 0.0;
  constexpr double inf = std::numeric_limits<double>::infinity();

  rc.c = w1 / w2;
  rc.a = std::sqrt(rc.C1 * rc.c);
  rc.b = rc.C1 == cplx{} ? cplx{inf, 0.0} : rc.C2 / (rc.C1 * w1);
  rc.n = -rc.C1 * w1 / rc.C2;
  rc.k = std::sqrt(q / pq_sum);
  rc.h = std::sqrt((w1 - w2) * w1 * w1 / rc.C2);

  rc.c_star = w2 / w1;
  rc.a_star = std::sqrt(rc.C1 * rc.c_star);
  rc.b_star = rc.C1 == cplx{} ? cplx{inf, 0.0} : rc.C2 / (rc.C1 * w2);
  rc.l = rc.C1 * std::sqrt(rc.c_star / (pq_sum * (w1 - w2)));
  const cplx amp_den = rc.k * std::sqrt(1.0 - rc.c_star);
  require_nonzero(rc.k * (1.0 - rc.c_star), 1.0 + std::abs(rc.c_star), "k(1 - c*)");
  rc.sin_phi = 1.0 / amp_den;
  // 1 - sin^2 phi = -C1 sin^2 phi / (w1 (p + q)); exact where C1 = 0.
  rc.cos2_phi = -rc.C1 * rc.sin_phi * rc.sin_phi / (w1 * pq_sum);
  rc.phi = complex_arcsin(rc.sin_phi);
  rc.m = rc.k * (rc.c_star - 1.0);
  rc.h0 = w1 / rc.h;

  rc.h_star = std::sqrt((w1 - w2) * w2 * w2 / rc.C2);
  rc.n_star = -rc.C1 * w2 / rc.C2;
  rc.k_prime = std::sqrt(1.0 - rc.k * rc.k);

  for (auto [v, name] : {std::pair{rc.h, "h"}, {rc.h_star, "h*"}, {rc.k, "k"}, {rc.l, "l"}, {rc.h0, "h0"},
                         {rc.n, "n"}, {rc.n_star, "n*"}, {rc.sin_phi, "sin phi"}, {rc.cos2_phi, "cos^2 phi"}})
    require_finite(v, name);
  return rc;
}

cplx sqrt_a_closed_form(const ReductionConstants& rc, cplx p, const ProblemModuli& mod) {
  return -p * rc.h * ellip_Pi_complete(rc.n, rc.k) / mod.K_r;
}

cplx sqrt_b_closed_form(const ReductionConstants& rc, const ProblemConfig& cfg, const ProblemModuli& mod) {
  cplx lhs = -rc.h0 * ellip_F_sc(rc.sin_phi, rc.cos2_phi, rc.k);
  if (rc.l != cplx{}) lhs += rc.l * ellip_Pi_sc(rc.sin_phi, rc.cos2_phi, rc.m, rc.k);
  return cfg.rho * lhs / mod.K_rho;
}

cplx connecting_closed_form(const ReductionConstants& rc, cplx q) {
  return q * rc.h_star * ellip_Pi_complete(rc.n_star, rc.k_prime);
}

CurveTerms curve_terms(double alpha, cplx p, cplx q, const EvalPoint& pt, const ProblemConfig& cfg,
                       const ProblemModuli& mod, const BranchSigns& signs, const BranchReference* ref) {
  const ReductionConstants rc = derive_constants(p, q, pt);
  CurveTerms t;
  t.sqrt_a = sqrt_a_closed_form(rc, p, mod);
  t.sqrt_b = sqrt_b_closed_form(rc, cfg, mod);
  t.connecting = connecting_closed_form(rc, q);
  if (ref) {
    t.sqrt_a = align(t.sqrt_a, ref->sqrt_a, t.flips);
    t.sqrt_b = align(t.sqrt_b, ref->sqrt_b, t.flips);
  } else {
    t.sqrt_a *= static_cast<double>(signs.sqrt_a);
    t.sqrt_b *= static_cast<double>(signs.sqrt_b);
  }
  t.A = t.sqrt_a * t.sqrt_a;
  t.B = t.sqrt_b * t.sqrt_b;
  const cplx i{0.0, 1.0};
  const cplx rhs = 0.5 * t.sqrt_a * mod.K_r_comp + t.sqrt_b * mod.K_rho_comp / (2.0 * cfg.rho) +
                   alpha / std::numbers::pi * i * t.sqrt_a * mod.K_r;
  // The connecting form jumps by more than a sign where k'^2 crosses its
  // cut, so its sign is matched to the right-hand side instead of carried.
  if (std::abs(t.connecting + rhs) < std::abs(t.connecting - rhs)) {
    t.connecting = -t.connecting;
    ++t.flips;
  }
  t.residual = t.connecting - rhs;
  return t;
}

cplx curve_residual(double alpha, cplx p, cplx q, const EvalPoint& pt, const ProblemConfig& cfg) {
  return curve_terms(alpha, p, q, pt, cfg, ProblemModuli(cfg)).residual;
}

CurveEquationSides curve_equation_sides(double alpha, cplx p, cplx q, const EvalPoint& pt, const ProblemConfig& cfg,
                                        const BranchReference& ref) {
  const ProblemModuli mod(cfg);
  const ReductionConstants rc = derive_constants(p, q, pt);
  int flips = 0;
  // Each closed form below is the printed expression; only its overall sign
  // is taken from the reference branch.
  const cplx ph_pi = align(p * rc.h * ellip_Pi_complete(rc.n, rc.k), -ref.sqrt_a, flips);
  cplx exterior = -rc.h0 * ellip_F_sc(rc.sin_phi, rc.cos2_phi, rc.k);
  if (rc.l != cplx{}) exterior += rc.l * ellip_Pi_sc(rc.sin_phi, rc.cos2_phi, rc.m, rc.k);
  exterior = align(exterior, ref.sqrt_b, flips);
  const cplx qh_pi = align(q * rc.h_star * ellip_Pi_complete(rc.n_star, rc.k_prime), ref.connecting, flips);

  CurveEquationSides s;
  s.lhs = -qh_pi / ph_pi;
  s.rhs = 0.5 * mod.K_r_comp / mod.K_r - 0.5 * exterior / ph_pi * mod.K_rho_comp / mod.K_rho +
          cplx{0.0, alpha / std::numbers::pi};
  return s;
}

BoundaryResidual full_residual(double alpha, double normal_angle, const FunctionalSpec& spec, const EvalPoint& pt,
                               const ProblemConfig& cfg, const ProblemModuli& mod, const BranchSigns& signs,
                               const BranchReference* ref) {
  BoundaryResidual out;
  out.gp = pq(spec, pt, normal_angle);
  out.terms = curve_terms(alpha, out.gp.p, out.gp.q, pt, cfg, mod, signs, ref);
  out.C1 = out.gp.p * pt.w1 + out.gp.q * pt.w2;
  out.values = {out.terms.A.imag(),        out.terms.B.imag(), out.terms.residual.real(),
                out.terms.residual.imag(), out.C1.real(),      out.C1.imag()};
  return out;
}

}  // namespace nov
