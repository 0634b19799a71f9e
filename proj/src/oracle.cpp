#include "nonoverlap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <json.hpp>

#include "nonoverlap/elliptic.hpp"
#include "nonoverlap/error.hpp"

namespace nov {

namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

// sqrt(t - s) continued along a straight path from t0 towards t1 (or along
// the ray t0 + [0, inf) when `ray`). Rotating by the mean argument of the
// endpoint values keeps the whole path inside the principal domain.
struct LinearRoot {
  cplx s;
  cplx rot;   // e^{-i theta}
  cplx half;  // e^{i theta/2}

  LinearRoot(cplx s_, double t0, double t1, bool ray) : s(s_) {
    const cplx v0 = t0 - s;
    const cplx v1 = ray ? cplx{1.0, 0.0} : t1 - s;
    double theta;
    if (v0 == cplx{})
      theta = std::arg(v1);
    else if (v1 == cplx{})
      theta = std::arg(v0);
    else
      theta = std::arg(v0) + 0.5 * std::arg(v1 / v0);
    rot = std::polar(1.0, -theta);
    half = std::polar(1.0, 0.5 * theta);
  }
  cplx operator()(cplx diff) const { return std::sqrt(diff * rot) * half; }
};

double segment_distance(cplx z) {
  const double x = std::clamp(z.real(), 0.0, 1.0);
  return std::abs(z - x);
}

double ray_distance(cplx z) {
  const double x = std::max(z.real(), 1.0);
  return std::abs(z - x);
}

void guard(double dist, const char* what) {
  if (dist < kGuardMargin)
    throw Error(ErrorCode::GuardViolation, std::string(what) + " within guard margin of the integration path");
}

// The J closed form comes from u = b (1 - t) / (b - t), which carries the
// path t in [0, 1] onto an arc from u = 1 to u = 0. The Legendre integral runs
// along the real segment instead, so the two agree only if the loop they form
// winds around neither the branch point 1/k^2 nor the pole b.
int substitution_winding(cplx b, cplx z) {
  constexpr int kSamples = 2048;
  double turn = 0.0;
  cplx prev = 1.0 - z;
  auto step = [&](cplx u) {
    turn += std::arg((u - z) / prev);
    prev = u - z;
  };
  for (int i = 1; i <= kSamples; ++i) {
    const double t = static_cast<double>(i) / kSamples;
    step(b * (1.0 - t) / (b - t));
  }
  for (int i = 1; i <= kSamples; ++i) step(static_cast<double>(i) / kSamples);
  return static_cast<int>(std::lround(turn / (2.0 * kPi)));
}

void guard_J_substitution(const ReductionConstants& rc) {
  if (rc.C1 == cplx{}) return;
  if (substitution_winding(rc.b, 1.0 / (rc.k * rc.k)) != 0 || substitution_winding(rc.b, rc.b) != 0)
    throw Error(ErrorCode::GuardViolation, "substitution path and Legendre path enclose a singular point");
}

// Common radicand of the three reductions in the variable t = w / scale:
//   sqrt((C1 w - C2) / (w (w - w1)(w - w2))) dw
//     = scale^{-1/2} sqrt(C1 scale) sqrt(t - b_t) / (sqrt(t) sqrt(t - u1) sqrt(t - u2)) dt
// where u1, u2 = w1/scale, w2/scale and one of them is exactly 1.
struct Radicand {
  cplx prefactor;
  bool has_numerator;
  cplx b_t;
  cplx interior;  // the u_i that is not 1
};

Radicand make_radicand(const ReductionConstants& rc, cplx scale, cplx interior) {
  Radicand rad;
  rad.has_numerator = rc.C1 != cplx{};
  rad.interior = interior;
  if (rad.has_numerator) {
    rad.b_t = rc.C2 / (rc.C1 * scale);
    rad.prefactor = std::sqrt(rc.C1 * scale) / std::sqrt(scale);
  } else {
    rad.prefactor = std::sqrt(-rc.C2) / std::sqrt(scale);
  }
  return rad;
}

// Integral over t in [0, 1]; t = 1 is a singular endpoint.
cplx quad_unit_segment(const Radicand& rad, const QuadOptions& opts) {
  const LinearRoot at0(0.0, 0.0, 1.0, false);
  const LinearRoot at1(1.0, 0.0, 1.0, false);
  const LinearRoot inner(rad.interior, 0.0, 1.0, false);
  const LinearRoot num(rad.has_numerator ? rad.b_t : cplx{}, 0.0, 1.0, false);
  auto f = [&](double t, double from_a, double to_b) {
    cplx v = rad.prefactor / (at0(from_a) * at1(-to_b) * inner(t - rad.interior));
    if (rad.has_numerator) v *= num(t - rad.b_t);
    return v;
  };
  return quad_singular(f, 0.0, 1.0, opts).value;
}

// Integral over t in [1, inf) after t = 1/x, x in (0, 1].
cplx quad_unit_ray(const Radicand& rad, const QuadOptions& opts) {
  const LinearRoot at0(0.0, 1.0, 0.0, true);
  const LinearRoot at1(1.0, 1.0, 0.0, true);
  const LinearRoot inner(rad.interior, 1.0, 0.0, true);
  const LinearRoot num(rad.has_numerator ? rad.b_t : cplx{}, 1.0, 0.0, true);
  auto f = [&](double, double x, double to_one) {
    const double t = 1.0 / x;
    cplx v = rad.prefactor / (at0(t) * at1(to_one / x) * inner(t - rad.interior));
    if (rad.has_numerator) v *= num(t - rad.b_t);
    return v / (x * x);
  };
  return quad_singular(f, 0.0, 1.0, opts).value;
}

cplx random_square(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double re = unit(rng);
  const double im = unit(rng);
  return {re, im};
}

cplx random_disk(std::mt19937_64& rng, double radius) {
  for (;;) {
    const cplx z = random_square(rng);
    if (std::abs(z) <= 1.0) return radius * z;
  }
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

OracleCheck compare_modulo_sign(cplx quad, cplx closed) {
  OracleCheck c{quad, closed, 1, 0.0};
  const double plus = std::abs(quad - closed);
  const double minus = std::abs(quad + closed);
  c.sign = (minus < plus) ? -1 : 1;
  const double diff = std::min(plus, minus);
  const double scale = std::abs(closed);
  c.rel_error = (diff == 0.0) ? 0.0 : diff / (scale > 0.0 ? scale : 1e-300);
  return c;
}

OracleCheck compare_direct(cplx quad, cplx closed) {
  const double scale = std::abs(closed);
  const double diff = std::abs(quad - closed);
  return {quad, closed, 1, diff == 0.0 ? 0.0 : diff / (scale > 0.0 ? scale : 1e-300)};
}

BranchTracker::BranchTracker(std::function<cplx(double)> radicand, int samples)
    : g_(std::move(radicand)), tracked_(static_cast<std::size_t>(samples) + 1) {
  cplx prev = std::sqrt(g_(0.0));
  tracked_[0] = prev;
  for (int i = 1; i <= samples; ++i) {
    cplx v = std::sqrt(g_(static_cast<double>(i) / samples));
    if (std::abs(v - prev) > std::abs(v + prev)) v = -v;
    tracked_[static_cast<std::size_t>(i)] = prev = v;
  }
}

cplx BranchTracker::sqrt_at(double s) const {
  const double n = static_cast<double>(tracked_.size() - 1);
  const auto i = static_cast<std::size_t>(std::lround(std::clamp(s, 0.0, 1.0) * n));
  const cplx v = std::sqrt(g_(s));
  const cplx ref = tracked_[i];
  return (std::abs(v - ref) > std::abs(v + ref)) ? -v : v;
}

namespace {

// int_0^phi dt / ((1 + n sin^2 t) sqrt(1 - k^2 sin^2 t)) along t = phi s.
QuadResult legendre_quad(cplx phi, cplx n, cplx k, const QuadOptions& opts) {
  const cplx k2 = k * k;
  auto sin2 = [phi](double s) {
    const cplx v = std::sin(phi * s);
    return v * v;
  };
  BranchTracker root([&](double s) { return 1.0 - k2 * sin2(s); });
  auto f = [&](double s, double, double) {
    const cplx s2 = sin2(s);
    return phi / ((1.0 + n * s2) * root.sqrt_at(s));
  };
  if (phi == cplx{}) return {};
  return quad_singular(f, 0.0, 1.0, opts);
}

}  // namespace

QuadResult quad_K(cplx k, const QuadOptions& opts) { return legendre_quad(kPi / 2, 0.0, k, opts); }
QuadResult quad_F(cplx phi, cplx k, const QuadOptions& opts) { return legendre_quad(phi, 0.0, k, opts); }
QuadResult quad_Pi_complete(cplx n, cplx k, const QuadOptions& opts) { return legendre_quad(kPi / 2, n, k, opts); }
QuadResult quad_Pi_incomplete(cplx phi, cplx n, cplx k, const QuadOptions& opts) {
  return legendre_quad(phi, n, k, opts);
}

double elliptic_path_clearance(cplx phi, cplx n, cplx k) {
  double best = std::numeric_limits<double>::infinity();
  constexpr int kSamples = 1024;
  for (int i = 0; i <= kSamples; ++i) {
    const cplx sn = std::sin(phi * (static_cast<double>(i) / kSamples));
    const cplx s2 = sn * sn;
    // Both factors stay off the cut (-inf, 0] as well as away from zero: the
    // square root must keep its principal sheet and the closed forms are
    // discontinuous where 1 + n sin^2 crosses it.
    auto cut = [](cplx z) { return z.real() >= 0.0 ? std::abs(z) : std::abs(z.imag()); };
    best = std::min({best, cut(1.0 - k * k * s2), cut(1.0 + n * s2)});
  }
  return best;
}

OracleCheck check_J_reduction(cplx p, cplx q, const EvalPoint& pt, const QuadOptions& opts) {
  const ReductionConstants rc = derive_constants(p, q, pt);
  const Radicand rad = make_radicand(rc, pt.w1, rc.c_star);
  if (rad.has_numerator) guard(segment_distance(rad.b_t), "b");
  guard(segment_distance(rc.c_star), "1/c");
  guard_J_substitution(rc);
  const cplx quad = quad_unit_segment(rad, opts);
  return compare_modulo_sign(quad, -2.0 * p * rc.h * ellip_Pi_complete(rc.n, rc.k));
}

OracleCheck check_L_reduction(cplx p, cplx q, const EvalPoint& pt, const QuadOptions& opts) {
  ReductionConstants rc = derive_constants(p, q, pt);
  if (!rc.c1_vanishes)
    throw Error(ErrorCode::GuardViolation, "L integral diverges at infinity unless C1 = 0");
  // A rounding-level C1 still feeds a sqrt(C1) log(C2/C1) tail of order 1e-7,
  // so both sides are taken at the exact C1 = 0 limit (amplitude pi/2).
  constexpr double inf = std::numeric_limits<double>::infinity();
  rc.C1 = 0.0;
  rc.a = rc.a_star = 0.0;
  rc.b = rc.b_star = cplx{inf, 0.0};
  rc.n = rc.n_star = 0.0;
  rc.l = 0.0;
  rc.cos2_phi = 0.0;
  const Radicand rad = make_radicand(rc, pt.w2, rc.c);
  if (rad.has_numerator) guard(ray_distance(rad.b_t), "b*");
  guard(ray_distance(rc.c), "1/c*");
  const cplx quad = quad_unit_ray(rad, opts);
  cplx closed = -rc.h0 * ellip_F_sc(rc.sin_phi, rc.cos2_phi, rc.k);
  if (rc.l != cplx{}) closed += rc.l * ellip_Pi_sc(rc.sin_phi, rc.cos2_phi, rc.m, rc.k);
  return compare_modulo_sign(quad, 2.0 * closed);
}

OracleCheck check_T_reduction(cplx p, cplx q, const EvalPoint& pt, const QuadOptions& opts) {
  const ReductionConstants rc = derive_constants(p, q, pt);
  const Radicand rad = make_radicand(rc, pt.w2, rc.c);
  guard(segment_distance(rc.c), "c");
  if (rad.has_numerator) {
    guard(segment_distance(rad.b_t), "b*");
    if (rad.b_t.imag() * rc.c.imag() < 0.0)
      throw Error(ErrorCode::GuardViolation, "b* and c on opposite sides of the integration path");
  }
  const cplx quad = quad_unit_segment(rad, opts);
  return compare_modulo_sign(quad, cplx{0.0, 2.0} * q * rc.h_star * ellip_Pi_complete(rc.n_star, rc.k_prime));
}

OracleCheck check_T1(const ProblemConfig& cfg, const QuadOptions& opts) {
  cfg.validate();
  const double r = cfg.r;
  // z = -1 + from_a, |z| = to_b
  auto f = [r](double, double, double to_b) {
    const double z = -to_b;
    return 1.0 / std::sqrt(cplx{z * (r - z) * (1.0 - r * z), 0.0});
  };
  const cplx quad = quad_singular(f, -1.0, 0.0, opts).value;
  return compare_modulo_sign(quad, cplx{0.0, -1.0} * ellip_K(std::sqrt(1.0 - r * r)));
}

OracleCheck check_T2(const ProblemConfig& cfg, double alpha, const QuadOptions& opts) {
  cfg.validate();
  const double r = cfg.r;
  const cplx closed = -(2.0 * alpha / kPi) * ellip_K(r);
  if (alpha == 0.0) return compare_modulo_sign(0.0, closed);
  auto z_at = [alpha](double s) { return -std::polar(1.0, alpha * s); };
  BranchTracker root([&](double s) {
    const cplx z = z_at(s);
    return z * (r - z) * (1.0 - r * z);
  });
  auto f = [&](double s, double, double) {
    const cplx dz = cplx{0.0, -alpha} * std::polar(1.0, alpha * s);
    return dz / root.sqrt_at(s);
  };
  return compare_modulo_sign(quad_singular(f, 0.0, 1.0, opts).value, closed);
}

cplx arc_integral_landen(double r, double alpha) {
  return -(2.0 / (1.0 + r)) * ellip_F(alpha / 2.0, 2.0 * std::sqrt(r) / (1.0 + r));
}

OracleCheck check_T3(const ProblemConfig& cfg, const QuadOptions& opts) {
  cfg.validate();
  const double rho = cfg.rho;
  auto f = [rho](double, double from_a, double to_b) {
    const double z = 1.0 + from_a;
    return 1.0 / std::sqrt(cplx{z * to_b * (1.0 - rho * z), 0.0});
  };
  const cplx quad = quad_singular(f, 1.0, rho, opts).value;
  return compare_modulo_sign(quad, cplx{0.0, 1.0 / rho} * ellip_K(std::sqrt(1.0 - 1.0 / (rho * rho))));
}

OracleCheck check_anchor(const ProblemConfig& cfg, const QuadOptions& opts) {
  cfg.validate();
  const double r = cfg.r;
  auto f = [r](double, double from_a, double to_b) {
    return cplx{1.0 / std::sqrt(from_a * to_b * (1.0 - r * from_a)), 0.0};
  };
  const cplx quad = quad_singular(f, 0.0, r, opts).value;
  return compare_direct(quad, 2.0 * ellip_K(r));
}

std::vector<ReductionTuple> admissible_tuples(ReductionKind kind, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ReductionTuple> out;
  const long max_attempts = 200L * std::max(count, 1);
  for (long attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < count; ++attempt) {
    ReductionTuple t;
    t.p = random_square(rng);
    t.q = random_square(rng);
    t.pt.w1 = 0.5 * random_square(rng);
    t.pt.w2 = 2.0 * random_square(rng);
    if (kind == ReductionKind::L) t.q = -t.p * t.pt.w1 / t.pt.w2;
    try {
      const ReductionConstants rc = derive_constants(t.p, t.q, t.pt);
      switch (kind) {
        case ReductionKind::J:
          if (rc.C1 != cplx{}) guard(segment_distance(rc.C2 / (rc.C1 * t.pt.w1)), "b");
          guard(segment_distance(rc.c_star), "1/c");
          guard_J_substitution(rc);
          break;
        case ReductionKind::L:
          if (!rc.c1_vanishes) continue;
          guard(ray_distance(rc.c), "1/c*");
          break;
        case ReductionKind::T: {
          guard(segment_distance(rc.c), "c");
          const cplx bs = rc.C2 / (rc.C1 * t.pt.w2);
          guard(segment_distance(bs), "b*");
          if (bs.imag() * rc.c.imag() < 0.0) continue;
          break;
        }
      }
      // Elliptic evaluation must be defined as well.
      ellip_Pi_complete(rc.n, rc.k);
      ellip_Pi_complete(rc.n_star, rc.k_prime);
    } catch (const Error&) {
      continue;
    }
    out.push_back(t);
  }
  return out;
}

std::vector<EllipticArgs> safe_elliptic_args(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<EllipticArgs> out;
  while (static_cast<int>(out.size()) < count) {
    EllipticArgs a;
    a.k = random_disk(rng, 0.9);
    a.n = random_disk(rng, 0.9);
    a.phi = random_disk(rng, kPi / 2);
    if (elliptic_path_clearance(a.phi, a.n, a.k) < 0.05) continue;
    if (elliptic_path_clearance(kPi / 2, a.n, a.k) < 0.05) continue;
    out.push_back(a);
  }
  return out;
}

std::string VerifyReport::to_json() const {
  json checks = json::array();
  for (const auto& e : entries) {
    checks.push_back({{"check", e.check},
                      {"params", json::parse(e.params)},
                      {"quad", cjson(e.result.quad)},
                      {"closed", cjson(e.result.closed)},
                      {"sign", e.result.sign},
                      {"rel_error", e.result.rel_error},
                      {"tolerance", e.tolerance},
                      {"passed", e.passed}});
  }
  json doc = {{"all_passed", all_passed}, {"checks", checks}};
  return doc.dump(2);
}

VerifyReport run_verification(const ProblemConfig& cfg, const VerifyOptions& opts) {
  cfg.validate();
  VerifyReport report;
  auto add = [&](const std::string& name, const json& params, const OracleCheck& c, double tol) {
    const bool ok = c.rel_error <= tol;
    report.entries.push_back({name, params.dump(), c, tol, ok});
    report.all_passed = report.all_passed && ok;
  };
  auto add_error = [&](const std::string& name, json params, const Error& err, double tol) {
    params["error"] = err.what();
    params["error_code"] = error_code_name(err.code());
    report.entries.push_back({name, params.dump(), OracleCheck{0.0, 0.0, 1, INFINITY}, tol, false});
    report.all_passed = false;
  };

  const json cfg_params = {{"r", cfg.r}, {"rho", cfg.rho}};
  add("anchor", cfg_params, check_anchor(cfg), opts.anchor_tolerance);
  add("T1", cfg_params, check_T1(cfg), opts.base_tolerance);
  for (double alpha : {0.0, kPi / 2, kPi}) {
    json params = cfg_params;
    params["alpha"] = alpha;
    const OracleCheck c = check_T2(cfg, alpha);
    params["landen"] = cjson(arc_integral_landen(cfg.r, alpha));
    add("T2", params, c, opts.base_tolerance);
  }
  add("T3", cfg_params, check_T3(cfg), opts.base_tolerance);

  const std::pair<ReductionKind, const char*> kinds[] = {
      {ReductionKind::J, "J_reduction"}, {ReductionKind::L, "L_reduction"}, {ReductionKind::T, "T_reduction"}};
  std::uint64_t salt = 0;
  for (auto [kind, name] : kinds) {
    const auto tuples = admissible_tuples(kind, opts.tuples, opts.seed + 1000 * ++salt);
    for (const auto& t : tuples) {
      const json params = {{"p", cjson(t.p)}, {"q", cjson(t.q)}, {"w1", cjson(t.pt.w1)}, {"w2", cjson(t.pt.w2)}};
      try {
        OracleCheck c = kind == ReductionKind::J   ? check_J_reduction(t.p, t.q, t.pt)
                        : kind == ReductionKind::L ? check_L_reduction(t.p, t.q, t.pt)
                                                   : check_T_reduction(t.p, t.q, t.pt);
        add(name, params, c, opts.tolerance);
      } catch (const Error& err) {
        add_error(name, params, err, opts.tolerance);
      }
    }
  }

  const QuadOptions tight;
  for (const auto& a : safe_elliptic_args(opts.elliptic_args, opts.seed + 7)) {
    const json params = {{"phi", cjson(a.phi)}, {"n", cjson(a.n)}, {"k", cjson(a.k)}};
    try {
      add("K", params, compare_direct(quad_K(a.k, tight).value, ellip_K(a.k)), opts.base_tolerance);
      add("F", params, compare_direct(quad_F(a.phi, a.k, tight).value, ellip_F(a.phi, a.k)),
          opts.base_tolerance);
      add("Pi_complete", params,
          compare_direct(quad_Pi_complete(a.n, a.k, tight).value, ellip_Pi_complete(a.n, a.k)),
          opts.base_tolerance);
      add("Pi_incomplete", params,
          compare_direct(quad_Pi_incomplete(a.phi, a.n, a.k, tight).value,
                              ellip_Pi_incomplete(a.phi, a.n, a.k)),
          opts.base_tolerance);
    } catch (const Error& err) {
      add_error("elliptic", params, err, opts.base_tolerance);
    }
  }
  return report;
}

}  // namespace nov
