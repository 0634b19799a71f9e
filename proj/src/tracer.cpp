#include "nonoverlap/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "nonoverlap/error.hpp"

namespace nov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kUnknowns = 5;
constexpr int kMaxSubdivision = 5;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Evaluation {
  BoundaryResidual res;
  Vec F;
  double norm2;
  double maxnorm;
  double alpha;  // representative used in the equation
};

Vec pack(const SolverState& s) {
  Vec x(kUnknowns);
  x << s.w1.real(), s.w1.imag(), s.w2.real(), s.w2.imag(), s.normal_angle;
  return x;
}

SolverState unpack(const Vec& x) { return {{x[0], x[1]}, {x[2], x[3]}, x[4]}; }

// For functionals invariant under (f, F) -> (l f, l F) the unknowns carry a
// complex scaling gauge; fix it by w2 = rho.
void fix_gauge(SolverState& s, const FunctionalSpec& spec, const ProblemConfig& cfg) {
  if (!spec.scale_invariant() || s.w2 == cplx{}) return;
  s.w1 *= cfg.rho / s.w2;
  s.w2 = cfg.rho;
}

struct Context {
  double alpha;
  const FunctionalSpec& spec;
  const ProblemConfig& cfg;
  const ProblemModuli& mod;
  const TraceOptions& opts;
};

Evaluation evaluate_at(double alpha, const Context& ctx, const SolverState& s, const BranchSigns& signs,
                       const BranchReference* ref) {
  Evaluation e;
  e.res = full_residual(alpha, s.normal_angle, ctx.spec, {s.w1, s.w2}, ctx.cfg, ctx.mod, signs, ref);
  e.F = Eigen::Map<const Vec>(e.res.values.data(), 6);
  for (double v : e.res.values)
    if (!std::isfinite(v)) throw Error(ErrorCode::Degenerate, "residual not finite");
  e.norm2 = e.F.norm();
  e.maxnorm = e.F.cwiseAbs().maxCoeff();
  e.alpha = alpha;
  return e;
}

// At alpha = pi the principal forms sit on the cut of k'; both one-sided
// representatives +-pi describe the same point and the closer one is used.
Evaluation evaluate(const Context& ctx, const SolverState& s, const BranchSigns& signs,
                    const BranchReference* ref) {
  const double rep = equation_alpha(ctx.alpha);
  if (std::abs(rep) != std::numbers::pi) return evaluate_at(rep, ctx, s, signs, ref);
  std::optional<Evaluation> best;
  for (double a : {std::numbers::pi, -std::numbers::pi}) {
    try {
      Evaluation e = evaluate_at(a, ctx, s, signs, ref);
      if (!best || e.norm2 < best->norm2) best = std::move(e);
    } catch (const Error&) {
    }
  }
  if (!best) throw Error(ErrorCode::Branch, "residual undefined on both sides of the cut");
  return *best;
}

BranchReference reference_of(const CurveTerms& t) { return {t.sqrt_a, t.sqrt_b, t.connecting}; }

const char* sign_word(cplx aligned, cplx principal) {
  return (aligned * std::conj(principal)).real() >= 0.0 ? "principal" : "negated";
}

BoundaryPoint newton(const Context& ctx, SolverState x, BranchReference ref) {
  const TraceOptions& opts = ctx.opts;
  fix_gauge(x, ctx.spec, ctx.cfg);
  Evaluation e;
  try {
    e = evaluate(ctx, x, {}, &ref);
  } catch (const Error& err) {
    throw Error(ErrorCode::NoConvergence, std::string("residual undefined at initial guess: ") + err.what());
  }
  ref = reference_of(e.res.terms);

  // Two extra iterations past the tolerance, kept only while they still
  // decrease the residual.
  int polish = 0;
  for (int it = 0; it < opts.max_iterations && (e.maxnorm > opts.solver_tol || polish < 2); ++it) {
    if (e.maxnorm <= opts.solver_tol) ++polish;
    const Vec x0 = pack(x);
    Mat J(6, kUnknowns);
    for (int j = 0; j < kUnknowns; ++j) {
      const double scale = j < 2 ? std::abs(x.w1) : j < 4 ? std::abs(x.w2) : 1.0;
      double h = 1e-7 * std::max(std::abs(x0[j]), scale);
      bool ok = false;
      for (int attempt = 0; attempt < 2 && !ok; ++attempt, h = -h) {
        Vec xp = x0;
        xp[j] += h;
        try {
          J.col(j) = (evaluate(ctx, unpack(xp), {}, &ref).F - e.F) / h;
          ok = true;
        } catch (const Error&) {
        }
      }
      if (!ok) throw Error(ErrorCode::NoConvergence, "Jacobian undefined at iterate");
    }

    Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-6);
    const Vec dx = -svd.solve(e.F);

    double lambda = 1.0;
    bool accepted = false;
    SolverState trial;
    Evaluation next;
    for (int ls = 0; ls < 40; ++ls, lambda *= 0.5) {
      trial = unpack(x0 + lambda * dx);
      fix_gauge(trial, ctx.spec, ctx.cfg);
      try {
        next = evaluate(ctx, trial, {}, &ref);
      } catch (const Error&) {
        continue;
      }
      if (next.norm2 * next.norm2 <= (1.0 - 2e-4 * lambda) * e.norm2 * e.norm2) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    const double step = (pack(trial) - x0).cwiseAbs().maxCoeff();
    x = trial;
    e = next;
    ref = reference_of(e.res.terms);
    if (step <= opts.step_tol * (1.0 + x0.cwiseAbs().maxCoeff())) break;
  }

  if (!(e.maxnorm <= opts.accept_tol))
    throw Error(ErrorCode::NoConvergence, "Newton did not reduce the residual below the acceptance tolerance");

  const CurveTerms& t = e.res.terms;
  const double scale = 1e-9 * (1.0 + std::abs(t.A) + std::abs(t.B));
  if (!(t.A.real() > 0.0 && t.B.real() > 0.0) || std::abs(t.A.imag()) > scale || std::abs(t.B.imag()) > scale)
    throw Error(ErrorCode::InvalidBoundary, "converged point violates A > 0, B > 0");

  BoundaryPoint pt;
  pt.alpha = ctx.alpha;
  pt.equation_alpha = e.alpha;
  pt.normal_angle = normalize_angle(x.normal_angle);
  pt.w1 = x.w1;
  pt.w2 = x.w2;
  pt.A = t.A.real();
  pt.B = t.B.real();
  pt.I0 = eval_functional(ctx.spec, {x.w1, x.w2});
  pt.residual_norm = e.maxnorm;
  pt.branch = ref;
  const CurveTerms principal = curve_terms(e.alpha, e.res.gp.p, e.res.gp.q, {x.w1, x.w2}, ctx.cfg, ctx.mod);
  pt.branch_log = {std::string("sqrt_a:") + sign_word(t.sqrt_a, principal.sqrt_a),
                   std::string("sqrt_b:") + sign_word(t.sqrt_b, principal.sqrt_b),
                   std::string("connecting:") + sign_word(t.connecting, principal.connecting)};
  return pt;
}

BoundaryPoint seed(const Context& ctx) {
  struct Candidate {
    double score;
    SolverState state;
    BranchSigns signs;
  };
  std::vector<Candidate> cands;
  const double r = ctx.cfg.r, rho = ctx.cfg.rho;
  for (int i1 = 0; i1 < 7; ++i1) {
    const double m1 = r * 0.01 * std::pow(150.0, i1 / 6.0);
    for (double f2 : {0.5, 1.0, 2.0}) {
      for (int a1 = 0; a1 < 8; ++a1) {
        for (int a2 = 0; a2 < 4; ++a2) {
          const SolverState base{std::polar(m1, kTwoPi * a1 / 8.0), std::polar(f2 * rho, kTwoPi * a2 / 4.0), 0.0};
          for (int ps = 0; ps < 8; ++ps) {
            SolverState s = base;
            s.normal_angle = kTwoPi * ps / 8.0;
            for (int sa : {1, -1}) {
              for (int sb : {1, -1}) {
                const BranchSigns signs{sa, sb};
                try {
                  const Evaluation e = evaluate(ctx, s, signs, nullptr);
                  cands.push_back({e.norm2, s, signs});
                } catch (const Error&) {
                }
              }
            }
          }
        }
      }
    }
  }
  const std::size_t keep = std::min<std::size_t>(8, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + static_cast<long>(keep), cands.end(),
                    [](const Candidate& a, const Candidate& b) { return a.score < b.score; });
  std::string last_error = "no candidate with a defined residual";
  for (std::size_t i = 0; i < keep; ++i) {
    try {
      SolverState s = cands[i].state;
      fix_gauge(s, ctx.spec, ctx.cfg);
      const Evaluation e = evaluate(ctx, s, cands[i].signs, nullptr);
      BoundaryPoint pt = newton(ctx, s, reference_of(e.res.terms));
      pt.branch_log.push_back("seed signs sqrt_a=" + std::to_string(cands[i].signs.sqrt_a) +
                              " sqrt_b=" + std::to_string(cands[i].signs.sqrt_b));
      return pt;
    } catch (const Error& err) {
      last_error = err.what();
    }
  }
  throw Error(ErrorCode::NoConvergence, "seed search failed: " + last_error);
}

double unwrap_near(double angle, double reference) {
  return angle + kTwoPi * std::round((reference - angle) / kTwoPi);
}

SolverState state_of(const BoundaryPoint& p) { return {p.w1, p.w2, p.normal_angle}; }

// Linear prediction through (a, b) evaluated at alpha; psi unwrapped.
SolverState predict(const BoundaryPoint& a, const BoundaryPoint* before, double alpha) {
  SolverState s = state_of(a);
  if (!before) return s;
  const double t = (alpha - a.alpha) / (a.alpha - before->alpha);
  const double psi_b = unwrap_near(before->normal_angle, a.normal_angle);
  s.w1 = a.w1 + (a.w1 - before->w1) * t;
  s.w2 = a.w2 + (a.w2 - before->w2) * t;
  s.normal_angle = a.normal_angle + (a.normal_angle - psi_b) * t;
  return s;
}

BoundaryPoint advance(const FunctionalSpec& spec, const ProblemConfig& cfg, const ProblemModuli& mod,
                      const TraceOptions& opts, const BoundaryPoint& from, const BoundaryPoint* before,
                      double alpha, int depth = 0) {
  const Context ctx{alpha, spec, cfg, mod, opts};
  try {
    return newton(ctx, predict(from, before, alpha), from.branch);
  } catch (const Error&) {
    if (depth >= kMaxSubdivision) throw;
  }
  const double mid = 0.5 * (from.alpha + alpha);
  const BoundaryPoint m = advance(spec, cfg, mod, opts, from, before, mid, depth + 1);
  return advance(spec, cfg, mod, opts, m, &from, alpha, depth + 1);
}

double diameter_of(const std::vector<BoundaryPoint>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i].I0 - pts[j].I0));
  return d;
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double segment_point_distance(cplx a, cplx b, cplx p) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  double t = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace

double equation_alpha(double alpha) noexcept {
  return alpha - kTwoPi * std::round(alpha / kTwoPi);
}

BoundaryPoint solve_boundary_point(double alpha, const FunctionalSpec& spec, const ProblemConfig& cfg,
                                   const SolverState& guess, const BranchReference& ref, const TraceOptions& opts) {
  const ProblemModuli mod(cfg);
  return newton({alpha, spec, cfg, mod, opts}, guess, ref);
}

BoundaryPoint seed_boundary_point(double alpha, const FunctionalSpec& spec, const ProblemConfig& cfg,
                                  const TraceOptions& opts) {
  const ProblemModuli mod(cfg);
  return seed({alpha, spec, cfg, mod, opts});
}

TraceResult trace_curve(const FunctionalSpec& spec, const std::string& functional_text, const ProblemConfig& cfg,
                        const TraceOptions& opts) {
  const ProblemModuli mod(cfg);
  if (opts.steps < 8) throw Error(ErrorCode::Config, "alpha_steps must be at least 8");
  TraceResult out;
  out.functional = functional_text;
  out.config = cfg;
  out.steps = opts.steps;
  const int n = opts.steps;
  auto grid = [n](int j) { return kTwoPi * j / n; };

  int first = 0;
  for (; first < n; ++first) {
    try {
      out.points.push_back(seed({grid(first), spec, cfg, mod, opts}));
      break;
    } catch (const Error& err) {
      out.failures.push_back({grid(first), err.what()});
    }
  }
  auto check_abort = [&] {
    if (static_cast<double>(out.failures.size()) > opts.max_fail_fraction * n)
      throw Error(ErrorCode::TraceAbort, std::to_string(out.failures.size()) + " of " + std::to_string(n) +
                                             " grid angles failed; last: " + out.failures.back().reason);
  };
  if (out.points.empty()) {
    check_abort();
    throw Error(ErrorCode::TraceAbort, "no grid angle admits a seed solution");
  }

  for (int j = first + 1; j < n; ++j) {
    const BoundaryPoint& last = out.points.back();
    const BoundaryPoint* before = out.points.size() > 1 ? &out.points[out.points.size() - 2] : nullptr;
    try {
      BoundaryPoint p = advance(spec, cfg, mod, opts, last, before, grid(j));
      out.points.push_back(std::move(p));
    } catch (const Error& err) {
      out.failures.push_back({grid(j), err.what()});
      check_abort();
    }
  }
  check_abort();

  for (int level = 0; level < opts.refine_levels && out.points.size() >= 3; ++level) {
    std::vector<double> steps;
    for (std::size_t i = 0; i + 1 < out.points.size(); ++i)
      steps.push_back(std::abs(out.points[i + 1].I0 - out.points[i].I0));
    std::vector<double> sorted = steps;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    std::vector<BoundaryPoint> refined;
    bool changed = false;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      refined.push_back(out.points[i]);
      if (i + 1 == out.points.size() || !(steps[i] > opts.refine_factor * median)) continue;
      const BoundaryPoint& a = out.points[i];
      const BoundaryPoint& b = out.points[i + 1];
      const double mid = 0.5 * (a.alpha + b.alpha);
      SolverState guess{0.5 * (a.w1 + b.w1), 0.5 * (a.w2 + b.w2),
                        0.5 * (a.normal_angle + unwrap_near(b.normal_angle, a.normal_angle))};
      try {
        refined.push_back(newton({mid, spec, cfg, mod, opts}, guess, a.branch));
        changed = true;
      } catch (const Error& err) {
        out.failures.push_back({mid, std::string("refinement: ") + err.what()});
      }
    }
    out.points = std::move(refined);
    if (!changed) break;
  }

  out.diameter = diameter_of(out.points);
  const BoundaryPoint& start = out.points.front();
  try {
    const BoundaryPoint* before = out.points.size() > 1 ? &out.points[out.points.size() - 2] : nullptr;
    const BoundaryPoint wrap = advance(spec, cfg, mod, opts, out.points.back(), before, start.alpha + kTwoPi);
    out.closure_defect = std::abs(wrap.I0 - start.I0) / (out.diameter > 0.0 ? out.diameter : 1.0);
    out.closed = out.closure_defect <= opts.closure_tol;
  } catch (const Error& err) {
    out.closure_defect = INFINITY;
    out.closed = false;
    out.failures.push_back({start.alpha + kTwoPi, std::string("closure: ") + err.what()});
  }
  return out;
}

const char* containment_name(Containment c) noexcept {
  switch (c) {
    case Containment::Inside:
      return "inside";
    case Containment::Outside:
      return "outside";
    case Containment::NearBoundary:
      return "near-boundary";
  }
  return "unknown";
}

Containment contains(const TraceResult& trace, cplx point) {
  if (!trace.closed || trace.points.size() < 3) throw Error(ErrorCode::NotClosed, "trace is not closed");
  const auto& pts = trace.points;
  const std::size_t n = pts.size();
  const double band = 1e-6 * trace.diameter;
  int winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = pts[i].I0, b = pts[(i + 1) % n].I0;
    if (segment_point_distance(a, b, point) <= band) return Containment::NearBoundary;
    const double side = cross(b - a, point - a);
    if (a.imag() <= point.imag()) {
      if (b.imag() > point.imag() && side > 0) ++winding;
    } else if (b.imag() <= point.imag() && side < 0) {
      --winding;
    }
  }
  return winding != 0 ? Containment::Inside : Containment::Outside;
}

int polyline_self_intersections(const std::vector<cplx>& v) {
  const std::size_t n = v.size();
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing segment
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) ++count;
    }
  }
  return count;
}

}  // namespace nov
