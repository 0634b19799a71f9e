// Acceptance gate. `acceptance N` runs criterion N; no argument runs all.
// One PASS/FAIL line per criterion; exit status 1 if any selected one fails.
#include <array>
#include <chrono>
#include <cstdlib>
#include <optional>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nonoverlap/elliptic.hpp"
#include "nonoverlap/error.hpp"
#include "nonoverlap/functional.hpp"
#include "nonoverlap/oracle.hpp"
#include "nonoverlap/output.hpp"
#include "nonoverlap/reduction.hpp"
#include "nonoverlap/sampler.hpp"
#include "nonoverlap/tracer.hpp"

using namespace nov;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds; 0 means none
  std::function<Outcome()> body;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const FunctionalSpec& quotient() {
  static const FunctionalSpec s = parse_functional("w1/w3");
  return s;
}

const TraceResult& default_trace() {
  static const TraceResult t = trace_curve(quotient(), "w1/w3", ProblemConfig{});
  return t;
}

Outcome kernel_identities() {
  double worst = 0.0;
  const cplx ks[] = {0.0, 0.3, 0.5, 0.9, {0.2, 0.3}, {0.0, 0.7}, {-0.4, 0.1}};
  worst = std::max(worst, rel(ellip_K(0.0), pi / 2));
  for (cplx k : ks) {
    worst = std::max(worst, rel(ellip_Pi_complete(0.0, k), ellip_K(k)));
    worst = std::max(worst, rel(ellip_F(pi / 2, k), ellip_K(k)));
    worst = std::max(worst, rel(ellip_Pi_incomplete(pi / 2, 0.0, k), ellip_K(k)));
  }
  for (cplx x : {cplx{0.25}, cplx{1.0}, cplx{4.0}, cplx{0.3, 0.4}, cplx{2.0, -1.0}})
    worst = std::max(worst, rel(carlson_rf(x, x, x), 1.0 / std::sqrt(x)));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.05, 3.0), ph(-2.5, 2.5);
  for (int i = 0; i < 200; ++i) {
    const cplx x = std::polar(u(rng), ph(rng)), y = std::polar(u(rng), ph(rng)), z = u(rng);
    const double lam = u(rng) * 4.0;
    worst = std::max(worst, rel(carlson_rf(lam * x, lam * y, lam * z), carlson_rf(x, y, z) / std::sqrt(lam)));
  }
  return {worst <= 1e-12, "max error " + sci(worst)};
}

Outcome defining_integrals() {
  const auto args = safe_elliptic_args(500, 2);
  double worst = 0.0;
  int bad = 0;
  for (const EllipticArgs& a : args) {
    const double e[] = {
        rel(quad_K(a.k).value, ellip_K(a.k)),
        rel(quad_F(a.phi, a.k).value, ellip_F(a.phi, a.k)),
        rel(quad_Pi_complete(a.n, a.k).value, ellip_Pi_complete(a.n, a.k)),
        rel(quad_Pi_incomplete(a.phi, a.n, a.k).value, ellip_Pi_incomplete(a.phi, a.n, a.k)),
    };
    for (double x : e) {
      worst = std::max(worst, x);
      if (!(x <= 1e-9)) ++bad;
    }
  }
  return {args.size() >= 500 && bad == 0,
          std::to_string(args.size()) + " argument sets, " + std::to_string(bad) + " failures, max rel error " +
              sci(worst)};
}

Outcome reductions() {
  std::ostringstream log;
  bool pass = true;
  const std::pair<ReductionKind, const char*> kinds[] = {
      {ReductionKind::J, "J"}, {ReductionKind::L, "L"}, {ReductionKind::T, "T"}};
  for (auto [kind, name] : kinds) {
    double worst = 0.0;
    int bad = 0;
    for (const ReductionTuple& t : admissible_tuples(kind, 100, 3)) {
      double e;
      try {
        e = (kind == ReductionKind::J   ? check_J_reduction(t.p, t.q, t.pt)
             : kind == ReductionKind::L ? check_L_reduction(t.p, t.q, t.pt)
                                        : check_T_reduction(t.p, t.q, t.pt))
                .rel_error;
      } catch (const Error&) {
        e = 1e300;
      }
      worst = std::max(worst, e);
      if (!(e <= 1e-8)) ++bad;
    }
    pass = pass && bad == 0;
    log << name << " " << bad << "/100 bad (max " << sci(worst) << "); ";
  }
  int base_bad = 0, base_total = 0;
  double base_worst = 0.0;
  std::string first_bad;
  for (double r : {0.3, 0.5, 0.7})
    for (double rho : {1.5, 2.0, 3.0}) {
      const ProblemConfig cfg{r, rho};
      std::vector<std::pair<std::string, OracleCheck>> checks = {{"T1", check_T1(cfg)}, {"T3", check_T3(cfg)}};
      for (double a : {0.0, pi / 2, pi}) checks.push_back({"T2 alpha=" + sci(a), check_T2(cfg, a)});
      for (const auto& [name, c] : checks) {
        ++base_total;
        base_worst = std::max(base_worst, c.rel_error);
        if (!(c.rel_error <= 1e-9)) {
          ++base_bad;
          if (first_bad.empty())
            first_bad = name + " r=" + sci(r) + " rel " + sci(c.rel_error);
        }
      }
    }
  pass = pass && base_bad == 0;
  log << "base integrals " << base_bad << "/" << base_total << " bad";
  if (!first_bad.empty()) log << " (first: " << first_bad << ")";
  double anchor_worst = 0.0;
  for (double r : {0.3, 0.5, 0.7}) anchor_worst = std::max(anchor_worst, check_anchor({r, 2.0}).rel_error);
  pass = pass && anchor_worst <= 1e-10;
  log << "; anchor max " << sci(anchor_worst);
  return {pass, log.str()};
}

Outcome gradients() {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> nterms(1, 4), expo(-3, 3);
  std::uniform_real_distribution<double> u(-1.0, 1.0), mod(0.3, 1.5), ang(0.0, 2.0 * pi);
  double worst = 0.0;
  int made = 0;
  while (made < 100) {
    std::vector<Term> terms;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
      Term t{{u(rng), u(rng)}, {}};
      for (int& e : t.exponents) e = expo(rng);
      terms.push_back(t);
    }
    std::optional<FunctionalSpec> spec;
    try {
      spec.emplace(std::move(terms));
    } catch (const Error&) {
      continue;
    }
    ++made;
    const EvalPoint pt{std::polar(mod(rng), ang(rng)), std::polar(mod(rng), ang(rng))};
    const auto g = gradient(*spec, pt);
    const auto w0 = omega0(pt);
    auto J = [&](const std::array<cplx, 4>& w) {
      cplx s{};
      for (const Term& t : spec->terms()) {
        cplx v = t.coeff;
        for (int i = 0; i < 4; ++i) v *= std::pow(w[i], t.exponents[i]);
        s += v;
      }
      return s;
    };
    const double h = 1e-6;
    for (int i = 0; i < 4; ++i) {
      auto wp = w0, wm = w0;
      wp[i] += h;
      wm[i] -= h;
      const cplx fd = (J(wp) - J(wm)) / (2.0 * h);
      // Partials that vanish identically are compared on the scale of J.
      const double scale = std::max(std::abs(g[i]), 1e-3 * std::abs(J(w0)));
      worst = std::max(worst, std::abs(fd - g[i]) / std::max(scale, 1e-12));
    }
  }
  return {worst <= 1e-6, "100 functionals, max rel error " + sci(worst)};
}

Outcome solve_quality() {
  const auto t0 = std::chrono::steady_clock::now();
  const TraceResult& t = default_trace();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const ProblemConfig cfg;
  const ProblemModuli mod(cfg);
  const double frac = static_cast<double>(t.points.size()) / 360.0;
  double res_worst = 0.0, printed_worst = 0.0, imag_worst = 0.0;
  int bad = 0;
  for (const BoundaryPoint& p : t.points) {
    const EvalPoint pt{p.w1, p.w2};
    const BoundaryResidual r = full_residual(p.equation_alpha, p.normal_angle, quotient(), pt, cfg, mod, {}, &p.branch);
    double m = 0.0;
    for (double v : r.values) m = std::max(m, std::abs(v));
    res_worst = std::max({res_worst, m, p.residual_norm});
    const cplx A = r.terms.A, B = r.terms.B;
    const double imag_scale = 1e-9 * (1.0 + std::abs(A) + std::abs(B));
    imag_worst = std::max(imag_worst, std::max(std::abs(A.imag()), std::abs(B.imag())) / (1.0 + std::abs(A) + std::abs(B)));
    const CurveEquationSides s = curve_equation_sides(p.equation_alpha, r.gp.p, r.gp.q, pt, cfg, p.branch);
    const double printed = std::abs(s.lhs - s.rhs) / std::max(1.0, std::abs(s.lhs));
    printed_worst = std::max(printed_worst, printed);
    if (!(m <= 1e-9 && A.real() > 0.0 && B.real() > 0.0 && std::abs(A.imag()) <= imag_scale &&
          std::abs(B.imag()) <= imag_scale && printed <= 1e-8))
      ++bad;
  }
  const bool pass = frac >= 0.95 && bad == 0 && secs < 10.0;
  return {pass, std::to_string(t.points.size()) + "/360 converged, " + std::to_string(bad) +
                    " accepted points out of bounds, max residual " + sci(res_worst) + ", max |Im A|,|Im B| scaled " +
                    sci(imag_worst) + ", printed form max " + sci(printed_worst) + ", trace " + sci(secs) + " s"};
}

Outcome curve_sanity() {
  const TraceResult& t = default_trace();
  std::vector<cplx> v;
  for (const BoundaryPoint& p : t.points) v.push_back(p.I0);
  const int crossings = polyline_self_intersections(v);
  const TraceResult a = trace_curve(quotient(), "w1/w3", ProblemConfig{}, TraceOptions{.steps = 8});
  const TraceResult b = trace_curve(quotient(), "w1/w3", ProblemConfig{}, TraceOptions{.steps = 16});
  double grid = 1e300;
  if (a.points.size() == 8 && b.points.size() == 16) {
    grid = 0.0;
    for (std::size_t i = 0; i < 8; ++i) grid = std::max(grid, std::abs(a.points[i].I0 - b.points[2 * i].I0));
  }
  const bool pass = t.closed && t.closure_defect <= 1e-6 && crossings == 0 && grid <= 1e-8;
  return {pass, std::string(t.closed ? "closed" : "open") + ", defect " + sci(t.closure_defect) +
                    " x diameter, " + std::to_string(crossings) + " self-intersections, 8 vs 16 steps max |dI0| " +
                    sci(grid)};
}

Outcome symmetry() {
  const TraceResult& t = default_trace();
  double worst = 0.0;
  for (const BoundaryPoint& p : t.points) {
    double best = 1e300;
    for (const BoundaryPoint& q : t.points) best = std::min(best, std::abs(q.I0 - std::conj(p.I0)));
    worst = std::max(worst, best);
  }
  return {worst <= 1e-6, std::to_string(t.points.size()) + " points, max partner distance " + sci(worst)};
}

Outcome containment() {
  const auto t0 = std::chrono::steady_clock::now();
  const TraceResult& t = default_trace();
  const auto cloud = sample_cloud(quotient(), ProblemConfig{}, 10000, 20240601);
  int counts[3] = {0, 0, 0};
  for (const CloudPoint& c : cloud) ++counts[static_cast<int>(contains(t, c.I))];
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int inside = counts[static_cast<int>(Containment::Inside)];
  const int near = counts[static_cast<int>(Containment::NearBoundary)];
  const int outside = counts[static_cast<int>(Containment::Outside)];
  return {outside == 0 && inside + near == 10000 && secs < 10.0,
          std::to_string(inside) + " inside, " + std::to_string(near) + " near, " + std::to_string(outside) +
              " outside, " + sci(secs) + " s"};
}

Outcome determinism() {
  auto produce = [] {
    const TraceResult t = trace_curve(quotient(), "w1/w3", ProblemConfig{});
    const auto cloud = sample_cloud(quotient(), ProblemConfig{}, 2000, 99);
    return std::vector<std::string>{trace_csv(t), trace_json(t), render_svg(t, &cloud), cloud_csv(cloud)};
  };
  const auto a = produce(), b = produce();
  int differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i) differing += a[i] != b[i];
  return {differing == 0, std::to_string(a.size() - differing) + "/" + std::to_string(a.size()) +
                              " outputs byte-identical (trace CSV, JSON, SVG, cloud CSV)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "elliptic kernel identities", 1.0, kernel_identities},
      {2, "defining-integral oracle", 30.0, defining_integrals},
      {3, "reduction equivalences", 60.0, reductions},
      {4, "gradient correctness", 0.0, gradients},
      {5, "boundary solve quality", 0.0, solve_quality},
      {6, "curve sanity", 0.0, curve_sanity},
      {7, "conjugation symmetry", 0.0, symmetry},
      {8, "containment", 0.0, containment},
      {9, "determinism", 0.0, determinism},
  };
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 9) {
      std::fprintf(stderr, "usage: acceptance [1-9]\n");
      return 2;
    }
  }
  bool all_pass = true;
  for (const Criterion& c : all) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += "; over the " + sci(c.time_limit) + " s limit";
    }
    std::printf("[%s] criterion %d, %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                o.detail.c_str());
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
