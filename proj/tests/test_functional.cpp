#include <numbers>
#include <random>

#include "nonoverlap/functional.hpp"
#include "support.hpp"

using namespace nov;
using nov::test::error_of;
using nov::test::rel_err;

namespace {

const cplx I{0.0, 1.0};

cplx eval_omega(const FunctionalSpec& spec, const std::array<cplx, 4>& w) {
  cplx sum{};
  for (const Term& t : spec.terms()) {
    cplx v = t.coeff;
    for (int i = 0; i < 4; ++i) v *= std::pow(w[i], t.exponents[i]);
    sum += v;
  }
  return sum;
}

FunctionalSpec random_spec(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 4), expo(-2, 2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    std::vector<Term> terms;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
      Term t{{u(rng), u(rng)}, {}};
      for (int& e : t.exponents) e = expo(rng);
      terms.push_back(t);
    }
    try {
      return FunctionalSpec(std::move(terms));
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_CASE("parse single quotient") {
  const FunctionalSpec s = parse_functional("w1/w3");
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].coeff == cplx{1.0, 0.0});
  CHECK(s.terms()[0].exponents == std::array<int, 4>{1, 0, -1, 0});
}

TEST_CASE("parse two-term sum") {
  const FunctionalSpec s = parse_functional("w1 + 2*w3");
  REQUIRE(s.terms().size() == 2);
  CHECK(s.terms()[0].coeff == cplx{1.0, 0.0});
  CHECK(s.terms()[0].exponents == std::array<int, 4>{1, 0, 0, 0});
  CHECK(s.terms()[1].coeff == cplx{2.0, 0.0});
  CHECK(s.terms()[1].exponents == std::array<int, 4>{0, 0, 1, 0});
}

TEST_CASE("constant functional is rejected") {
  CHECK(error_of([] { parse_functional("5"); }) == ErrorCode::ConstantFunctional);
  CHECK(error_of([] { parse_functional("w1 - w1"); }) == ErrorCode::ConstantFunctional);
}

TEST_CASE("syntax errors carry a position") {
  for (const char* bad : {"w1 +", "w5", "w1 ** w2", "(w1", "", "w1 / / w3"}) {
    CAPTURE(bad);
    CHECK(error_of([&] { parse_functional(bad); }) == ErrorCode::Syntax);
  }
  try {
    parse_functional("w1 + w9");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("to_string round trips") {
  for (const char* text : {"w1/w3", "w1 + 2*w3", "w1*w4 - 0.5*w2^2/w3", "(1+2i)*w1^3*w2^-1"}) {
    CAPTURE(text);
    const FunctionalSpec a = parse_functional(text);
    const FunctionalSpec b = parse_functional(a.to_string());
    const EvalPoint pt{{0.3, 0.2}, {1.7, -0.4}};
    CHECK(rel_err(eval_functional(a, pt), eval_functional(b, pt)) <= 1e-15);
  }
}

TEST_CASE("evaluation examples") {
  const FunctionalSpec q = parse_functional("w1/w3");
  CHECK(rel_err(eval_functional(q, {0.3, 2.0}), 0.15) <= 1e-15);
  CHECK(rel_err(eval_functional(q, {I, 2.0 * I}), 0.5) <= 1e-15);
  const FunctionalSpec m = parse_functional("w1*w4");
  CHECK(rel_err(eval_functional(m, {{1.0, 1.0}, {2.0, -1.0}}), cplx{1.0, 3.0}) <= 1e-15);
}

TEST_CASE("zero base with negative exponent is a domain error") {
  const FunctionalSpec q = parse_functional("w1/w3");
  CHECK(error_of([&] { eval_functional(q, {0.3, 0.0}); }) == ErrorCode::Domain);
  CHECK(error_of([&] { gradient(q, {0.3, 0.0}); }) == ErrorCode::Domain);
}

TEST_CASE("gradient examples") {
  const auto g = gradient(parse_functional("w1/w3"), {0.3, 2.0});
  CHECK(rel_err(g[0], 0.5) <= 1e-15);
  CHECK(g[1] == cplx{});
  CHECK(rel_err(g[2], -0.075) <= 1e-15);
  CHECK(g[3] == cplx{});
  const auto lin = gradient(parse_functional("w1 + w3"), {{0.2, -0.7}, {3.0, 1.0}});
  CHECK(lin == std::array<cplx, 4>{1.0, 0.0, 1.0, 0.0});
}

TEST_CASE("gradient matches central differences on random rational functionals") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.3, 1.5), ang(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const FunctionalSpec s = random_spec(rng);
    const EvalPoint pt{std::polar(u(rng), ang(rng)), std::polar(u(rng), ang(rng))};
    const auto g = gradient(s, pt);
    const std::array<cplx, 4> w0 = omega0(pt);
    const double h = 1e-6;
    for (int i = 0; i < 4; ++i) {
      auto wp = w0, wm = w0;
      wp[i] += h;
      wm[i] -= h;
      const cplx fd = (eval_omega(s, wp) - eval_omega(s, wm)) / (2.0 * h);
      const double scale = std::max(std::abs(g[i]), 1e-3 * std::abs(eval_functional(s, pt)));
      worst = std::max(worst, std::abs(fd - g[i]) / std::max(scale, 1e-12));
    }
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("pq examples") {
  const FunctionalSpec q = parse_functional("w1/w3");
  const GradientPair a0 = pq(q, {0.3, 2.0}, 0.0);
  CHECK(rel_err(a0.p, 0.5) <= 1e-15);
  CHECK(rel_err(a0.q, -0.075) <= 1e-15);
  const GradientPair a1 = pq(q, {0.3, 2.0}, std::numbers::pi / 2);
  CHECK(rel_err(a1.p, -0.5 * I) <= 1e-15);
  CHECK(rel_err(a1.q, 0.075 * I) <= 1e-15);
  const GradientPair c = pq(parse_functional("w2"), {{0.4, 0.1}, {2.0, 0.3}}, 0.0);
  CHECK(c.p == cplx{1.0, 0.0});
  CHECK(c.q == cplx{});
}

TEST_CASE("pq is 2pi periodic") {
  const FunctionalSpec s = parse_functional("w1*w4 - 0.5*w2^2/w3");
  const EvalPoint pt{{0.3, 0.2}, {1.7, -0.4}};
  for (double a : {0.0, 0.3, 2.0, -1.0, 0.25 * std::numbers::pi}) {
    CAPTURE(a);
    const double shifted = a + 2.0 * std::numbers::pi;
    const GradientPair x = pq(s, pt, a), y = pq(s, pt, shifted);
    // the shift itself rounds, so bitwise equality only holds when it is exact
    if (normalize_angle(shifted) == normalize_angle(a)) {
      CHECK(x.p == y.p);
      CHECK(x.q == y.q);
    }
    CHECK(rel_err(x.p, y.p) <= 4e-15);
    CHECK(rel_err(x.q, y.q) <= 4e-15);
    const GradientPair z = pq(s, pt, normalize_angle(shifted));
    CHECK(y.p == z.p);
    CHECK(y.q == z.q);
  }
}

TEST_CASE("pq is real-linear in the coefficients") {
  const EvalPoint pt{{0.3, 0.2}, {1.7, -0.4}};
  const double alpha = 0.7;
  const GradientPair a = pq(parse_functional("w1/w3"), pt, alpha);
  const GradientPair b = pq(parse_functional("w2*w4"), pt, alpha);
  const GradientPair ab = pq(parse_functional("3*w1/w3 - 2*w2*w4"), pt, alpha);
  CHECK(rel_err(ab.p, 3.0 * a.p - 2.0 * b.p) <= 1e-14);
  CHECK(rel_err(ab.q, 3.0 * a.q - 2.0 * b.q) <= 1e-14);
  // the w2, w4 partials enter conjugated, so a complex coefficient on them acts conjugated
  const GradientPair ci = pq(parse_functional("3*w1/w3 - 2i*w2*w4"), pt, alpha);
  CHECK(rel_err(ci.p, 3.0 * a.p + 2.0 * I * b.p) <= 1e-14);
  CHECK(rel_err(ci.q, 3.0 * a.q + 2.0 * I * b.q) <= 1e-14);
}

TEST_CASE("scale invariance flag") {
  CHECK(parse_functional("w1/w3").scale_invariant());
  CHECK(parse_functional("w2/w4 + w1^2/w3^2").scale_invariant());
  CHECK_FALSE(parse_functional("w1").scale_invariant());
  CHECK_FALSE(parse_functional("w1*w4").scale_invariant());
}

TEST_CASE("normalize_angle") {
  CHECK(normalize_angle(0.0) == 0.0);
  CHECK(normalize_angle(2.0 * std::numbers::pi) == doctest::Approx(0.0));
  CHECK(normalize_angle(-0.5) == doctest::Approx(2.0 * std::numbers::pi - 0.5));
}
