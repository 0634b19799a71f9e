#include <json.hpp>
#include <numbers>

#include "nonoverlap/elliptic.hpp"
#include "nonoverlap/oracle.hpp"
#include "support.hpp"

using namespace nov;
using nov::test::error_of;
using nov::test::rel_err;

namespace {
constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};
}  // namespace

TEST_CASE("sign-modulo comparison") {
  const OracleCheck a = compare_modulo_sign({1.0, 2.0}, {-1.0, -2.0});
  CHECK(a.sign == -1);
  CHECK(a.rel_error == 0.0);
  const OracleCheck b = compare_modulo_sign({1.0, 2.0}, {1.0, 2.0 + 1e-9});
  CHECK(b.sign == 1);
  CHECK(b.rel_error == doctest::Approx(1e-9 / std::sqrt(5.0)).epsilon(1e-6));
  CHECK(compare_direct({1.0, 0.0}, {-1.0, 0.0}).rel_error == doctest::Approx(2.0));
}

TEST_CASE("branch tracker continues through the principal cut") {
  BranchTracker tr([](double s) { return std::exp(cplx{0.0, 4.0 * pi * s}); });
  CHECK(rel_err(tr.sqrt_at(0.0), 1.0) <= 1e-15);
  CHECK(rel_err(tr.sqrt_at(0.5), -1.0) <= 1e-12);
  CHECK(rel_err(tr.sqrt_at(1.0), 1.0) <= 1e-12);
  CHECK(rel_err(tr.sqrt_at(0.25), I) <= 1e-12);
}

TEST_CASE("defining-integral quadratures at reference points") {
  CHECK(rel_err(quad_K(0.5).value, 1.6857503548125960429) <= 1e-12);
  CHECK(rel_err(quad_K(0.3 * I).value, 1.5371380007149770578) <= 1e-12);
  CHECK(rel_err(quad_F({0.5, 0.2}, 0.6).value, {0.50395030844755556219, 0.20841395150644612883}) <= 1e-12);
  CHECK(rel_err(quad_Pi_complete({0.2, -0.1}, {0.4, 0.3}).value, {1.4373318616212687744, 0.14663739919411510134}) <=
        1e-12);
  CHECK(rel_err(quad_Pi_incomplete({0.6, 0.1}, {-0.2, 0.4}, 0.7).value,
                {0.64320807805495702991, 0.086487487285241596205}) <= 1e-12);
}

TEST_CASE("elliptic closed forms against quadrature on 500 safe arguments") {
  const auto args = safe_elliptic_args(500, 42);
  REQUIRE(args.size() == 500);
  double worst = 0.0;
  for (const EllipticArgs& a : args) {
    CHECK(elliptic_path_clearance(a.phi, a.n, a.k) >= 0.05);
    worst = std::max(worst, compare_direct(quad_K(a.k).value, ellip_K(a.k)).rel_error);
    worst = std::max(worst, compare_direct(quad_F(a.phi, a.k).value, ellip_F(a.phi, a.k)).rel_error);
    worst = std::max(worst, compare_direct(quad_Pi_complete(a.n, a.k).value, ellip_Pi_complete(a.n, a.k)).rel_error);
    worst = std::max(worst, compare_direct(quad_Pi_incomplete(a.phi, a.n, a.k).value,
                                           ellip_Pi_incomplete(a.phi, a.n, a.k))
                                .rel_error);
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("J reduction on random admissible tuples") {
  for (const ReductionTuple& t : admissible_tuples(ReductionKind::J, 100, 17))
    CHECK(check_J_reduction(t.p, t.q, t.pt).rel_error <= 1e-8);
}

TEST_CASE("J reduction, symmetric real configuration") {
  const OracleCheck c = check_J_reduction(1.0, 1.0, {0.6, -0.6});
  CHECK(c.rel_error <= 1e-8);
  // C1 = 0 and the radicand is negative on (0, w1): both sides are imaginary
  CHECK(std::abs(c.quad.real()) <= 1e-10 * std::abs(c.quad));
  CHECK(std::abs(c.closed.real()) <= 1e-10 * std::abs(c.closed));
}

TEST_CASE("J reduction with a distant interior root") {
  const cplx w1{0.3, 0.1}, w2{1.5, -0.5}, p = 1.0;
  const cplx q = p * (50.0 * w1 - w2) / (-49.0 * w2);
  const ReductionConstants rc = derive_constants(p, q, {w1, w2});
  REQUIRE(std::abs(rc.b - 50.0) <= 1e-10);
  CHECK(check_J_reduction(p, q, {w1, w2}).rel_error <= 1e-8);
}

TEST_CASE("L reduction on random admissible tuples") {
  for (const ReductionTuple& t : admissible_tuples(ReductionKind::L, 100, 17))
    CHECK(check_L_reduction(t.p, t.q, t.pt).rel_error <= 1e-8);
}

TEST_CASE("L reduction with negative real c*") {
  const cplx w1{0.3, 0.2}, w2 = -4.0 * w1, p{0.7, -0.2};
  const cplx q = -p * w1 / w2;
  const OracleCheck c = check_L_reduction(p, q, {w1, w2});
  CHECK(c.rel_error <= 1e-8);
  INFO("quad = " << c.quad);
}

TEST_CASE("L reduction rejects a divergent tail") {
  // C1 != 0; b* sits at 1.5 on the ray
  const cplx w1{0.3, 0.1}, w2{2.0, 0.4}, p = 1.0;
  const cplx q = 0.5 * p * w1 / (w1 - 1.5 * w2);
  REQUIRE(std::abs(derive_constants(p, q, {w1, w2}).b_star - 1.5) <= 1e-12);
  CHECK(error_of([&] { check_L_reduction(p, q, {w1, w2}); }) == ErrorCode::GuardViolation);
}

TEST_CASE("T reduction on random admissible tuples") {
  for (const ReductionTuple& t : admissible_tuples(ReductionKind::T, 100, 17))
    CHECK(check_T_reduction(t.p, t.q, t.pt).rel_error <= 1e-8);
}

TEST_CASE("complementary modulus is recomputed consistently") {
  for (const ReductionTuple& t : admissible_tuples(ReductionKind::T, 20, 4)) {
    const ReductionConstants rc = derive_constants(t.p, t.q, t.pt);
    CHECK(rel_err(rc.k_prime, std::sqrt(1.0 - rc.k * rc.k)) <= 1e-15);
  }
}

TEST_CASE("segment to -1") {
  const double want[] = {2.627773332084343909, 2.1565156474996432354, 1.8626408023327386059};
  int i = 0;
  for (double r : {0.3, 0.5, 0.7}) {
    const OracleCheck c = check_T1({r, 2.0});
    CHECK(c.rel_error <= 1e-9);
    CHECK(std::abs(std::abs(c.quad) - want[i++]) <= 1e-12);
    CHECK(std::abs(c.quad.real()) <= 1e-10);
  }
}

TEST_CASE("segment from 1 to rho") {
  const double want[] = {1.2694942779633329898, 1.0782578237498216177, 0.84287517740629802144};
  int i = 0;
  for (double rho : {1.5, 2.0, 3.0}) {
    const OracleCheck c = check_T3({0.5, rho});
    CHECK(c.rel_error <= 1e-9);
    CHECK(std::abs(std::abs(c.quad) - want[i++]) <= 1e-12);
    CHECK(std::abs(c.quad.real()) <= 1e-10);
  }
}

TEST_CASE("anchor integral") {
  for (double r : {0.3, 0.5, 0.7}) {
    const OracleCheck c = check_anchor({r, 2.0});
    CHECK(c.sign == 1);
    CHECK(c.rel_error <= 1e-10);
  }
  CHECK(std::abs(check_anchor({}).quad - 2.0 * 1.6857503548125960429) <= 1e-12);
}

TEST_CASE("arc integral at the endpoints of its closed form") {
  const ProblemConfig cfg;
  CHECK(check_T2(cfg, 0.0).quad == cplx{});
  const OracleCheck half_turn = check_T2(cfg, pi);
  CHECK(half_turn.rel_error <= 1e-9);
  CHECK(std::abs(std::abs(half_turn.quad) - 2.0 * 1.6857503548125960429) <= 1e-12);
}

TEST_CASE("arc integral matches the Landen form") {
  // mpmath values of the arc integral at alpha = 0.4, 0.8, pi/2 with r = 0.5
  const std::pair<double, double> ref[] = {
      {0.4, 0.26825965791673402492}, {0.8, 0.54639322168170125098}, {pi / 2, 1.1563217277606902251}};
  for (auto [alpha, value] : ref) {
    CAPTURE(alpha);
    const OracleCheck c = check_T2({}, alpha);
    CHECK(std::abs(std::abs(c.quad) - value) <= 1e-12);
    CHECK(compare_modulo_sign(c.quad, arc_integral_landen(0.5, alpha)).rel_error <= 1e-12);
  }
}

TEST_CASE("arc integral linearity in alpha") {
  const cplx once = check_T2({}, 0.4).quad;
  const cplx twice = check_T2({}, 0.8).quad;
  CHECK(rel_err(twice, 2.0 * once) <= 1e-9);
}

TEST_CASE("verification report") {
  VerifyOptions opts;
  opts.tuples = 10;
  opts.elliptic_args = 20;
  const VerifyReport a = run_verification({}, opts);
  const VerifyReport b = run_verification({}, opts);
  CHECK(a.to_json() == b.to_json());
  const auto j = nlohmann::json::parse(a.to_json());
  CHECK(j.at("all_passed").get<bool>() == a.all_passed);
  REQUIRE(j.at("checks").size() == a.entries.size());
  int reductions = 0;
  for (const VerifyEntry& e : a.entries) {
    if (e.check == "J_reduction" || e.check == "L_reduction" || e.check == "T_reduction") {
      ++reductions;
      CHECK(e.passed);
    }
  }
  CHECK(reductions == 30);
  CHECK(error_of([] { run_verification({2.0, 2.0}, {}); }) == ErrorCode::Config);
}
