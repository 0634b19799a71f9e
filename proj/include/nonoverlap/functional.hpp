#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace nov {

using cplx = std::complex<double>;

/// One rational monomial coeff * w1^e1 * w2^e2 * w3^e3 * w4^e4.
struct Term {
  cplx coeff;
  std::array<int, 4> exponents{};
};

/// The analytic functional J(w1, w2, w3, w4) as a finite sum of rational
/// monomials. Evaluation happens at (f(r), conj f(r), F(rho), conj F(rho)).
///
/// Construction merges equal exponent tuples, drops terms whose merged
/// coefficient vanishes, and rejects functionals with no nonconstant term.
class FunctionalSpec {
 public:
  explicit FunctionalSpec(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// True when J(l*w1, conj(l)*w2, l*w3, conj(l)*w4) = J for every l != 0,
  /// i.e. every term has e1 + e3 = 0 and e2 + e4 = 0.
  bool scale_invariant() const noexcept;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Values f(r) and F(rho).
struct EvalPoint {
  cplx w1;
  cplx w2;
};

/// Coefficients of the boundary condition Re[p P(r) + q Q(rho)] >= 0.
struct GradientPair {
  cplx p;
  cplx q;
  double alpha = 0.0;
};

/// Parses sums of terms such as "w1/w3", "w1 + 2*w3", "(1-2i)*w1^2*w4^-1".
/// Throws SyntaxError (with position) or Error(ConstantFunctional).
FunctionalSpec parse_functional(std::string_view text);

/// omega_0 = (w1, conj w1, w2, conj w2); validates w1 != 0, w2 != 0, w1 != w2.
std::array<cplx, 4> omega0(const EvalPoint& pt);

cplx eval_functional(const FunctionalSpec& spec, const EvalPoint& pt);

/// Exact partials dJ/dw_i with the four coordinates treated as independent.
std::array<cplx, 4> gradient(const FunctionalSpec& spec, const EvalPoint& pt);

/// p = e^{-ia} J_1 + e^{ia} conj(J_2),  q = e^{-ia} J_3 + e^{ia} conj(J_4).
/// alpha is reduced to [0, 2pi).
GradientPair pq(const FunctionalSpec& spec, const EvalPoint& pt, double alpha);

double normalize_angle(double alpha) noexcept;

}  // namespace nov
