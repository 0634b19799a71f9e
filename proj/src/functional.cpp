#include "nonoverlap/functional.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>

#include "nonoverlap/error.hpp"

namespace nov {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::ConstantFunctional: return "constant_functional";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Degenerate: return "degenerate_constant";
    case ErrorCode::Branch: return "branch";
    case ErrorCode::PoleOnPath: return "pole_on_path";
    case ErrorCode::NoConvergence: return "no_convergence";
    case ErrorCode::InvalidBoundary: return "invalid_boundary";
    case ErrorCode::GuardViolation: return "guard_violation";
    case ErrorCode::TraceAbort: return "trace_abort";
    case ErrorCode::NotClosed: return "trace_not_closed";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "empty functional");
    double sign = 1.0;
    if (accept_sign(sign)) skip_ws();
    terms.push_back(parse_term(sign));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      double s = 1.0;
      if (!accept_sign(s)) throw SyntaxError(pos_, "expected '+' or '-'");
      skip_ws();
      terms.push_back(parse_term(s));
    }
    return terms;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Accepts '+', '-' and the UTF-8 minus sign U+2212.
  bool accept_sign(double& sign) {
    if (peek() == '+') {
      ++pos_;
      sign = 1.0;
      return true;
    }
    if (peek() == '-') {
      ++pos_;
      sign = -1.0;
      return true;
    }
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      sign = -1.0;
      return true;
    }
    return false;
  }

  bool starts_number() const {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  double parse_float() {
    std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = save;
      } else {
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    std::string lit(text_.substr(start, pos_ - start));
    char* end = nullptr;
    double v = std::strtod(lit.c_str(), &end);
    if (lit.empty() || end != lit.c_str() + lit.size()) throw SyntaxError(start, "malformed number '" + lit + "'");
    return v;
  }

  // float | float 'i' | 'i'
  cplx parse_real_or_imag() {
    if (peek() == 'i') {
      ++pos_;
      return {0.0, 1.0};
    }
    double v = parse_float();
    skip_ws();
    if (peek() == 'i') {
      ++pos_;
      return {0.0, v};
    }
    return {v, 0.0};
  }

  // '(' float (+|-) float 'i' ')', also '(' float ')' and '(' float 'i' ')'.
  cplx parse_paren_literal() {
    std::size_t open = pos_;
    ++pos_;
    skip_ws();
    double s0 = 1.0;
    accept_sign(s0);
    skip_ws();
    if (!starts_number() && peek() != 'i') throw SyntaxError(pos_, "expected number");
    cplx value = s0 * parse_real_or_imag();
    skip_ws();
    double s1 = 1.0;
    if (accept_sign(s1)) {
      skip_ws();
      if (!starts_number() && peek() != 'i') throw SyntaxError(pos_, "expected number");
      cplx second = parse_real_or_imag();
      if (second.real() != 0.0 || value.imag() != 0.0) throw SyntaxError(pos_, "expected 'a + bi' form");
      value += s1 * second;
      skip_ws();
    }
    if (peek() != ')') throw SyntaxError(pos_, "unbalanced '(' opened at " + std::to_string(open));
    ++pos_;
    return value;
  }

  bool starts_factor() const { return peek() == 'w'; }

  // ('w1'|'w2'|'w3'|'w4') ('^' int)?
  void parse_factor(std::array<int, 4>& exps, int direction) {
    std::size_t start = pos_;
    ++pos_;
    char d = peek();
    if (d < '1' || d > '4') throw SyntaxError(start, "expected w1, w2, w3 or w4");
    ++pos_;
    int idx = d - '1';
    skip_ws();
    int power = 1;
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      double s = 1.0;
      accept_sign(s);
      skip_ws();
      std::size_t ds = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (ds == pos_) throw SyntaxError(pos_, "expected integer exponent");
      power = static_cast<int>(s) * std::stoi(std::string(text_.substr(ds, pos_ - ds)));
    }
    exps[idx] += direction * power;
  }

  Term parse_term(double sign) {
    Term t;
    t.coeff = sign;
    bool have_coeff = false;
    if (peek() == '(') {
      t.coeff *= parse_paren_literal();
      have_coeff = true;
    } else if (starts_number() || (peek() == 'i' && !starts_factor())) {
      t.coeff *= parse_real_or_imag();
      have_coeff = true;
    } else if (!starts_factor()) {
      throw SyntaxError(pos_, "expected a term");
    } else {
      parse_factor(t.exponents, 1);
    }
    for (;;) {
      skip_ws();
      int direction = 0;
      if (peek() == '*') direction = 1;
      else if (peek() == '/') direction = -1;
      else break;
      ++pos_;
      skip_ws();
      if (!starts_factor()) throw SyntaxError(pos_, "expected w1, w2, w3 or w4");
      parse_factor(t.exponents, direction);
    }
    (void)have_coeff;
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

cplx ipow(cplx base, int e) {
  cplx result{1.0, 0.0};
  cplx b = e < 0 ? cplx{1.0, 0.0} / base : base;
  for (int n = std::abs(e); n > 0; --n) result *= b;
  return result;
}

void check_base(cplx base, int e, int index) {
  if (e < 0 && base == cplx{0.0, 0.0})
    throw Error(ErrorCode::Domain, "w" + std::to_string(index + 1) + " is zero with negative exponent");
}

}  // namespace

FunctionalSpec::FunctionalSpec(std::vector<Term> terms) {
  std::map<std::array<int, 4>, cplx> merged;
  std::vector<std::array<int, 4>> order;
  for (const Term& t : terms) {
    auto [it, inserted] = merged.try_emplace(t.exponents, cplx{});
    if (inserted) order.push_back(t.exponents);
    it->second += t.coeff;
  }
  bool nonconstant = false;
  for (const auto& e : order) {
    cplx c = merged[e];
    if (c == cplx{0.0, 0.0}) continue;
    terms_.push_back({c, e});
    if (std::any_of(e.begin(), e.end(), [](int v) { return v != 0; })) nonconstant = true;
  }
  if (!nonconstant) throw Error(ErrorCode::ConstantFunctional, "functional is constant");
}

bool FunctionalSpec::scale_invariant() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.exponents[0] + t.exponents[2] == 0 && t.exponents[1] + t.exponents[3] == 0;
  });
}

std::string FunctionalSpec::to_string() const {
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    std::snprintf(buf, sizeof buf, "%s(%.17g%+.17gi)", i ? " + " : "", t.coeff.real(), t.coeff.imag());
    out += buf;
    for (int k = 0; k < 4; ++k) {
      if (t.exponents[k] == 0) continue;
      std::snprintf(buf, sizeof buf, "*w%d^%d", k + 1, t.exponents[k]);
      out += buf;
    }
  }
  return out;
}

FunctionalSpec parse_functional(std::string_view text) { return FunctionalSpec(Parser(text).parse()); }

std::array<cplx, 4> omega0(const EvalPoint& pt) {
  if (pt.w1 == cplx{} || pt.w2 == cplx{}) throw Error(ErrorCode::Domain, "evaluation point has w1 = 0 or w2 = 0");
  if (pt.w1 == pt.w2) throw Error(ErrorCode::Domain, "evaluation point has w1 = w2");
  return {pt.w1, std::conj(pt.w1), pt.w2, std::conj(pt.w2)};
}

cplx eval_functional(const FunctionalSpec& spec, const EvalPoint& pt) {
  const auto w = omega0(pt);
  cplx sum{};
  for (const Term& t : spec.terms()) {
    cplx v = t.coeff;
    for (int i = 0; i < 4; ++i) {
      check_base(w[i], t.exponents[i], i);
      v *= ipow(w[i], t.exponents[i]);
    }
    sum += v;
  }
  return sum;
}

std::array<cplx, 4> gradient(const FunctionalSpec& spec, const EvalPoint& pt) {
  const auto w = omega0(pt);
  std::array<cplx, 4> g{};
  for (const Term& t : spec.terms()) {
    for (int i = 0; i < 4; ++i) check_base(w[i], t.exponents[i], i);
    for (int d = 0; d < 4; ++d) {
      if (t.exponents[d] == 0) continue;
      cplx v = t.coeff * static_cast<double>(t.exponents[d]);
      for (int i = 0; i < 4; ++i) {
        int e = (i == d) ? t.exponents[i] - 1 : t.exponents[i];
        check_base(w[i], e, i);
        v *= ipow(w[i], e);
      }
      g[d] += v;
    }
  }
  return g;
}

double normalize_angle(double alpha) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(alpha, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

GradientPair pq(const FunctionalSpec& spec, const EvalPoint& pt, double alpha) {
  const double a = normalize_angle(alpha);
  const auto g = gradient(spec, pt);
  const cplx em = std::polar(1.0, -a);
  const cplx ep = std::polar(1.0, a);
  return {em * g[0] + ep * std::conj(g[1]), em * g[2] + ep * std::conj(g[3]), a};
}

}  // namespace nov
