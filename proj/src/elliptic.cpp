#include "nonoverlap/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nonoverlap/error.hpp"

namespace nov {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kTolerance = 1e-16;

bool on_cut(cplx z) { return z.imag() == 0.0 && z.real() < 0.0; }

void require_principal(cplx z, const char* what) {
  if (on_cut(z) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorCode::Branch, std::string(what) + " argument on the branch cut or not finite");
}

double max3(double a, double b, double c) { return std::max(a, std::max(b, c)); }

}  // namespace

cplx carlson_rf(cplx x, cplx y, cplx z) {
  require_principal(x, "RF");
  require_principal(y, "RF");
  require_principal(z, "RF");
  int zeros = (x == cplx{}) + (y == cplx{}) + (z == cplx{});
  if (zeros > 1) throw Error(ErrorCode::Branch, "RF with more than one zero argument");

  const cplx x0 = x, y0 = y;
  cplx a0 = (x + y + z) / 3.0;
  double q = std::pow(3.0 * kTolerance, -1.0 / 6.0) * max3(std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z));
  cplx a = a0;
  double scale = 1.0;  // 4^{-m}
  for (int m = 0;; ++m) {
    if (scale * q < std::abs(a)) break;
    if (m == kMaxIterations) throw Error(ErrorCode::NoConvergence, "RF duplication did not converge");
    cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    cplx lambda = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    a = 0.25 * (a + lambda);
    scale *= 0.25;
  }
  cplx X = scale * (a0 - x0) / a;
  cplx Y = scale * (a0 - y0) / a;
  cplx Z = -X - Y;
  cplx e2 = X * Y - Z * Z;
  cplx e3 = X * Y * Z;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

cplx carlson_rc(cplx x, cplx y) { return carlson_rf(x, y, y); }

cplx carlson_rj(cplx x, cplx y, cplx z, cplx p) {
  require_principal(x, "RJ");
  require_principal(y, "RJ");
  require_principal(z, "RJ");
  require_principal(p, "RJ");
  if (p == cplx{}) throw Error(ErrorCode::PoleOnPath, "RJ with p = 0");
  int zeros = (x == cplx{}) + (y == cplx{}) + (z == cplx{});
  if (zeros > 1) throw Error(ErrorCode::Branch, "RJ with more than one zero argument");

  const cplx x0 = x, y0 = y, z0 = z;
  cplx a0 = (x + y + z + 2.0 * p) / 5.0;
  cplx delta = (p - x) * (p - y) * (p - z);
  double q = std::pow(0.25 * kTolerance, -1.0 / 6.0) *
             std::max(max3(std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)), std::abs(a0 - p));
  cplx a = a0;
  cplx sum{};
  double scale = 1.0;  // 4^{-m}
  for (int m = 0;; ++m) {
    if (scale * q < std::abs(a)) break;
    if (m == kMaxIterations) throw Error(ErrorCode::NoConvergence, "RJ duplication did not converge");
    cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z), sp = std::sqrt(p);
    cplx lambda = sx * sy + sy * sz + sz * sx;
    cplx d = (sp + sx) * (sp + sy) * (sp + sz);
    cplx e = scale * scale * scale * delta / (d * d);
    sum += scale / d * carlson_rc(1.0, 1.0 + e);
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    p = 0.25 * (p + lambda);
    a = 0.25 * (a + lambda);
    scale *= 0.25;
  }
  cplx X = scale * (a0 - x0) / a;
  cplx Y = scale * (a0 - y0) / a;
  cplx Z = scale * (a0 - z0) / a;
  cplx P = -(X + Y + Z) / 2.0;
  cplx e2 = X * Y + X * Z + Y * Z - 3.0 * P * P;
  cplx e3 = X * Y * Z + 2.0 * e2 * P + 4.0 * P * P * P;
  cplx e4 = (2.0 * X * Y * Z + e2 * P + 3.0 * P * P * P) * P;
  cplx e5 = X * Y * Z * P * P;
  cplx series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return scale * series / (a * std::sqrt(a)) + 6.0 * sum;
}

cplx ellip_K(cplx k) {
  cplx y = 1.0 - k * k;
  if (on_cut(y) || y == cplx{}) throw Error(ErrorCode::Branch, "K(k) with k^2 in [1, inf)");
  return carlson_rf(0.0, y, 1.0);
}

cplx ellip_F_sc(cplx s, cplx c2, cplx k) {
  if (s == cplx{}) return 0.0;
  cplx d2 = 1.0 - k * k * s * s;
  return s * carlson_rf(c2, d2, 1.0);
}

cplx ellip_Pi_sc(cplx s, cplx c2, cplx n, cplx k) {
  if (s == cplx{}) return 0.0;
  cplx s2 = s * s;
  cplx d2 = 1.0 - k * k * s2;
  cplx pole = 1.0 + n * s2;
  if (pole == cplx{} || on_cut(pole)) throw Error(ErrorCode::PoleOnPath, "1 + n sin^2 t vanishes on the path");
  cplx result = s * carlson_rf(c2, d2, 1.0);
  if (n != cplx{}) result -= n / 3.0 * s * s2 * carlson_rj(c2, d2, 1.0, pole);
  return result;
}

cplx ellip_F(cplx phi, cplx k) {
  cplx s = std::sin(phi), c = std::cos(phi);
  return ellip_F_sc(s, c * c, k);
}

cplx ellip_Pi_complete(cplx n, cplx k) {
  cplx pole = 1.0 + n;
  if (pole == cplx{} || on_cut(pole)) throw Error(ErrorCode::PoleOnPath, "complete Pi with -n in [1, inf)");
  cplx y = 1.0 - k * k;
  if (on_cut(y) || y == cplx{}) throw Error(ErrorCode::Branch, "Pi(n, k) with k^2 in [1, inf)");
  cplx result = carlson_rf(0.0, y, 1.0);
  if (n != cplx{}) result -= n / 3.0 * carlson_rj(0.0, y, 1.0, pole);
  return result;
}

cplx ellip_Pi_incomplete(cplx phi, cplx n, cplx k) {
  cplx s = std::sin(phi), c = std::cos(phi);
  return ellip_Pi_sc(s, c * c, n, k);
}

cplx complex_arcsin(cplx z) {
  const cplx i{0.0, 1.0};
  return -i * std::log(i * z + std::sqrt(1.0 - z * z));
}

}  // namespace nov
