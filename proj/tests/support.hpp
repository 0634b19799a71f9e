#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "nonoverlap/error.hpp"

namespace nov::test {

using cplx = std::complex<double>;

inline double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

#define CHECK_CLOSE(got, want, tol) CHECK(::nov::test::rel_err((got), (want)) <= (tol))
#define CHECK_ABS(got, want, tol) CHECK(std::abs((got) - (want)) <= (tol))

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace nov::test
