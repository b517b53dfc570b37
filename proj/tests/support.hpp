#pragma once

#include <random>

#include "doctest.h"
#include "wsq/error.hpp"
#include "wsq/linalg.hpp"

namespace wsq::test {

// Random complex symmetric matrix with entries of modulus <= scale.
inline CMatrix random_symmetric(int d, double scale, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CMatrix b(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const cplx v = std::polar(scale * u(rng), 2.0 * kPi * u(rng));
      b(i, j) = v;
      b(j, i) = v;
    }
  return b;
}

inline CMatrix random_general(int d, double scale, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CMatrix b(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) b(i, j) = std::polar(scale * u(rng), 2.0 * kPi * u(rng));
  return b;
}

inline CMatrix scalar(double v) { return CMatrix::Constant(1, 1, cplx(v, 0.0)); }

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a wsq::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace wsq::test
