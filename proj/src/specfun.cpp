// SPDX-License-Identifier: Apache-2.0
#include "exmax/specfun.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "exmax/errors.hpp"

namespace exmax::specfun {
namespace {

constexpr double kShiftThreshold = 10.0;

// B_{2k} / (2k) for k = 1..8.
constexpr std::array<double, 8> kAsymptoticCoeffs = {
    1.0 / 12.0,        -1.0 / 120.0,      1.0 / 252.0,   -1.0 / 240.0,
    1.0 / 132.0,       -691.0 / 32760.0,  1.0 / 12.0,    -3617.0 / 8160.0,
};

template <typename T>
T asymptotic(T z) {
  // psi(z) ~ ln z - 1/(2z) - sum B_{2k} / (2k z^{2k})
  const T inv2 = T(1.0) / (z * z);
  T series = T(0.0);
  for (auto it = kAsymptoticCoeffs.rbegin(); it != kAsymptoticCoeffs.rend(); ++it) {
    series = (series + *it) * inv2;
  }
  return std::log(z) - T(0.5) / z - series;
}

bool is_nonpositive_integer(double re, double im) {
  return im == 0.0 && re <= 0.0 && re == std::floor(re);
}

[[noreturn]] void throw_pole(double re, double im) {
  std::ostringstream os;
  os << "digamma pole at (" << re << ", " << im << ")";
  throw PoleError(os.str());
}

template <typename T>
T digamma_positive(T z, const EvalControl& ctl) {
  // Re z >= 0 here; at most ceil(kShiftThreshold) + 1 recurrence steps.
  T acc = T(0.0);
  std::int64_t steps = 0;
  while (std::real(z) < kShiftThreshold) {
    acc -= T(1.0) / z;
    z += T(1.0);
    if (++steps > ctl.max_terms) {
      throw ConvergenceError("digamma: recurrence exceeded max_terms");
    }
  }
  return acc + asymptotic(z);
}

}  // namespace

double digamma(double x, const EvalControl& ctl) {
  if (std::isnan(x)) {
    throw DomainError("digamma: NaN argument");
  }
  if (is_nonpositive_integer(x, 0.0)) {
    throw_pole(x, 0.0);
  }
  if (x < 0.0) {
    // psi(x) = psi(1 - x) - pi cot(pi x)
    return digamma_positive(1.0 - x, ctl) - kPi / std::tan(kPi * x);
  }
  return digamma_positive(x, ctl);
}

std::complex<double> digamma(std::complex<double> z, const EvalControl& ctl) {
  if (std::isnan(z.real()) || std::isnan(z.imag())) {
    throw DomainError("digamma: NaN argument");
  }
  if (is_nonpositive_integer(z.real(), z.imag())) {
    throw_pole(z.real(), z.imag());
  }
  using C = std::complex<double>;
  if (z.real() < 0.0) {
    return digamma_positive(C(1.0) - z, ctl) - kPi / std::tan(kPi * z);
  }
  return digamma_positive(z, ctl);
}

}  // namespace exmax::specfun
