// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <numbers>

#include "exmax/eval_control.hpp"

namespace exmax::specfun {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLn2 = std::numbers::ln2;

/// Digamma psi(x) = Gamma'(x)/Gamma(x) for real x.
///
/// Negative arguments are reflected through psi(1-x) - psi(x) = pi cot(pi x);
/// the upward recurrence psi(x) = psi(x+1) - 1/x then pushes the argument to
/// x >= 10 where the Bernoulli asymptotic expansion is accurate to ~1e-17.
///
/// Throws PoleError at x in {0, -1, -2, ...}.
double digamma(double x, const EvalControl& ctl = {});

/// Complex digamma. Same scheme as the real overload; conjugate symmetry
/// psi(conj z) = conj psi(z) holds to rounding because every step is
/// conjugation-equivariant.
std::complex<double> digamma(std::complex<double> z, const EvalControl& ctl = {});

}  // namespace exmax::specfun
