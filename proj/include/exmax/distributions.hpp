// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "exmax/eval_control.hpp"
#include "exmax/quadrature.hpp"

namespace exmax::dist {

/// Truncated series with its truncation accounting.
struct SeriesValue {
  double value = 0.0;
  std::int64_t terms_used = 0;
  double tail_bound = 0.0;  // bound on |exact - value| from truncation
};

// Arcsine law of the last zero g(1) of a Brownian motion on [0, 1].

double arcsine_pdf(double x);
/// (2/pi) asin(sqrt(x)), clamped to [0, 1] outside the unit interval.
double arcsine_cdf(double x);
/// sin^2(pi u / 2); inverse of arcsine_cdf on (0, 1).
double arcsine_quantile(double u);

// Kolmogorov-Smirnov law of b* = sup |Brownian bridge|.

/// P(b* > x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
/// Below x = 0.05 the survival is taken as 1 - P(b* <= x) with the CDF from
/// its Jacobi-theta form, where the alternating series needs too many terms.
SeriesValue ks_survival(double x, const EvalControl& ctl = {});
double ks_cdf(double x, const EvalControl& ctl = {});
/// Bisection on ks_cdf to a bracket of width abs_tol, then one secant step.
double ks_quantile(double p, const EvalControl& ctl = {});

// F(x) = E[ 1{max R < x} / R(1) ], R a 3-d Bessel process from 0.

/// Two-sided Gaussian series; cheap for x >= 1.
SeriesValue F_gauss(double x, const EvalControl& ctl = {});
/// (4/x) sum_{k>=0} exp(-(2k+1)^2 pi^2 / (2x^2)); cheap for x < 1.
SeriesValue F_theta(double x, const EvalControl& ctl = {});
/// F via F_theta below 1 and F_gauss from 1 on; 0 for x <= 0.
double F(double x, const EvalControl& ctl = {});
/// Term-wise derivative F'(x) of the same branch as F.
double F_prime(double x, const EvalControl& ctl = {});
/// Term-wise derivative of the Gaussian series, valid for every x > 0.
SeriesValue F_prime_gauss(double x, const EvalControl& ctl = {});
/// Term-wise derivative of the theta series.
SeriesValue F_prime_theta(double x, const EvalControl& ctl = {});

/// CDF of the maximum of a Brownian meander: sqrt(pi/2) F(x).
double meander_max_cdf(double x, const EvalControl& ctl = {});
double meander_max_quantile(double p, const EvalControl& ctl = {});

// Kernel A(u) = sum_{k>=1} (-1)^{k-1} k / (k^2 + u).

/// Sum over pairs (2m-1, 2m), which is absolutely convergent with O(1/m^2)
/// terms. The remainder after M pairs is replaced by the midpoint-rule
/// integral of the pair term, which has a closed form; tail_bound is the
/// second-order Euler-Maclaurin estimate of what that leaves.
SeriesValue A_direct(double u, const EvalControl& ctl = {});
/// (1/2) Re[psi(i sqrt(u)/2) - psi((1 + i sqrt(u))/2)]. Requires u > 0.
/// From u = 1e4 on, the asymptotic series of the digamma difference.
double A_digamma(double u, const EvalControl& ctl = {});
/// A_digamma for u > 0 and A_direct at u = 0.
double A(double u, const EvalControl& ctl = {});

/// P(b* sqrt(g/(1-g)) > x) = (4/pi) int_0^inf A(v^2) exp(-2 x^2 v^2) dv, with
/// g ~ arcsine independent of b*. The u = v^2 substitution removes the
/// 1/sqrt(u) endpoint singularity; the tail uses |A| <= 1.
quadrature::QuadratureResult x_survival(double x, const EvalControl& ctl = {});

}  // namespace exmax::dist
