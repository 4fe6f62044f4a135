// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "exmax/eval_control.hpp"

namespace exmax::quadrature {

using Integrand = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;  // panel error plus tail truncation bound
  std::int64_t evals = 0;
  bool converged = false;
};

struct QuadratureOptions {
  /// Used in place of f(0); for integrands with a removable singularity at
  /// the origin.
  std::optional<double> value_at_origin;
  /// Optional rigorous bound on the one-sided tail integral of |f| beyond
  /// cutoff T (for the real line, applied to both tails). When absent the
  /// tail is estimated from the exponential envelope implied by decay_hint.
  std::function<double(double)> tail_bound;
};

/// Globally adaptive 15-point Gauss-Kronrod on the finite interval [a, b].
/// Bisects the panel with the largest |K15 - G7| until the summed estimate
/// is within ctl.target(value) or max_evals is spent.
QuadratureResult integrate(const Integrand& f, double a, double b, const EvalControl& ctl,
                           const QuadratureOptions& opts = {});

/// Integral of f over (0, inf).
///
/// The domain is truncated at T where the tail, either from opts.tail_bound
/// or from the envelope |f(t)| <= |f(T)| exp(-decay_hint (t - T)), is below
/// abs_tol / 2; the tail is folded into err_estimate. [0, T] is seeded with
/// panels at 1/decay_hint, 2/decay_hint, 4/decay_hint, ... Throws
/// EvaluationError if f returns a non-finite value.
QuadratureResult integrate_semi_infinite(const Integrand& f, const EvalControl& ctl,
                                         double decay_hint, const QuadratureOptions& opts = {});

/// Integral of f over the real line with independent truncation of both
/// tails. The initial panel is centred at 0, so an integrand with a
/// removable singularity there needs opts.value_at_origin.
QuadratureResult integrate_real_line(const Integrand& f, const EvalControl& ctl,
                                     double decay_hint, const QuadratureOptions& opts = {});

}  // namespace exmax::quadrature
