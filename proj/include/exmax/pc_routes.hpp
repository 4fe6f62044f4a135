// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "exmax/eval_control.hpp"
#include "exmax/path_engine.hpp"
#include "exmax/quadrature.hpp"

namespace exmax::pc {

using quadrature::QuadratureResult;

/// Tolerances used by the analytic routes unless the caller overrides them.
EvalControl default_control();

/// psi(1/4) - psi(1/2) + 1 + pi/2.
double pc_closed_form(const EvalControl& ctl = default_control());

/// 8 u A(u^2) / sinh(2 pi u), with its limit 4 ln2 / pi at u = 0.
double lemma_integrand(double u, const EvalControl& ctl = default_control());

/// p_c = 8 int_0^inf u A(u^2) / sinh(2 pi u) du.
QuadratureResult pc_lemma_integral(const EvalControl& ctl = default_control());

/// p_c = sqrt(pi/2) int_0^inf F'(x) P(X > x) dx with X = b* sqrt(g/(1-g)),
/// i.e. sqrt(pi/2) E[F(X)] after integration by parts. `survival` defaults
/// to dist::x_survival; the inner integrals run at ctl scaled by 1e-2.
QuadratureResult pc_expectation(const EvalControl& ctl = default_control());
QuadratureResult pc_expectation(const EvalControl& ctl,
                                const std::function<double(double)>& survival);

/// tanh(pi x) / sinh(4 pi x), with its limit 1/4 at x = 0.
double alpha_integrand(double x);

/// Real part of alpha(0+)/i = int_R tanh(pi x)/sinh(4 pi x) dx; exact value
/// (pi/2 - 1) / (2 pi).
QuadratureResult alpha_check(const EvalControl& ctl = default_control());

/// psi(1/4) - psi(1/2) + 2 - 2 pi i alpha(0+) with alpha(0+) = i * alpha_real.
double reconstruct_from_alpha(double alpha_real, const EvalControl& ctl = default_control());

struct PcReport {
  double r1_closed_form = 0.0;
  QuadratureResult r2_lemma_integral;
  QuadratureResult r3_expectation;
  paths::McEstimate r4_monte_carlo;
  paths::McEstimate r5_continuous_mc;
  QuadratureResult alpha_check;
  double alpha_reconstruction = 0.0;
  double max_analytic_discrepancy = 0.0;  // max(|r1 - r2|, |r1 - r3|)

  bool partial = false;       // a route failed; later routes were not run
  std::string failed_route;   // "r1", "r2", "r3", "alpha", "r4" or "r5"
  std::string failure;        // what() of the failure
  bool failure_is_numeric = false;
};

struct ReportOptions {
  bool run_discrete_mc = true;
  bool run_continuous_mc = true;
};

/// Runs the analytic routes first and stops at the first failure; then the
/// two Monte Carlo routes. r4 uses `cfg`; r5 uses `mc_paths` draws with
/// cfg.seed and cfg.workers.
PcReport build_report(const paths::WalkConfig& cfg, std::int64_t mc_paths,
                      const EvalControl& ctl = default_control(),
                      const ReportOptions& opts = {});

}  // namespace exmax::pc
