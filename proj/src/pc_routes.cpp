// SPDX-License-Identifier: Apache-2.0
#include "exmax/pc_routes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "exmax/distributions.hpp"
#include "exmax/errors.hpp"
#include "exmax/specfun.hpp"

namespace exmax::pc {
namespace {

using std::numbers::pi;
constexpr double kSqrtPiOver2 = 1.25331413731550025120788264240552263;

// Exponential rates of the sinh kernels, read off the integrands.
constexpr double kLemmaDecay = 2.0 * pi;
constexpr double kAlphaDecay = 4.0 * pi;
// F'(x) ~ x exp(-x^2/2); any unit rate envelope is conservative.
constexpr double kExpectationDecay = 1.0;

// Inner integrals of the expectation route run this much tighter.
constexpr double kInnerTightening = 1e-2;

}  // namespace

EvalControl default_control() {
  EvalControl ctl;
  ctl.rel_tol = 1e-10;
  ctl.abs_tol = 1e-12;
  return ctl;
}

double pc_closed_form(const EvalControl& ctl) {
  return specfun::digamma(0.25, ctl) - specfun::digamma(0.5, ctl) + 1.0 + pi / 2.0;
}

double lemma_integrand(double u, const EvalControl& ctl) {
  if (u == 0.0) {
    return 4.0 * std::numbers::ln2 / pi;
  }
  return 8.0 * u * dist::A_digamma(u * u, ctl) / std::sinh(2.0 * pi * u);
}

QuadratureResult pc_lemma_integral(const EvalControl& ctl) {
  quadrature::QuadratureOptions opts;
  opts.value_at_origin = lemma_integrand(0.0, ctl);
  return quadrature::integrate_semi_infinite(
      [&ctl](double u) { return lemma_integrand(u, ctl); }, ctl, kLemmaDecay, opts);
}

QuadratureResult pc_expectation(const EvalControl& ctl,
                                const std::function<double(double)>& survival) {
  // The survival is at most 1, so points where F' is negligible against the
  // tolerance skip the inner integral.
  const double negligible = ctl.abs_tol * 1e-6;
  return quadrature::integrate_semi_infinite(
      [&](double x) {
        const double slope = dist::F_prime(x, ctl);
        if (slope < negligible) {
          return kSqrtPiOver2 * slope;
        }
        return kSqrtPiOver2 * slope * survival(x);
      },
      ctl, kExpectationDecay);
}

QuadratureResult pc_expectation(const EvalControl& ctl) {
  const EvalControl inner = ctl.scaled(kInnerTightening);
  return pc_expectation(ctl, [&inner](double x) {
    const QuadratureResult s = dist::x_survival(x, inner);
    if (!s.converged) {
      throw ConvergenceError("x_survival did not converge");
    }
    return s.value;
  });
}

double alpha_integrand(double x) {
  if (x == 0.0) {
    return 0.25;
  }
  return std::tanh(pi * x) / std::sinh(4.0 * pi * x);
}

QuadratureResult alpha_check(const EvalControl& ctl) {
  quadrature::QuadratureOptions opts;
  opts.value_at_origin = 0.25;
  return quadrature::integrate_real_line(alpha_integrand, ctl, kAlphaDecay, opts);
}

double reconstruct_from_alpha(double alpha_real, const EvalControl& ctl) {
  using namespace std::complex_literals;
  const std::complex<double> alpha = 1i * alpha_real;
  const std::complex<double> pc = specfun::digamma(0.25, ctl) - specfun::digamma(0.5, ctl) +
                                  2.0 - 2.0 * pi * 1i * alpha;
  return pc.real();
}

PcReport build_report(const paths::WalkConfig& cfg, std::int64_t mc_paths,
                      const EvalControl& ctl, const ReportOptions& opts) {
  cfg.validate();
  ctl.validate();
  PcReport report;
  auto attempt = [&report](const char* route, auto&& body) {
    if (report.partial) {
      return;
    }
    try {
      body();
    } catch (const NumericError& e) {
      report.partial = true;
      report.failed_route = route;
      report.failure = e.what();
      report.failure_is_numeric = true;
    }
  };
  auto require = [](const QuadratureResult& r, const char* what) {
    if (!r.converged) {
      throw ConvergenceError(std::string(what) + " did not converge");
    }
  };

  attempt("r1", [&] { report.r1_closed_form = pc_closed_form(ctl); });
  attempt("r2", [&] {
    report.r2_lemma_integral = pc_lemma_integral(ctl);
    require(report.r2_lemma_integral, "lemma integral");
  });
  attempt("r3", [&] {
    report.r3_expectation = pc_expectation(ctl);
    require(report.r3_expectation, "expectation route");
  });
  attempt("alpha", [&] {
    report.alpha_check = alpha_check(ctl);
    require(report.alpha_check, "alpha integral");
    report.alpha_reconstruction = reconstruct_from_alpha(report.alpha_check.value, ctl);
  });
  if (!report.partial) {
    report.max_analytic_discrepancy =
        std::max(std::abs(report.r1_closed_form - report.r2_lemma_integral.value),
                 std::abs(report.r1_closed_form - report.r3_expectation.value));
  }
  if (opts.run_discrete_mc) {
    attempt("r4", [&] { report.r4_monte_carlo = paths::estimate_pc_n(cfg); });
  }
  if (opts.run_continuous_mc) {
    attempt("r5", [&] {
      paths::ContinuousOptions copts;
      copts.workers = cfg.workers;
      report.r5_continuous_mc = paths::sample_continuous_event(mc_paths, cfg.seed, ctl, copts);
    });
  }
  return report;
}

}  // namespace exmax::pc
