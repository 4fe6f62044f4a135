// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "exmax/distributions.hpp"
#include "exmax/pc_routes.hpp"
#include "exmax/specfun.hpp"
#include "oracles.hpp"

using namespace exmax;
using namespace exmax::pc;
using std::numbers::pi;

TEST_CASE("closed form") {
  const double r1 = pc_closed_form();
  CHECK(std::abs(r1 - 0.3069) < 5e-5);
  CHECK(r1 > 0.0);
  CHECK(r1 < 1.0);
  // psi(1/4) = -gamma - pi/2 - 3 ln2 and psi(1/2) = -gamma - 2 ln2 collapse
  // the formula to 1 - ln 2.
  CHECK(std::abs(r1 - (1.0 - std::numbers::ln2)) < 1e-12);
  CHECK(std::abs(r1 - 0.3068528194) < 1e-10);
  const double slow = exmax::oracle::digamma_series(0.25, 1'000'000) -
                      exmax::oracle::digamma_series(0.5, 1'000'000) + 1.0 + pi / 2.0;
  CHECK(std::abs(r1 - slow) < 1e-10);
}

TEST_CASE("lemma integral") {
  const EvalControl ctl = default_control();
  CHECK(lemma_integrand(0.0, ctl) == doctest::Approx(4.0 * std::numbers::ln2 / pi));
  CHECK(lemma_integrand(1e-7, ctl) == doctest::Approx(0.8825424).epsilon(1e-6));
  for (double u = 0.01; u < 6.0; u += 0.05) {
    const double f = lemma_integrand(u, ctl);
    CHECK(f > 0.0);
    CHECK(f <= 8.0 * u * std::numbers::ln2 / std::sinh(2.0 * pi * u) * (1.0 + 1e-12));
  }
  const auto r2 = pc_lemma_integral(ctl);
  CHECK(r2.converged);
  CHECK(std::abs(r2.value - pc_closed_form(ctl)) <= 1e-8);
}

TEST_CASE("expectation route") {
  const EvalControl ctl = default_control();
  const auto r3 = pc_expectation(ctl);
  CHECK(r3.converged);
  CHECK(std::abs(r3.value - pc_closed_form(ctl)) <= 1e-6);

  // With survival = 1 the integral is sqrt(pi/2) F(inf) = 1.
  const auto norm = pc_expectation(ctl, [](double) { return 1.0; });
  CHECK(std::abs(norm.value - 1.0) < 1e-9);
}

TEST_CASE("alpha endpoint and the reconstruction") {
  const EvalControl ctl = default_control();
  const auto a = alpha_check(ctl);
  const double exact = (pi / 2.0 - 1.0) / (2.0 * pi);
  CHECK(a.converged);
  CHECK(std::abs(a.value - exact) <= 1e-10);
  CHECK(std::abs(a.value - 0.0908450569) < 1e-10);
  CHECK(alpha_integrand(0.0) == 0.25);
  CHECK(alpha_integrand(1e-9) == doctest::Approx(0.25));

  quadrature::QuadratureOptions opts;
  opts.value_at_origin = 0.25;
  const auto half = quadrature::integrate_semi_infinite(alpha_integrand, ctl, 4.0 * pi, opts);
  CHECK(std::abs(a.value - 2.0 * half.value) < 1e-12);

  CHECK(std::abs(reconstruct_from_alpha(a.value, ctl) - pc_closed_form(ctl)) <= 1e-10);
  CHECK(std::abs(reconstruct_from_alpha(exact, ctl) - (1.0 - std::numbers::ln2)) <= 1e-12);
}

TEST_CASE("tightening the control") {
  const EvalControl base = default_control();
  const EvalControl tight = base.scaled(0.1);
  CHECK(std::abs(pc_closed_form(base) - pc_closed_form(tight)) <= 1e-10);
  const double r1 = pc_closed_form(tight);
  const double d_base = std::abs(pc_closed_form(base) - pc_lemma_integral(base).value);
  const double d_tight = std::abs(r1 - pc_lemma_integral(tight).value);
  CHECK(d_tight <= std::max(d_base, 1e-15));
}

TEST_CASE("report") {
  paths::WalkConfig cfg;
  cfg.n = 10'000;
  cfg.paths = 50'000;
  cfg.seed = 5;
  const PcReport r = build_report(cfg, 50'000);
  CHECK_FALSE(r.partial);
  CHECK(r.max_analytic_discrepancy <= 1e-6);
  CHECK(r.max_analytic_discrepancy ==
        std::max(std::abs(r.r1_closed_form - r.r2_lemma_integral.value),
                 std::abs(r.r1_closed_form - r.r3_expectation.value)));
  for (double v : {r.r1_closed_form, r.r2_lemma_integral.value, r.r3_expectation.value,
                   r.r4_monte_carlo.p_hat, r.r5_continuous_mc.p_hat}) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
  CHECK(std::abs(r.r4_monte_carlo.p_hat - r.r1_closed_form) <=
        std::max(0.01, 4.0 * r.r4_monte_carlo.std_err));
  CHECK(std::abs(r.r5_continuous_mc.p_hat - r.r1_closed_form) <=
        4.0 * r.r5_continuous_mc.std_err);
}

TEST_CASE("report marks failing routes") {
  paths::WalkConfig cfg;
  cfg.n = 10;
  cfg.paths = 10;
  EvalControl starved = default_control();
  starved.max_evals = 20;
  const PcReport r = build_report(cfg, 10, starved);
  CHECK(r.partial);
  CHECK(r.failed_route == "r2");
  CHECK(r.failure_is_numeric);
}
