// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numbers>

#include "exmax/cli.hpp"
#include "exmax/distributions.hpp"
#include "exmax/pc_routes.hpp"
#include "exmax/rng.hpp"
#include "exmax/specfun.hpp"

namespace exmax::cli {
namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = std::log(hi / lo) / double(points - 1);
  for (int i = 0; i < points; ++i) {
    grid[std::size_t(i)] = lo * std::exp(step * double(i));
  }
  return grid;
}

IdentityCheck make(std::string name, double tolerance, double deviation) {
  return {std::move(name), tolerance, deviation, deviation <= tolerance};
}

// Empirical P(b* sqrt(g/(1-g)) > x) from `paths` independent draws.
std::pair<double, double> empirical_x_survival(double x, const VerifyOptions& opts) {
  std::int64_t above = 0;
  for (std::int64_t r = 0; r < opts.mc_paths; ++r) {
    rng::Stream stream(opts.seed, std::uint64_t(r));
    const double g = dist::arcsine_quantile(stream.next_open01());
    const double b = dist::ks_quantile(stream.next_open01(), opts.ctl);
    above += (b * std::sqrt(g / (1.0 - g)) > x) ? 1 : 0;
  }
  const double p = double(above) / double(opts.mc_paths);
  return {p, std::sqrt(p * (1.0 - p) / double(opts.mc_paths))};
}

}  // namespace

std::vector<IdentityCheck> run_identities(const VerifyOptions& opts) {
  const EvalControl& ctl = opts.ctl;
  std::vector<IdentityCheck> out;

  double f_dev = 0.0;
  for (const double x : log_grid(0.3, 5.0, 200)) {
    f_dev = std::max(f_dev, std::abs(dist::F_gauss(x, ctl).value - dist::F_theta(x, ctl).value));
  }
  out.push_back(make("F_series_pair", 1e-12, f_dev));

  double a_dev = 0.0;
  for (const double u : log_grid(1e-3, 1e3, 200)) {
    const double via_digamma = dist::A_digamma(u, ctl) + opts.a_kernel_perturbation;
    a_dev = std::max(a_dev, std::abs(dist::A_direct(u, ctl).value - via_digamma));
  }
  out.push_back(make("A_kernel_pair", 1e-10, a_dev));

  const double x = 1.0;
  const quadrature::QuadratureResult exact = dist::x_survival(x, ctl);
  const auto [p_mc, se] = empirical_x_survival(x, opts);
  out.push_back(make("x_survival_vs_mc", 3.0 * se, std::abs(exact.value - p_mc)));

  const double r1 = pc::pc_closed_form(ctl);
  const quadrature::QuadratureResult alpha = pc::alpha_check(ctl);
  const double alpha_exact = (std::numbers::pi / 2.0 - 1.0) / (2.0 * std::numbers::pi);
  out.push_back(make("alpha_endpoint", 1e-10, std::abs(alpha.value - alpha_exact)));
  out.push_back(make("alpha_reconstruction", 1e-10,
                     std::abs(pc::reconstruct_from_alpha(alpha.value, ctl) - r1)));
  out.push_back(make("closed_form_one_minus_ln2", 1e-12, std::abs(r1 - (1.0 - std::numbers::ln2))));
  return out;
}

}  // namespace exmax::cli
