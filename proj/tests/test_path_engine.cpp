// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "exmax/distributions.hpp"
#include "exmax/path_engine.hpp"
#include "exmax/rng.hpp"
#include "oracles.hpp"

using namespace exmax;
using namespace exmax::paths;

namespace {

void check_against_brute(const std::vector<double>& steps) {
  const LocalScoreSummary s = local_score_stats(steps);
  const auto b = exmax::oracle::brute_local_score(steps);
  CHECK(s.u_bar == b.u_bar);
  CHECK(s.g_n == b.g);
  CHECK(s.u_star == b.u_star);
  CHECK(s.u_dstar == b.u_dstar);
  CHECK(s.theta_star == b.theta);
  CHECK(s.complete == b.complete);
}

// Exact p_c^(n) for n <= 3 by listing paths by hand-rule, independent of
// enumerate_pc_n_exact.
double listed_pc(int n) {
  int complete = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<double> steps;
    for (int k = 0; k < n; ++k) {
      steps.push_back((mask >> k) & 1 ? 1.0 : -1.0);
    }
    complete += exmax::oracle::brute_local_score(steps).complete ? 1 : 0;
  }
  return double(complete) / double(1 << n);
}

}  // namespace

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using P = rng::Philox4x32;
  CHECK(P::block({0, 0, 0, 0}, {0, 0}) ==
        P::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(P::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        P::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(P::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        P::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  rng::Stream a(5, 3), b(5, 3), c(5, 4), d(6, 3);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
  }
  rng::Stream u(1, 1);
  double lo = 1.0, hi = 0.0, mean = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double v = u.next_open01();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    mean += v;
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));

  rng::Stream n(2, 0);
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double z = n.next_normal();
    m1 += z;
    m2 += z * z;
  }
  CHECK(std::abs(m1 / 200000) < 0.01);
  CHECK(m2 / 200000 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("local-score statistics: hand traces") {
  {
    const std::vector<double> steps{1, -1, 1, 1};
    CHECK(local_score_path(steps) == std::vector<double>{0, 1, 0, 1, 2});
    const LocalScoreSummary s = local_score_stats(steps);
    CHECK(s.g_n == 2);
    CHECK(s.u_star == 1.0);
    CHECK(s.u_dstar == 2.0);
    CHECK(s.u_bar == 2.0);
    CHECK_FALSE(s.complete);
    CHECK(s.theta_star == 1);
    check_against_brute(steps);
  }
  {
    const std::vector<double> steps{1, -1};
    CHECK(local_score_path(steps) == std::vector<double>{0, 1, 0});
    const LocalScoreSummary s = local_score_stats(steps);
    CHECK(s.g_n == 2);
    CHECK(s.u_star == 1.0);
    CHECK(s.u_dstar == 0.0);
    CHECK(s.complete);
    check_against_brute(steps);
  }
  {
    const std::vector<double> steps{-1, -1, -1};
    const LocalScoreSummary s = local_score_stats(steps);
    CHECK(s.g_n == 3);
    CHECK(s.u_star == 0.0);
    CHECK(s.u_dstar == 0.0);
    CHECK(s.u_bar == 0.0);
    CHECK(s.complete);
  }
  {
    // Leaves 0 at once and never returns: g = 0, complete only if flat.
    const LocalScoreSummary s = local_score_stats(std::vector<double>{2, 1, -0.5});
    CHECK(s.g_n == 0);
    CHECK(s.u_star == 0.0);
    CHECK_FALSE(s.complete);
  }
  {
    // Tie: the maximum reached before g recurs afterwards, still complete.
    const LocalScoreSummary s = local_score_stats(std::vector<double>{1, -1, 1});
    CHECK(s.u_star == 1.0);
    CHECK(s.u_dstar == 1.0);
    CHECK(s.complete);
  }
}

TEST_CASE("local-score statistics: invalid input") {
  CHECK_THROWS_AS(local_score_stats(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(local_score_stats(std::vector<double>{1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(local_score_stats(std::vector<double>{std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
}

TEST_CASE("local-score statistics agree with brute force on random sequences") {
  std::mt19937_64 gen(4242);
  std::uniform_int_distribution<int> length(1, 60);
  std::uniform_int_distribution<int> lattice(-3, 3);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> steps(std::size_t(length(gen)));
    for (double& s : steps) {
      s = trial % 2 == 0 ? double(lattice(gen)) : normal(gen);
    }
    check_against_brute(steps);
    const LocalScoreSummary s = local_score_stats(steps);
    CHECK(s.u_star <= s.u_bar);
    CHECK(s.u_dstar <= s.u_bar);
    CHECK(s.u_bar == std::max(s.u_star, s.u_dstar));
    CHECK(s.complete == (s.u_dstar <= s.u_star));
  }
}

TEST_CASE("exact enumeration") {
  CHECK(enumerate_pc_n_exact(1) == 0.5);
  for (int n = 1; n <= 10; ++n) {
    CHECK(enumerate_pc_n_exact(n) == listed_pc(n));
  }
  CHECK(enumerate_pc_n_exact(0) == 1.0);
  CHECK_THROWS_AS(enumerate_pc_n_exact(25), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_pc_n_exact(-1), std::invalid_argument);
}

TEST_CASE("estimator against enumeration") {
  WalkConfig cfg;
  cfg.seed = 11;
  cfg.paths = 1'000'000;
  for (int n : {1, 2, 20}) {
    cfg.n = n;
    const double exact = enumerate_pc_n_exact(n);
    const McEstimate e = estimate_pc_n(cfg);
    const double sigma = std::sqrt(exact * (1.0 - exact) / double(cfg.paths));
    CHECK(std::abs(e.p_hat - exact) <= 4.0 * sigma);
    CHECK(e.std_err == doctest::Approx(std::sqrt(e.p_hat * (1.0 - e.p_hat) / e.paths)));
  }
}

TEST_CASE("estimator is deterministic and independent of worker count") {
  WalkConfig cfg;
  cfg.n = 300;
  cfg.paths = 20'000;
  cfg.seed = 3;
  for (StepLaw law : {StepLaw::rademacher, StepLaw::gaussian}) {
    cfg.step_law = law;
    cfg.workers = 1;
    const McEstimate a = estimate_pc_n(cfg);
    const McEstimate b = estimate_pc_n(cfg);
    cfg.workers = 8;
    const McEstimate c = estimate_pc_n(cfg);
    CHECK(a.successes == b.successes);
    CHECK(a.successes == c.successes);
    CHECK(a.p_hat == c.p_hat);
  }
}

TEST_CASE("walk config validation") {
  WalkConfig cfg;
  cfg.n = 0;
  CHECK_THROWS_AS(estimate_pc_n(cfg), std::invalid_argument);
  cfg.n = 5;
  cfg.paths = 0;
  CHECK_THROWS_AS(estimate_pc_n(cfg), std::invalid_argument);
  cfg.paths = 5;
  cfg.workers = 0;
  CHECK_THROWS_AS(estimate_pc_n(cfg), std::invalid_argument);
  CHECK(parse_step_law("gaussian") == StepLaw::gaussian);
  CHECK_THROWS_AS(parse_step_law("cauchy"), std::invalid_argument);
}

TEST_CASE("gaussian steps give the same limit") {
  WalkConfig cfg;
  cfg.n = 2000;
  cfg.paths = 20'000;
  cfg.seed = 8;
  cfg.step_law = StepLaw::gaussian;
  const McEstimate e = estimate_pc_n(cfg);
  CHECK(std::abs(e.p_hat - (1.0 - std::log(2.0))) <= 0.02);
}

TEST_CASE("continuous event: degenerate and scaling checks") {
  const EvalControl ctl;
  ContinuousOptions opts;
  opts.fixed_m_max = std::numeric_limits<double>::infinity();
  CHECK(sample_continuous_event(2000, 1, ctl, opts).p_hat == 0.0);
  opts = {};
  opts.fixed_b_star = std::numeric_limits<double>::infinity();
  CHECK(sample_continuous_event(2000, 1, ctl, opts).p_hat == 1.0);

  rng::Stream stream(17, 0);
  int differing = 0;
  for (int i = 0; i < 20'000; ++i) {
    const ContinuousSample s = draw_continuous_sample(stream, ctl);
    differing += complete_event(s, 1.0) != complete_event(s, 7.0) ? 1 : 0;
  }
  CHECK(differing == 0);

  CHECK_THROWS_AS(sample_continuous_event(0, 1, ctl), std::invalid_argument);
}

TEST_CASE("continuous event is deterministic across worker counts") {
  const EvalControl ctl;
  ContinuousOptions one;
  ContinuousOptions many;
  many.workers = 8;
  const McEstimate a = sample_continuous_event(5000, 9, ctl, one);
  const McEstimate b = sample_continuous_event(5000, 9, ctl, many);
  CHECK(a.successes == b.successes);
}

TEST_CASE("arcsine sampler matches the arcsine law") {
  const int n = 100'000;
  rng::Stream stream(31, 0);
  std::vector<double> g(n);
  for (double& v : g) {
    v = dist::arcsine_quantile(stream.next_open01());
  }
  CHECK(exmax::oracle::kolmogorov_distance(g, dist::arcsine_cdf) <= 1.95 / std::sqrt(double(n)));
}
