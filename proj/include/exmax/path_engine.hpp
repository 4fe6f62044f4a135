// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "exmax/eval_control.hpp"
#include "exmax/rng.hpp"

namespace exmax::paths {

enum class StepLaw { rademacher, gaussian };

std::string_view to_string(StepLaw law);
/// Throws std::invalid_argument for names other than "rademacher"/"gaussian".
StepLaw parse_step_law(std::string_view name);

/// One Monte Carlo experiment on the local-score walk. Both step laws are
/// centred with unit variance.
struct WalkConfig {
  std::int64_t n = 10'000;
  StepLaw step_law = StepLaw::rademacher;
  std::uint64_t seed = 0;
  std::int64_t paths = 200'000;
  int workers = 1;

  void validate() const;
};

/// Statistics of U_k = S_k - min_{i<=k} S_i, k = 0..n.
struct LocalScoreSummary {
  double u_bar = 0.0;          // max_{0<=k<=n} U_k
  std::int64_t g_n = 0;        // last k <= n with U_k = 0
  double u_star = 0.0;         // max_{0<=k<=g_n} U_k
  double u_dstar = 0.0;        // max_{g_n<=k<=n} U_k
  std::int64_t theta_star = 0; // first k <= g_n with U_k = u_star
  bool complete = true;        // u_bar == u_star
};

struct McEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;  // sqrt(p_hat (1 - p_hat) / paths)
  std::int64_t paths = 0;
  std::int64_t n = 0;
  std::int64_t successes = 0;

  static McEstimate from_counts(std::int64_t successes, std::int64_t paths, std::int64_t n);
};

/// Single pass over the steps. Throws std::invalid_argument on empty or
/// non-finite input.
LocalScoreSummary local_score_stats(std::span<const double> steps);

/// The local-score path U_0..U_n itself.
std::vector<double> local_score_path(std::span<const double> steps);

/// Fraction of simulated walks whose maximum is reached on a complete
/// excursion. Replication r always uses rng stream (seed, r), so the
/// result is identical for any worker count.
McEstimate estimate_pc_n(const WalkConfig& cfg);

/// Exact p_c^(n) by enumerating all 2^n Rademacher walks. n in [0, 24].
double enumerate_pc_n_exact(int n);

/// Independent draws of the three ingredients of (U*(t), U**(t)).
struct ContinuousSample {
  double g = 0.0;       // last zero, arcsine law
  double b_star = 0.0;  // sup |bridge|, Kolmogorov-Smirnov law
  double m_max = 0.0;   // meander maximum
};

ContinuousSample draw_continuous_sample(rng::Stream& stream, const EvalControl& ctl);

/// sqrt(t g) b* > sqrt(t (1 - g)) M
bool complete_event(const ContinuousSample& s, double horizon = 1.0);

struct ContinuousOptions {
  int workers = 1;
  double horizon = 1.0;
  /// Replace the sampled b* (or M) by a fixed value; used for degenerate
  /// checks.
  std::optional<double> fixed_b_star;
  std::optional<double> fixed_m_max;
};

/// Monte Carlo estimate of p_c from the exact law identity
/// (U*, U**) = (sqrt(t g) b*, sqrt(t (1-g)) M); no path discretisation.
McEstimate sample_continuous_event(std::int64_t paths, std::uint64_t seed,
                                   const EvalControl& ctl, const ContinuousOptions& opts = {});

}  // namespace exmax::paths
