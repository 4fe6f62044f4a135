// SPDX-License-Identifier: Apache-2.0
#include "exmax/path_engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "exmax/distributions.hpp"

namespace exmax::paths {
namespace {

// Streaming form of the local-score recursion. U_k = 0 exactly when S_k is
// at or below the running minimum, so zeros are detected without tolerance
// for both integer and real steps.
template <typename T>
class Tracker {
 public:
  void push(T step) {
    ++k_;
    sum_ += step;
    if (sum_ <= min_) {
      min_ = sum_;
      close_excursion();
    } else {
      const T u = sum_ - min_;
      if (u > cur_max_) {
        cur_max_ = u;
        cur_arg_ = k_;
      }
    }
  }

  [[nodiscard]] bool complete() const { return cur_max_ <= best_; }

  [[nodiscard]] LocalScoreSummary summary() const {
    LocalScoreSummary s;
    s.u_star = double(best_);
    s.u_dstar = double(cur_max_);
    s.u_bar = double(std::max(best_, cur_max_));
    s.g_n = last_zero_;
    s.theta_star = best_arg_;
    s.complete = complete();
    return s;
  }

 private:
  void close_excursion() {
    last_zero_ = k_;
    if (cur_max_ > best_) {
      best_ = cur_max_;
      best_arg_ = cur_arg_;
    }
    cur_max_ = T(0);
    cur_arg_ = k_;
  }

  std::int64_t k_ = 0;
  T sum_ = T(0);
  T min_ = T(0);
  T cur_max_ = T(0);
  std::int64_t cur_arg_ = 0;
  T best_ = T(0);
  std::int64_t best_arg_ = 0;
  std::int64_t last_zero_ = 0;
};

bool rademacher_path_complete(rng::Stream& stream, std::int64_t n) {
  Tracker<std::int64_t> tracker;
  std::int64_t remaining = n;
  while (remaining > 0) {
    std::uint64_t bits = stream.next_u64();
    const int take = int(std::min<std::int64_t>(remaining, 64));
    for (int i = 0; i < take; ++i, bits >>= 1) {
      tracker.push(std::int64_t(bits & 1U) * 2 - 1);
    }
    remaining -= take;
  }
  return tracker.complete();
}

bool gaussian_path_complete(rng::Stream& stream, std::int64_t n) {
  Tracker<double> tracker;
  for (std::int64_t k = 0; k < n; ++k) {
    tracker.push(stream.next_normal());
  }
  return tracker.complete();
}

// Runs count(r0, r1) over a contiguous split of [0, total) and sums the
// results. Integer sums make the total independent of the split.
template <typename Fn>
std::int64_t parallel_count(std::int64_t total, int workers, Fn count) {
  workers = int(std::max<std::int64_t>(1, std::min<std::int64_t>(workers, total)));
  if (workers == 1) {
    return count(0, total);
  }
  std::vector<std::int64_t> partial(std::size_t(workers), 0);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> threads;
    threads.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) {
      const std::int64_t r0 = total * w / workers;
      const std::int64_t r1 = total * (w + 1) / workers;
      threads.emplace_back([&, w, r0, r1] {
        try {
          partial[std::size_t(w)] = count(r0, r1);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  std::int64_t sum = 0;
  for (const std::int64_t c : partial) {
    sum += c;
  }
  return sum;
}

}  // namespace

std::string_view to_string(StepLaw law) {
  return law == StepLaw::rademacher ? "rademacher" : "gaussian";
}

StepLaw parse_step_law(std::string_view name) {
  if (name == "rademacher") {
    return StepLaw::rademacher;
  }
  if (name == "gaussian") {
    return StepLaw::gaussian;
  }
  throw std::invalid_argument("unknown step law '" + std::string(name) + "'");
}

void WalkConfig::validate() const {
  if (n < 1) {
    throw std::invalid_argument("walk length n must be >= 1");
  }
  if (paths < 1) {
    throw std::invalid_argument("paths must be >= 1");
  }
  if (workers < 1) {
    throw std::invalid_argument("workers must be >= 1");
  }
}

McEstimate McEstimate::from_counts(std::int64_t successes, std::int64_t paths, std::int64_t n) {
  McEstimate e;
  e.successes = successes;
  e.paths = paths;
  e.n = n;
  e.p_hat = paths > 0 ? double(successes) / double(paths) : 0.0;
  e.std_err = paths > 0 ? std::sqrt(e.p_hat * (1.0 - e.p_hat) / double(paths)) : 0.0;
  return e;
}

LocalScoreSummary local_score_stats(std::span<const double> steps) {
  if (steps.empty()) {
    throw std::invalid_argument("local_score_stats: empty step sequence");
  }
  Tracker<double> tracker;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!std::isfinite(steps[i])) {
      throw std::invalid_argument("local_score_stats: non-finite step at index " +
                                  std::to_string(i));
    }
    tracker.push(steps[i]);
  }
  return tracker.summary();
}

std::vector<double> local_score_path(std::span<const double> steps) {
  std::vector<double> u;
  u.reserve(steps.size() + 1);
  u.push_back(0.0);
  double sum = 0.0;
  double min = 0.0;
  for (const double step : steps) {
    sum += step;
    min = std::min(min, sum);
    u.push_back(sum - min);
  }
  return u;
}

McEstimate estimate_pc_n(const WalkConfig& cfg) {
  cfg.validate();
  const auto count = [&cfg](std::int64_t r0, std::int64_t r1) {
    std::int64_t hits = 0;
    for (std::int64_t r = r0; r < r1; ++r) {
      rng::Stream stream(cfg.seed, std::uint64_t(r));
      const bool complete = cfg.step_law == StepLaw::rademacher
                                ? rademacher_path_complete(stream, cfg.n)
                                : gaussian_path_complete(stream, cfg.n);
      hits += complete ? 1 : 0;
    }
    return hits;
  };
  const std::int64_t hits = parallel_count(cfg.paths, cfg.workers, count);
  return McEstimate::from_counts(hits, cfg.paths, cfg.n);
}

double enumerate_pc_n_exact(int n) {
  if (n < 0 || n > 24) {
    throw std::invalid_argument("enumerate_pc_n_exact: n must be in [0, 24]");
  }
  // Definition taken literally: build U_0..U_n, locate the last zero, and
  // compare the two maxima.
  std::vector<int> u(std::size_t(n) + 1);
  std::uint64_t complete = 0;
  const std::uint64_t total = std::uint64_t(1) << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    int s = 0;
    int min = 0;
    u[0] = 0;
    for (int k = 1; k <= n; ++k) {
      s += ((mask >> (k - 1)) & 1U) ? 1 : -1;
      min = std::min(min, s);
      u[std::size_t(k)] = s - min;
    }
    int g = n;
    while (u[std::size_t(g)] != 0) {
      --g;
    }
    const int overall = *std::max_element(u.begin(), u.end());
    const int before = *std::max_element(u.begin(), u.begin() + g + 1);
    complete += (overall == before) ? 1 : 0;
  }
  return double(complete) / double(total);
}

ContinuousSample draw_continuous_sample(rng::Stream& stream, const EvalControl& ctl) {
  ContinuousSample s;
  s.g = dist::arcsine_quantile(stream.next_open01());
  s.b_star = dist::ks_quantile(stream.next_open01(), ctl);
  s.m_max = dist::meander_max_quantile(stream.next_open01(), ctl);
  return s;
}

bool complete_event(const ContinuousSample& s, double horizon) {
  const double root_t = std::sqrt(horizon);
  return root_t * (std::sqrt(s.g) * s.b_star) > root_t * (std::sqrt(1.0 - s.g) * s.m_max);
}

McEstimate sample_continuous_event(std::int64_t paths, std::uint64_t seed,
                                   const EvalControl& ctl, const ContinuousOptions& opts) {
  if (paths < 1) {
    throw std::invalid_argument("sample_continuous_event: paths must be >= 1");
  }
  if (!(opts.horizon > 0.0)) {
    throw std::invalid_argument("sample_continuous_event: horizon must be positive");
  }
  ctl.validate();
  const auto count = [&](std::int64_t r0, std::int64_t r1) {
    std::int64_t hits = 0;
    for (std::int64_t r = r0; r < r1; ++r) {
      rng::Stream stream(seed, std::uint64_t(r));
      ContinuousSample s;
      s.g = dist::arcsine_quantile(stream.next_open01());
      const double v_bridge = stream.next_open01();
      const double v_meander = stream.next_open01();
      s.b_star = opts.fixed_b_star ? *opts.fixed_b_star : dist::ks_quantile(v_bridge, ctl);
      s.m_max = opts.fixed_m_max ? *opts.fixed_m_max : dist::meander_max_quantile(v_meander, ctl);
      hits += complete_event(s, opts.horizon) ? 1 : 0;
    }
    return hits;
  };
  const std::int64_t hits = parallel_count(paths, opts.workers, count);
  return McEstimate::from_counts(hits, paths, 0);
}

}  // namespace exmax::paths
