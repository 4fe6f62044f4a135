// SPDX-License-Identifier: Apache-2.0
#include "exmax/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "exmax/errors.hpp"

namespace exmax::quadrature {
namespace {

// Kronrod abscissae (positive half, descending) and weights for the 15-point
// rule; odd-index nodes with kGauss7 weights form the embedded 7-point Gauss
// rule.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrod15 = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGauss7 = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

constexpr int kPanelEvals = 15;
constexpr int kMaxDoublings = 64;

class Evaluator {
 public:
  Evaluator(const Integrand& f, const QuadratureOptions& opts) : f_(f), opts_(opts) {}

  double operator()(double t) {
    ++evals_;
    const double y = (t == 0.0 && opts_.value_at_origin) ? *opts_.value_at_origin : f_(t);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "integrand returned " << y << " at t = " << t;
      throw EvaluationError(os.str());
    }
    return y;
  }

  [[nodiscard]] std::int64_t evals() const { return evals_; }

 private:
  const Integrand& f_;
  const QuadratureOptions& opts_;
  std::int64_t evals_ = 0;
};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(Evaluator& eval, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = eval(centre);
  double kronrod = fc * kKronrod15[7];
  double gauss = fc * kGauss7[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double sum = eval(centre - dx) + eval(centre + dx);
    kronrod += kKronrod15[j] * sum;
    if (j % 2 == 1) {
      gauss += kGauss7[j / 2] * sum;
    }
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

// `breaks` holds increasing panel endpoints seeding the heap. `reserve` is
// the part of the error budget already spent elsewhere (tails).
QuadratureResult adaptive(Evaluator& eval, const std::vector<double>& breaks,
                          const EvalControl& ctl, double reserve) {
  std::priority_queue<Panel> panels;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Panel p = gauss_kronrod(eval, breaks[i], breaks[i + 1]);
    value += p.value;
    error += p.error;
    panels.push(p);
  }

  bool converged = false;
  while (eval.evals() <= ctl.max_evals) {
    if (error <= ctl.target(value) - reserve) {
      converged = true;
      break;
    }
    if (eval.evals() + 2 * kPanelEvals > ctl.max_evals) {
      break;
    }
    Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    const double min_width = 64.0 * std::numeric_limits<double>::epsilon() *
                             std::max(std::abs(worst.a), std::abs(worst.b));
    if (worst.b - worst.a <= min_width) {
      break;
    }
    panels.pop();
    const Panel left = gauss_kronrod(eval, worst.a, mid);
    const Panel right = gauss_kronrod(eval, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum to shed the drift of the incremental updates.
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  return {value, error, eval.evals(), converged};
}

double envelope_tail(Evaluator& eval, double t, double decay) {
  double peak = 0.0;
  for (double scale : {1.0, 1.25, 1.5}) {
    peak = std::max(peak, std::abs(eval(scale * t)));
  }
  return 2.0 * peak / decay;
}

// Cutoff whose tail estimate is just below `limit`: the doubling sequence
// brackets it, then bisection tightens the bracket to 1%. `sign` selects the
// right (+1) or left (-1) tail.
std::pair<double, double> find_cutoff(Evaluator& eval, const QuadratureOptions& opts,
                                      double decay, double limit, double sign) {
  auto tail_at = [&](double t) {
    return opts.tail_bound ? opts.tail_bound(t) : envelope_tail(eval, sign * t, decay);
  };
  double t = 1.0 / decay;
  for (int i = 0; i < kMaxDoublings; ++i, t *= 2.0) {
    double tail = tail_at(t);
    if (tail < limit) {
      if (i == 0) {
        return {t, tail};
      }
      double lo = 0.5 * t;
      while (t - lo > 0.01 * t) {
        const double mid = 0.5 * (lo + t);
        const double mid_tail = tail_at(mid);
        if (mid_tail < limit) {
          t = mid;
          tail = mid_tail;
        } else {
          lo = mid;
        }
      }
      return {t, tail};
    }
  }
  throw ConvergenceError("quadrature: no tail cutoff satisfies abs_tol");
}

// Endpoints start, start + t0, start + 2 t0, start + 4 t0, ... up to
// start + cutoff, so mass near `start` is seen even when the cutoff is far out.
std::vector<double> geometric_breaks(double t0, double cutoff) {
  std::vector<double> out{0.0};
  for (double t = t0; t < cutoff; t *= 2.0) {
    out.push_back(t);
  }
  out.push_back(cutoff);
  return out;
}

void check_hint(double decay_hint) {
  if (!(decay_hint > 0.0) || !std::isfinite(decay_hint)) {
    throw std::invalid_argument("quadrature: decay_hint must be positive and finite");
  }
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const EvalControl& ctl,
                           const QuadratureOptions& opts) {
  ctl.validate();
  Evaluator eval(f, opts);
  return adaptive(eval, {a, b}, ctl, 0.0);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, const EvalControl& ctl,
                                         double decay_hint, const QuadratureOptions& opts) {
  ctl.validate();
  check_hint(decay_hint);
  Evaluator eval(f, opts);
  const auto [cutoff, tail] = find_cutoff(eval, opts, decay_hint, 0.5 * ctl.abs_tol, 1.0);
  QuadratureResult r = adaptive(eval, geometric_breaks(1.0 / decay_hint, cutoff), ctl, tail);
  r.err_estimate += tail;
  r.converged = r.converged && r.err_estimate <= ctl.target(r.value);
  return r;
}

QuadratureResult integrate_real_line(const Integrand& f, const EvalControl& ctl,
                                     double decay_hint, const QuadratureOptions& opts) {
  ctl.validate();
  check_hint(decay_hint);
  Evaluator eval(f, opts);
  const auto [right, right_tail] = find_cutoff(eval, opts, decay_hint, 0.25 * ctl.abs_tol, 1.0);
  const auto [left, left_tail] = find_cutoff(eval, opts, decay_hint, 0.25 * ctl.abs_tol, -1.0);
  const double tail = right_tail + left_tail;
  // Symmetric central panel, so its centre node sits at the origin.
  const double t0 = 1.0 / decay_hint;
  const std::vector<double> half = geometric_breaks(t0, std::max({left, right, t0}));
  std::vector<double> breaks;
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it > 0.0) {
      breaks.push_back(-*it);
    }
  }
  for (double t : half) {
    if (t > 0.0) {
      breaks.push_back(t);
    }
  }
  QuadratureResult r = adaptive(eval, breaks, ctl, tail);
  r.err_estimate += tail;
  r.converged = r.converged && r.err_estimate <= ctl.target(r.value);
  return r;
}

}  // namespace exmax::quadrature
