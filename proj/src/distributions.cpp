// SPDX-License-Identifier: Apache-2.0
#include "exmax/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>

#include "exmax/errors.hpp"
#include "exmax/specfun.hpp"

namespace exmax::dist {
namespace {

using std::numbers::pi;
constexpr double kSqrt2OverPi = 0.79788456080286535587989211986876373;  // sqrt(2/pi)
constexpr double kSqrtPiOver2 = 1.25331413731550025120788264240552263;  // sqrt(pi/2)

// Below this the alternating KS series is replaced by the theta form.
constexpr double kKsThetaCutoff = 0.05;
// Above this the two digamma values of A_digamma cancel to ~log(u) * eps.
constexpr double kAAsymptoticFrom = 1e4;
// The CDF is tiny below 1, where 1 - survival would only return rounding noise.
constexpr double kKsCdfThetaCutoff = 1.0;
// F switches from the theta series to the Gaussian series here.
constexpr double kFBranch = 1.0;

[[noreturn]] void domain(const char* what, double x) {
  std::ostringstream os;
  os << what << ": argument " << x << " outside domain";
  throw DomainError(os.str());
}

void check_terms(std::int64_t k, const EvalControl& ctl, const char* what) {
  if (k > ctl.max_terms) {
    throw ConvergenceError(std::string(what) + ": series exceeded max_terms");
  }
}

// Sum of positive terms t(0), t(1), ... whose ratios t(k+1)/t(k) decrease in
// k. Stops once the next term is below half the target and bounds the
// remainder geometrically.
SeriesValue positive_series(const std::function<double(std::int64_t)>& term,
                            const EvalControl& ctl, const char* what) {
  double sum = 0.0;
  double current = term(0);
  for (std::int64_t k = 0;; ++k) {
    check_terms(k, ctl, what);
    const double next = term(k + 1);
    sum += current;
    if (std::abs(next) <= 0.5 * ctl.target(sum)) {
      const double ratio = current != 0.0 ? std::abs(next / current) : 0.0;
      const double tail = ratio < 1.0 ? std::abs(next) / (1.0 - ratio) : std::abs(next);
      return {sum, k + 1, tail};
    }
    current = next;
  }
}

double ks_cdf_theta(double x, const EvalControl& ctl, SeriesValue* out = nullptr) {
  // P(b* <= x) = (sqrt(2 pi) / x) sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 x^2))
  const double scale = std::sqrt(2.0 * pi) / x;
  const double c = pi * pi / (8.0 * x * x);
  SeriesValue s = positive_series(
      [c](std::int64_t k) {
        const double odd = 2.0 * double(k) + 1.0;
        return std::exp(-odd * odd * c);
      },
      ctl, "ks_cdf");
  s.value *= scale;
  s.tail_bound *= scale;
  if (out != nullptr) {
    *out = s;
  }
  return s.value;
}

double invert_cdf(const std::function<double(double)>& cdf, double p, const EvalControl& ctl,
                  const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    domain(what, p);
  }
  std::int64_t evals = 0;
  auto eval = [&](double x) {
    if (++evals > ctl.max_evals) {
      throw ConvergenceError(std::string(what) + ": max_evals exhausted");
    }
    return cdf(x);
  };
  double lo = 0.0;
  double c_lo = 0.0;
  double hi = 1.0;
  double c_hi = eval(hi);
  while (c_hi < p) {
    lo = hi;
    c_lo = c_hi;
    hi *= 2.0;
    c_hi = eval(hi);
  }
  while (hi - lo > ctl.abs_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    const double c_mid = eval(mid);
    if (c_mid < p) {
      lo = mid;
      c_lo = c_mid;
    } else {
      hi = mid;
      c_hi = c_mid;
    }
  }
  if (c_hi > c_lo) {
    return std::clamp(lo + (p - c_lo) * (hi - lo) / (c_hi - c_lo), lo, hi);
  }
  return 0.5 * (lo + hi);
}

// One pair (2m-1, 2m) of the A series.
double a_pair(double m, double u) {
  const double odd = 2.0 * m - 1.0;
  const double even = 2.0 * m;
  return (even * odd - u) / ((odd * odd + u) * (even * even + u));
}

// d/dt of the pair term at continuous t.
double a_pair_derivative(double t, double u) {
  auto piece = [u](double s) {
    const double d = s * s + u;
    return 2.0 * (u - s * s) / (d * d);
  };
  return piece(2.0 * t - 1.0) - piece(2.0 * t);
}

// int_X^inf of the continuous pair term.
double a_pair_integral(double x, double u) {
  const double odd = 2.0 * x - 1.0;
  return 0.25 * std::log1p((4.0 * x - 1.0) / (odd * odd + u));
}

}  // namespace

double arcsine_pdf(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    domain("arcsine_pdf", x);
  }
  return 1.0 / (pi * std::sqrt(x * (1.0 - x)));
}

double arcsine_cdf(double x) {
  if (std::isnan(x)) {
    domain("arcsine_cdf", x);
  }
  if (x <= 0.0) {
    return 0.0;
  }
  if (x >= 1.0) {
    return 1.0;
  }
  return 2.0 / pi * std::asin(std::sqrt(x));
}

double arcsine_quantile(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    domain("arcsine_quantile", u);
  }
  const double s = std::sin(0.5 * pi * u);
  return s * s;
}

SeriesValue ks_survival(double x, const EvalControl& ctl) {
  if (!(x > 0.0)) {
    domain("ks_survival", x);
  }
  if (x < kKsThetaCutoff) {
    SeriesValue cdf;
    ks_cdf_theta(x, ctl, &cdf);
    return {std::clamp(1.0 - cdf.value, 0.0, 1.0), cdf.terms_used, cdf.tail_bound};
  }
  const double c = 2.0 * x * x;
  double sum = 0.0;
  for (std::int64_t k = 1;; ++k) {
    check_terms(k, ctl, "ks_survival");
    const double kk = double(k);
    const double term = 2.0 * std::exp(-c * kk * kk);
    if (k > 1 && term <= 0.5 * ctl.target(sum)) {
      return {std::clamp(sum, 0.0, 1.0), k - 1, term};
    }
    sum += (k % 2 == 1) ? term : -term;
  }
}

double ks_cdf(double x, const EvalControl& ctl) {
  if (std::isnan(x)) {
    domain("ks_cdf", x);
  }
  if (x <= 0.0) {
    return 0.0;
  }
  if (x < kKsCdfThetaCutoff) {
    return std::clamp(ks_cdf_theta(x, ctl), 0.0, 1.0);
  }
  return 1.0 - ks_survival(x, ctl).value;
}

double ks_quantile(double p, const EvalControl& ctl) {
  return invert_cdf([&ctl](double x) { return ks_cdf(x, ctl); }, p, ctl, "ks_quantile");
}

SeriesValue F_gauss(double x, const EvalControl& ctl) {
  if (!(x > 0.0)) {
    domain("F_gauss", x);
  }
  // Block K >= 1 gathers the even terms of k = K and k = -K and the odd
  // terms of k = K and k = -K-1, so after block K the equivalent alternating
  // series sum_{j in Z} (-1)^j exp(-j^2 x^2 / 2) holds every |j| <= 2K+1.
  const double h = 0.5 * x * x;
  auto g = [h](double j) { return std::exp(-h * j * j); };
  double sum = 1.0 - 2.0 * g(1.0);
  for (std::int64_t K = 1;; ++K) {
    check_terms(K, ctl, "F_gauss");
    const double kk = double(K);
    const double omitted = 2.0 * g(2.0 * kk);
    if (omitted <= 0.5 * ctl.target(kSqrt2OverPi * sum) / kSqrt2OverPi) {
      return {std::clamp(kSqrt2OverPi * sum, 0.0, kSqrt2OverPi), 2 * K, kSqrt2OverPi * omitted};
    }
    sum += omitted - 2.0 * g(2.0 * kk + 1.0);
  }
}

SeriesValue F_theta(double x, const EvalControl& ctl) {
  if (!(x > 0.0)) {
    domain("F_theta", x);
  }
  const double c = pi * pi / (2.0 * x * x);
  SeriesValue s = positive_series(
      [c](std::int64_t k) {
        const double odd = 2.0 * double(k) + 1.0;
        return std::exp(-odd * odd * c);
      },
      ctl, "F_theta");
  s.value *= 4.0 / x;
  s.tail_bound *= 4.0 / x;
  return s;
}

double F(double x, const EvalControl& ctl) {
  if (std::isnan(x)) {
    domain("F", x);
  }
  if (x <= 0.0) {
    return 0.0;
  }
  return x < kFBranch ? F_theta(x, ctl).value : F_gauss(x, ctl).value;
}

SeriesValue F_prime_gauss(double x, const EvalControl& ctl) {
  if (!(x > 0.0)) {
    domain("F_prime_gauss", x);
  }
  // sqrt(2/pi) sum_{j>=1} (-1)^{j+1} 2 j^2 x exp(-j^2 x^2 / 2)
  const double h = 0.5 * x * x;
  auto b = [h, x](double j) { return 2.0 * j * j * x * std::exp(-h * j * j); };
  // Term magnitudes decrease once j > sqrt(2)/x.
  const double monotone_from = std::numbers::sqrt2 / x;
  double sum = 0.0;
  for (std::int64_t j = 1;; ++j) {
    check_terms(j, ctl, "F_prime_gauss");
    const double jj = double(j);
    const double term = b(jj);
    if (jj > monotone_from + 1.0 && term <= 0.5 * ctl.target(kSqrt2OverPi * sum) / kSqrt2OverPi) {
      return {kSqrt2OverPi * sum, j - 1, kSqrt2OverPi * term};
    }
    sum += (j % 2 == 1) ? term : -term;
  }
}

SeriesValue F_prime_theta(double x, const EvalControl& ctl) {
  if (!(x > 0.0)) {
    domain("F_prime_theta", x);
  }
  // d/dx (4/x) exp(-c/x^2) = 4 exp(-c/x^2) (2c/x^4 - 1/x^2)
  const double inv2 = 1.0 / (x * x);
  SeriesValue s = positive_series(
      [inv2](std::int64_t k) {
        const double odd = 2.0 * double(k) + 1.0;
        const double c = odd * odd * pi * pi / 2.0;
        return 4.0 * std::exp(-c * inv2) * (2.0 * c * inv2 - 1.0) * inv2;
      },
      ctl, "F_prime_theta");
  return s;
}

double F_prime(double x, const EvalControl& ctl) {
  if (std::isnan(x)) {
    domain("F_prime", x);
  }
  if (x <= 0.0) {
    return 0.0;
  }
  return x < kFBranch ? F_prime_theta(x, ctl).value : F_prime_gauss(x, ctl).value;
}

double meander_max_cdf(double x, const EvalControl& ctl) {
  if (std::isnan(x)) {
    domain("meander_max_cdf", x);
  }
  if (x <= 0.0) {
    return 0.0;
  }
  return std::clamp(kSqrtPiOver2 * F(x, ctl), 0.0, 1.0);
}

double meander_max_quantile(double p, const EvalControl& ctl) {
  return invert_cdf([&ctl](double x) { return meander_max_cdf(x, ctl); }, p, ctl,
                    "meander_max_quantile");
}

SeriesValue A_direct(double u, const EvalControl& ctl) {
  if (!(u >= 0.0) || !std::isfinite(u)) {
    domain("A_direct", u);
  }
  // The remainder estimate is only trusted well past the turning point of
  // k / (k^2 + u) at k = sqrt(u).
  const double check_from = 4.0 * std::sqrt(u) + 16.0;
  double sum = 0.0;
  for (std::int64_t m = 1;; ++m) {
    check_terms(m, ctl, "A_direct");
    const double mm = double(m);
    sum += a_pair(mm, u);
    if (mm < check_from) {
      continue;
    }
    const double x = mm + 0.5;
    const double slope = a_pair_derivative(x, u);
    const double value = sum + a_pair_integral(x, u) + slope / 24.0;
    const double bound = 0.25 * std::abs(slope) / (x * x);
    if (bound <= 0.5 * ctl.target(value)) {
      return {value, 2 * m, bound};
    }
  }
}

double A_digamma(double u, const EvalControl& ctl) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    domain("A_digamma", u);
  }
  if (u >= kAAsymptoticFrom) {
    // psi(1/2 + iy) - psi(iy) expanded in 1/y with y^2 = u / 4; the real
    // parts of all terms share one sign, so nothing cancels. Next term is
    // below 1e-17 relative at the switch.
    constexpr std::array<double, 6> kCoeff = {1.0 / 16.0,    1.0 / 128.0,  1.0 / 256.0,
                                              17.0 / 4096.0, 31.0 / 4096.0, 691.0 / 32768.0};
    const double w = 4.0 / u;
    double sum = 0.0;
    for (auto it = kCoeff.rbegin(); it != kCoeff.rend(); ++it) {
      sum = sum * w + *it;
    }
    return sum * w;
  }
  const double s = 0.5 * std::sqrt(u);
  const std::complex<double> z0(0.0, s);
  const std::complex<double> z1(0.5, s);
  return 0.5 * (specfun::digamma(z0, ctl) - specfun::digamma(z1, ctl)).real();
}

double A(double u, const EvalControl& ctl) {
  return u == 0.0 ? A_direct(0.0, ctl).value : A_digamma(u, ctl);
}

quadrature::QuadratureResult x_survival(double x, const EvalControl& ctl) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    domain("x_survival", x);
  }
  const double rate = 2.0 * x * x;
  quadrature::QuadratureOptions opts;
  opts.value_at_origin = 4.0 / pi * std::numbers::ln2;
  opts.tail_bound = [x](double v) {
    // |A| <= 1 times the Gaussian tail.
    return 4.0 / pi * std::sqrt(pi / 8.0) / x * std::erfc(std::numbers::sqrt2 * x * v);
  };
  return quadrature::integrate_semi_infinite(
      [&ctl, rate](double v) {
        return 4.0 / pi * A_digamma(v * v, ctl) * std::exp(-rate * v * v);
      },
      ctl, std::max(1.0, rate), opts);
}

}  // namespace exmax::dist
