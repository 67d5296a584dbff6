#pragma once

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
// Series expansion below x < a + 1, Lentz continued fraction above; both
// are iterated to machine precision.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ctrlseg::stats {

namespace detail {

inline constexpr int kMaxIterations = 10000;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kTiny = std::numeric_limits<double>::min() / kEps;

// P(a,x) via sum x^n / (a (a+1) ... (a+n)).
inline double lower_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a,x) via the continued fraction 1/(x+1-a- 1(1-a)/(x+3-a- 2(2-a)/(x+5-a- ...))).
inline double upper_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

inline double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || std::isnan(x)) throw std::domain_error("gamma_p: need a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return detail::lower_series(a, x);
  return 1.0 - detail::upper_fraction(a, x);
}

inline double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || std::isnan(x)) throw std::domain_error("gamma_q: need a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - detail::lower_series(a, x);
  return detail::upper_fraction(a, x);
}

// Upper tail of the chi-square distribution with df degrees of freedom.
inline double chi_square_upper_tail(double statistic, double df) {
  if (statistic <= 0.0) return 1.0;
  return gamma_q(df / 2.0, statistic / 2.0);
}

}  // namespace ctrlseg::stats
