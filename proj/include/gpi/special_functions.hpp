#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpi/common.hpp"

namespace gpi {

// Truncated series or product value together with a certified bound on the
// truncation error (absolute value) and the number of terms consumed.
struct SeriesEvaluation {
  double value = 0.0;
  long terms_used = 1;
  double tail_bound = 0.0;
};

// Arguments of the Gauss hypergeometric series F(a,b;c;z).
// Valid when |z| <= kZCap and c is not zero or a negative integer.
struct HypergeometricInput {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double z = 0.0;
};

// ln Gamma(x) for x > 0 via a Lanczos rational approximation.  The trailing
// /x factor shifts arguments in (0,1) onto the fit's sweet spot through the
// recurrence Gamma(x) = Gamma(x+1)/x.
inline double log_gamma(double x) {
  detail::require_domain(std::isfinite(x) && x > 0.0, "log_gamma: requires finite x > 0");
  static constexpr double kCof[14] = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
      -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
      -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
      0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
      -0.261908384015814087e-4, 0.368991826595316234e-5};
  double y = x;
  double tmp = x + 5.24218750000000000;  // g + 1/2 with g = 671/128
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (const double c : kCof) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

// Gamma(x) = exp(log_gamma(x)); overflows the double range near x = 171.62.
inline double gamma(double x) {
  const double lg = log_gamma(x);
  if (lg >= 709.782) throw std::overflow_error("gamma: result exceeds double range");
  return std::exp(lg);
}

// n!! = n(n-2)(n-4)... with the empty-product convention 0!! = 1.
inline double double_factorial(long n) {
  detail::require_domain(n >= 0, "double_factorial: requires n >= 0");
  double p = 1.0;
  for (long k = n; k >= 2; k -= 2) p *= static_cast<double>(k);
  return p;
}

namespace detail {

inline double log_beta(double x, double y) {
  return log_gamma(x) + log_gamma(y) - log_gamma(x + y);
}

}  // namespace detail

// B(x,y) = Gamma(x)Gamma(y)/Gamma(x+y), evaluated in log space.
inline double beta(double x, double y) {
  detail::require_domain(std::isfinite(x) && std::isfinite(y) && x > 0.0 && y > 0.0,
                         "beta: requires x > 0 and y > 0");
  return std::exp(detail::log_beta(x, y));
}

// B(x,y) through the infinite product
//   B(x,y) = ((x+y)/(xy)) * prod_{n>=1} (1 + xy/(n(x+y+n)))^-1.
// The factors past n are folded in through the midpoint-rule integral of the
// log-factors, leaving a certified residual that decays like 1/n^3:
//   |error| <= value * ( xy/(12 M^3) + xy/(4 M^4) + (xy)^2/(6 n^3) + rounding )
// with M = n+1/2 (midpoint-rule remainder plus the quadratic part of the
// log-factors).  Iteration stops once the bound drops below 1e-10 * value.
inline SeriesEvaluation beta_product(double x, double y, long max_factors) {
  detail::require_domain(std::isfinite(x) && std::isfinite(y) && x > 0.0 && y > 0.0,
                         "beta_product: requires x > 0 and y > 0");
  detail::require_domain(max_factors >= 1, "beta_product: requires max_factors >= 1");
  constexpr double kRelTarget = 1e-10;
  const double s = x + y;
  const double xy = x * y;
  const double prefactor = s / xy;
  double product = 1.0;
  for (long n = 1; n <= max_factors; ++n) {
    product /= 1.0 + xy / (static_cast<double>(n) * (s + static_cast<double>(n)));
    const double nn = static_cast<double>(n);
    const double mid = nn + 0.5;
    // Midpoint-integral estimate of sum_{k>n} xy/(k(k+s)).
    const double tail_log = (xy / s) * std::log1p(s / mid);
    const double value = prefactor * product * std::exp(-tail_log);
    const double mid3 = mid * mid * mid;
    const double rel_err = xy / (12.0 * mid3) + xy / (4.0 * mid3 * mid) +
                           (xy * xy) / (6.0 * nn * nn * nn) +
                           (nn + 4.0) * std::numeric_limits<double>::epsilon();
    const double bound = std::abs(value) * rel_err;
    if (bound <= kRelTarget * std::abs(value)) {
      return {value, n, bound};
    }
  }
  throw convergence_error("beta_product: tail bound target unreachable within max_factors");
}

namespace detail {

// Raw power series for F(a,b;c;z) with compensated summation.  Also used for
// the exactly terminating case (a or b a non-positive integer), where the
// loop exits with tail_bound = 0 once the running term hits an exact zero.
//
// The certified tail bound is geometric: once every factor of the term ratio
//   r_k = z (a+k)(b+k) / ((c+k)(1+k))
// is positive for k >= m, the ratio magnitudes are bounded by
//   R = |z| * max(1, (a+m)/(1+m)) * max(1, (b+m)/(c+m))
// (each fraction is monotone toward 1), so the remaining mass past term m is
// at most |t_m| R / (1 - R) whenever R < 1.
inline SeriesEvaluation hyp2f1_series(double a, double b, double c, double z) {
  if (z == 0.0) return {1.0, 1, 0.0};
  const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  KahanSum sum;
  sum.add(1.0);
  double term = 1.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (long n = 0; n < kMaxSeriesTerms; ++n) {
    const double k = static_cast<double>(n);
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    if (term == 0.0) {
      // Exact termination of the polynomial case; otherwise underflow, where
      // the remaining mass is below the representable range anyway.
      return {sum.sum, n + 1, terminating ? 0.0 : 1e-300};
    }
    sum.add(term);
    if (!std::isfinite(term)) {
      throw convergence_error("gauss_2f1: series terms overflowed before convergence");
    }
    const double m = k + 1.0;  // index of the term just added
    if (a + m > 0.0 && b + m > 0.0 && c + m > 0.0) {
      const double ratio_cap = std::abs(z) * std::max(1.0, (a + m) / (1.0 + m)) *
                               std::max(1.0, (b + m) / (c + m));
      if (ratio_cap < 1.0) {
        const double tail = std::abs(term) * ratio_cap / (1.0 - ratio_cap);
        if (tail <= 0.5 * eps * std::abs(sum.sum) || tail < 1e-300) {
          return {sum.sum, n + 2, tail};
        }
      }
    }
  }
  throw convergence_error("gauss_2f1: term cap reached before the tail bound target");
}

}  // namespace detail

// Gauss hypergeometric function F(a,b;c;z) for |z| <= kZCap.
//
// Dispatch: exactly terminating series when a or b is a non-positive integer;
// otherwise the raw power series, routed through the Euler transformation
//   F(a,b;c;z) = (1-z)^(c-a-b) F(c-a,c-b;c;z)
// when z > 0.75, c-a-b > 0 and the transformed parameters are smaller in
// product magnitude (for the moment-ratio families the transformed series has
// all-positive terms).
inline SeriesEvaluation gauss_2f1(const HypergeometricInput& in) {
  const double a = in.a, b = in.b, c = in.c, z = in.z;
  detail::require_domain(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) &&
                             std::isfinite(z),
                         "gauss_2f1: requires finite arguments");
  detail::require_domain(!detail::is_nonpositive_integer(c),
                         "gauss_2f1: c must not be zero or a negative integer");
  detail::require_domain(std::abs(z) <= kZCap, "gauss_2f1: |z| exceeds the series cap");
  if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b)) {
    return detail::hyp2f1_series(a, b, c, z);
  }
  const double d = c - a - b;
  if (z > 0.75 && d > 0.0 && std::abs((c - a) * (c - b)) < std::abs(a * b)) {
    SeriesEvaluation inner = detail::hyp2f1_series(c - a, c - b, c, z);
    const double prefactor = std::pow(1.0 - z, d);
    const double value = prefactor * inner.value;
    const double tail = prefactor * inner.tail_bound +
                        4.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
    return {value, inner.terms_used, tail};
  }
  return detail::hyp2f1_series(a, b, c, z);
}

inline SeriesEvaluation gauss_2f1(double a, double b, double c, double z) {
  return gauss_2f1(HypergeometricInput{a, b, c, z});
}

// Derivative of the moment-ratio kernel G(z) = F(-a1/2,-a2/2;1/2;z), in the
// Euler-transformed form that makes its sign explicit:
//   G'(z) = (a1 a2 / 2) (1-z)^((a1+a2-1)/2) F((a1+1)/2, (a2+1)/2; 3/2; z).
// The residual factor is a positive-term series, so sign(G') = sign(a1 a2).
inline double gpi_kernel_derivative(double alpha1, double alpha2, double z) {
  detail::require_domain(alpha1 > -1.0 && alpha2 > -1.0,
                         "gpi_kernel_derivative: requires alpha1, alpha2 > -1");
  detail::require_domain(std::isfinite(z) && std::abs(z) <= kZCap,
                         "gpi_kernel_derivative: |z| exceeds the series cap");
  if (alpha1 == 0.0 || alpha2 == 0.0) return 0.0;
  const SeriesEvaluation f =
      gauss_2f1(0.5 * (alpha1 + 1.0), 0.5 * (alpha2 + 1.0), 1.5, z);
  return 0.5 * alpha1 * alpha2 * std::pow(1.0 - z, 0.5 * (alpha1 + alpha2 - 1.0)) * f.value;
}

}  // namespace gpi
