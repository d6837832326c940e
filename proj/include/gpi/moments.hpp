#pragma once

#include <cmath>

#include "gpi/common.hpp"
#include "gpi/special_functions.hpp"

namespace gpi {

// Exponent pair (alpha1, alpha2); both must exceed -1 so the marginal
// absolute moments are finite.
struct ExponentPair {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

// Sign pattern of the exponent pair; decides which inequality direction is
// asserted for the joint-vs-product comparison.
enum class Regime {
  SameSignPositive,  // alpha1 > 0 and alpha2 > 0
  SameSignNegative,  // -1 < alpha1 < 0 and -1 < alpha2 < 0
  OppositeSign,      // alpha1 * alpha2 < 0
  Degenerate,        // alpha1 == 0 or alpha2 == 0
};

// Standard deviations and correlation of the centered Gaussian pair.
struct BivariatePairSpec {
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  double rho = 0.0;
};

enum class MomentMethod { closed_form, hypergeometric, limit_rho_one };

struct MomentValue {
  double value = 0.0;
  MomentMethod method = MomentMethod::closed_form;
  double error_bound = 0.0;  // absolute
};

namespace detail {

inline void validate_pair(const ExponentPair& pair) {
  require_domain(std::isfinite(pair.alpha1) && pair.alpha1 > -1.0 &&
                     std::isfinite(pair.alpha2) && pair.alpha2 > -1.0,
                 "exponent pair: requires alpha1 > -1 and alpha2 > -1");
}

inline void validate_spec(const BivariatePairSpec& spec) {
  require_domain(std::isfinite(spec.sigma1) && spec.sigma1 > 0.0 &&
                     std::isfinite(spec.sigma2) && spec.sigma2 > 0.0,
                 "pair spec: requires sigma1 > 0 and sigma2 > 0");
  require_domain(std::isfinite(spec.rho) && std::abs(spec.rho) <= 1.0,
                 "pair spec: requires -1 <= rho <= 1");
}

// Generic relative rounding allowance attached to closed-form values.
inline constexpr double kClosedFormRel = 1e-13;

inline double unit_abs_moment(double nu) {
  // E|U|^nu = 2^(nu/2) Gamma((nu+1)/2) / sqrt(pi) for standard Gaussian U.
  return std::exp(0.5 * nu * kLn2 + log_gamma(0.5 * (nu + 1.0)) - 0.5 * kLnPi);
}

}  // namespace detail

// E|X|^nu for X ~ N(0, sigma^2), finite exactly when nu > -1.
inline MomentValue marginal_abs_moment(double nu, double sigma = 1.0) {
  detail::require_domain(std::isfinite(nu) && nu > -1.0,
                         "marginal_abs_moment: requires nu > -1");
  detail::require_domain(std::isfinite(sigma) && sigma > 0.0,
                         "marginal_abs_moment: requires sigma > 0");
  const double value = std::pow(sigma, nu) * detail::unit_abs_moment(nu);
  return {value, MomentMethod::closed_form, std::abs(value) * detail::kClosedFormRel};
}

// E|X1|^a1 * E|X2|^a2; independent of rho.
inline MomentValue marginal_product(const ExponentPair& pair, const BivariatePairSpec& spec) {
  detail::validate_pair(pair);
  detail::validate_spec(spec);
  const MomentValue m1 = marginal_abs_moment(pair.alpha1, spec.sigma1);
  const MomentValue m2 = marginal_abs_moment(pair.alpha2, spec.sigma2);
  const double value = m1.value * m2.value;
  return {value, MomentMethod::closed_form, std::abs(value) * 2.0 * detail::kClosedFormRel};
}

// Moment-ratio kernel G(rho^2) = F(-alpha1/2, -alpha2/2; 1/2; rho^2) with its
// series truncation accounting.  Scale-free: equals the joint moment divided
// by the product of marginals.
inline SeriesEvaluation moment_ratio_eval(const ExponentPair& pair, double rho) {
  detail::validate_pair(pair);
  detail::require_domain(std::isfinite(rho) && std::abs(rho) <= kRhoCap,
                         "moment_ratio: requires |rho| <= 0.9975");
  return gauss_2f1(-0.5 * pair.alpha1, -0.5 * pair.alpha2, 0.5, rho * rho);
}

inline double moment_ratio(const ExponentPair& pair, double rho) {
  return moment_ratio_eval(pair, rho).value;
}

// E[|X1|^a1 |X2|^a2] for the centered correlated pair.  For |rho| < 1 this is
// Nabeya's closed form: marginal product times the kernel G(rho^2).  At
// |rho| = 1 the pair is almost surely proportional, so the joint moment
// reduces to a single marginal of order a1+a2 (finite only when a1+a2 > -1).
inline MomentValue joint_abs_moment(const ExponentPair& pair, const BivariatePairSpec& spec) {
  detail::validate_pair(pair);
  detail::validate_spec(spec);
  const double a1 = pair.alpha1, a2 = pair.alpha2;
  if (std::abs(spec.rho) == 1.0) {
    detail::require_domain(a1 + a2 > -1.0,
                           "joint_abs_moment: diverges at |rho| = 1 when alpha1+alpha2 <= -1");
    const double value = std::pow(spec.sigma1, a1) * std::pow(spec.sigma2, a2) *
                         detail::unit_abs_moment(a1 + a2);
    return {value, MomentMethod::limit_rho_one, std::abs(value) * detail::kClosedFormRel};
  }
  detail::require_domain(std::abs(spec.rho) <= kRhoCap,
                         "joint_abs_moment: 0.9975 < |rho| < 1 is outside the series range");
  const MomentValue product = marginal_product(pair, spec);
  const SeriesEvaluation kernel = moment_ratio_eval(pair, spec.rho);
  const double value = product.value * kernel.value;
  const double error = product.value * kernel.tail_bound +
                       std::abs(value) * 2.0 * detail::kClosedFormRel;
  return {value, MomentMethod::hypergeometric, error};
}

// Joint-over-product ratio when alpha2 = 2m is an even integer: the explicit
// finite sum
//   (1-r)^m + sum_{j=1}^m C(m,j) rho^(2j) (1-r)^(m-j) *
//             [a1+(2j-1)][a1+(2j-3)]...(a1+1) / (2j-1)!!,   r = rho^2,
// with the rising product and double factorial folded into one running
// factor.  Exact finite arithmetic; no truncation.
inline double even_exponent_ratio(double alpha1, int m, double rho) {
  detail::require_domain(std::isfinite(alpha1) && alpha1 > -1.0,
                         "even_exponent_ratio: requires alpha1 > -1");
  detail::require_domain(m >= 1, "even_exponent_ratio: requires m >= 1");
  detail::require_domain(std::isfinite(rho) && std::abs(rho) < 1.0,
                         "even_exponent_ratio: requires |rho| < 1");
  const double r = rho * rho;
  const double omr = 1.0 - r;
  double sum = std::pow(omr, m);
  double binom = 1.0;
  double rising = 1.0;  // [a1+(2j-1)]...[a1+1] / (2j-1)!!
  for (int j = 1; j <= m; ++j) {
    binom *= static_cast<double>(m - j + 1) / static_cast<double>(j);
    rising *= (alpha1 + static_cast<double>(2 * j - 1)) / static_cast<double>(2 * j - 1);
    sum += binom * std::pow(r, j) * std::pow(omr, m - j) * rising;
  }
  return sum;
}

// One-dimensional ratio E|X|^(a1+a2) / (E|X|^a1 E|X|^a2) as the Beta ratio
//   B((a1+a2+1)/2, 1/2) / B((a1+1)/2, (a2+1)/2).
// Requires all three moments finite: a1, a2 > -1 and a1+a2 > -1.
inline double one_dim_ratio(double alpha1, double alpha2) {
  detail::require_domain(std::isfinite(alpha1) && alpha1 > -1.0 &&
                             std::isfinite(alpha2) && alpha2 > -1.0,
                         "one_dim_ratio: requires alpha1, alpha2 > -1");
  detail::require_domain(alpha1 + alpha2 > -1.0,
                         "one_dim_ratio: requires alpha1 + alpha2 > -1");
  const double lb_top = detail::log_beta(0.5 * (alpha1 + alpha2 + 1.0), 0.5);
  const double lb_bottom = detail::log_beta(0.5 * (alpha1 + 1.0), 0.5 * (alpha2 + 1.0));
  return std::exp(lb_top - lb_bottom);
}

}  // namespace gpi
