#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>

#include "gpi/common.hpp"
#include "gpi/moments.hpp"
#include "gpi/quadrature.hpp"
#include "gpi/rng.hpp"

namespace gpi {

// Sample-mean estimate with its CLT error bar.  The error bar is only
// meaningful when the integrand has finite variance: E|X|^(2a) < infinity
// iff 2a > -1, so variance_finite = (alpha1 > -1/2 and alpha2 > -1/2);
// otherwise the mean is still consistent but std_error is indicative only.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long n_samples = 0;
  std::uint64_t seed = 0;
  bool variance_finite = true;
};

struct QuadratureEstimate {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
};

// Monte Carlo estimate of E[|X1|^a1 |X2|^a2] using the exact-correlation
// construction X1 = s1 U1, X2 = s2 (rho U1 + sqrt(1-rho^2) U2) with
// independent standard Gaussians drawn from counter-based substreams, so the
// result is a pure function of (inputs, seed) at any sharding.
inline McEstimate mc_joint_moment(const ExponentPair& pair, const BivariatePairSpec& spec,
                                  long long n, std::uint64_t seed) {
  detail::validate_pair(pair);
  detail::validate_spec(spec);
  detail::require_domain(n >= 1000, "mc_joint_moment: requires n >= 1000");
  const double a1 = pair.alpha1, a2 = pair.alpha2;
  const double cross = std::sqrt((1.0 - spec.rho) * (1.0 + spec.rho));
  detail::KahanSum sum;
  detail::KahanSum sum_sq;
  for (long long i = 0; i < n; ++i) {
    const std::uint64_t k = static_cast<std::uint64_t>(i);
    const double u1 = rng::standard_normal(seed, 2 * k);
    const double u2 = rng::standard_normal(seed, 2 * k + 1);
    const double x1 = spec.sigma1 * u1;
    const double x2 = spec.sigma2 * (spec.rho * u1 + cross * u2);
    const double v = std::pow(std::abs(x1), a1) * std::pow(std::abs(x2), a2);
    sum.add(v);
    sum_sq.add(v * v);
  }
  const double nd = static_cast<double>(n);
  const double mean = sum.sum / nd;
  const double var = std::max(0.0, (sum_sq.sum / nd - mean * mean) * nd / (nd - 1.0));
  McEstimate out;
  out.mean = mean;
  out.std_error = std::sqrt(var / nd);
  out.n_samples = n;
  out.seed = seed;
  out.variance_finite = a1 > -0.5 && a2 > -0.5;
  return out;
}

namespace detail {

inline double normal_density(double y, double mu, double sd) {
  const double t = (y - mu) / sd;
  return std::exp(-0.5 * t * t) / (sd * kSqrt2Pi);
}

// integral of v^alpha g(v) dv over [0, c].  For alpha < 0 the endpoint
// singularity is removed by v = t^(1/(1+alpha)), under which
// v^alpha dv = dt/(1+alpha) and the transformed integrand is bounded.
template <class G>
QuadResult power_weighted_half(G&& g, double alpha, double c, double rel_tol,
                               int max_subdivisions) {
  if (c <= 0.0) return {0.0, 0.0, 0, true};
  if (alpha < 0.0) {
    const double p = 1.0 + alpha;
    const double upper = std::pow(c, p);
    auto transformed = [&](double t) { return g(std::pow(t, 1.0 / p)); };
    QuadResult r = integrate_adaptive(transformed, 0.0, upper, 0.0, rel_tol, max_subdivisions);
    r.value /= p;
    r.abs_error /= p;
    return r;
  }
  auto direct = [&](double v) { return std::pow(v, alpha) * g(v); };
  return integrate_adaptive(direct, 0.0, c, 0.0, rel_tol, max_subdivisions);
}

// E|Y|^alpha for Y ~ N(mu, sd^2), truncated at 40 conditional deviations,
// with the |y|^alpha kink/singularity isolated at zero.
inline QuadResult folded_moment(double alpha, double mu, double sd, double rel_tol,
                                int max_subdivisions) {
  const double lo = mu - 40.0 * sd;
  const double hi = mu + 40.0 * sd;
  QuadResult total;
  total.converged = true;
  auto accumulate = [&](const QuadResult& piece) {
    total.value += piece.value;
    total.abs_error += piece.abs_error;
    total.subdivisions += piece.subdivisions;
    total.converged = total.converged && piece.converged;
  };
  if (hi > 0.0) {
    const double base = std::max(lo, 0.0);
    // [base, hi] on the positive axis; singular endpoint only when base == 0.
    if (base == 0.0) {
      accumulate(power_weighted_half([&](double v) { return normal_density(v, mu, sd); },
                                     alpha, hi, rel_tol, max_subdivisions));
    } else {
      accumulate(integrate_adaptive(
          [&](double y) { return std::pow(y, alpha) * normal_density(y, mu, sd); }, base, hi,
          0.0, rel_tol, max_subdivisions));
    }
  }
  if (lo < 0.0) {
    const double top = -std::min(hi, 0.0);
    const double bottom = -lo;  // reflect: integrate v in [top, bottom], v = -y
    if (top == 0.0) {
      accumulate(power_weighted_half([&](double v) { return normal_density(-v, mu, sd); },
                                     alpha, bottom, rel_tol, max_subdivisions));
    } else {
      accumulate(integrate_adaptive(
          [&](double v) { return std::pow(v, alpha) * normal_density(-v, mu, sd); }, top,
          bottom, 0.0, rel_tol, max_subdivisions));
    }
  }
  return total;
}

// log of a certified bound on the discarded outer tail
// 2 s1^a1 int_{40}^inf u^a1 phi(u) inner(u) du; underflows to zero in
// practice but is accounted for explicitly.
inline double log_outer_tail_bound(double a1, double a2, const BivariatePairSpec& spec,
                                   double cond_sd) {
  constexpr double kCut = 40.0;
  const double log_phi_tail = -0.5 * kCut * kCut - std::log(kCut * kSqrt2Pi);
  double log_inner_sup;
  if (a2 >= 0.0) {
    // E|Y|^a2 <= 2^a2 (|mu|^a2 + sd^a2 E|Z|^a2) with |mu| growing linearly in
    // u; fold the polynomial growth into an extra a2 power of u at the cut.
    const double mu_slope = spec.sigma2 * std::abs(spec.rho) + cond_sd + 1.0;
    log_inner_sup = a2 * kLn2 + a2 * std::log(mu_slope) + a2 * std::log(kCut) +
                    std::log1p(unit_abs_moment(a2));
  } else {
    // Negative exponents: the folded moment is largest at mu = 0.
    log_inner_sup = a2 * std::log(cond_sd) + std::log(unit_abs_moment(a2));
  }
  const double log_u_power = std::max(a1, 0.0) * std::log(kCut);
  return kLn2 + a1 * std::log(spec.sigma1) + log_phi_tail + log_u_power + log_inner_sup +
         std::log(2.0);
}

}  // namespace detail

// E[|X1|^a1 |X2|^a2] by nested adaptive quadrature, independent of the
// hypergeometric route: outer integral over u = X1/sigma1 (even integrand,
// folded to [0, 40]) of the conditional folded moment of X2 given u.
inline QuadratureEstimate quad_joint_moment(const ExponentPair& pair,
                                            const BivariatePairSpec& spec, double rel_tol,
                                            int max_subdivisions = 1500) {
  detail::validate_pair(pair);
  detail::validate_spec(spec);
  detail::require_domain(std::abs(spec.rho) <= 0.999,
                         "quad_joint_moment: requires |rho| <= 0.999");
  detail::require_domain(std::isfinite(rel_tol) && rel_tol >= 1e-10 && rel_tol < 1.0,
                         "quad_joint_moment: requires 1e-10 <= rel_tol < 1");
  detail::require_domain(max_subdivisions >= 1,
                         "quad_joint_moment: requires max_subdivisions >= 1");
  const double a1 = pair.alpha1, a2 = pair.alpha2;
  const double cond_sd = spec.sigma2 * std::sqrt((1.0 - spec.rho) * (1.0 + spec.rho));
  const double inner_rel = 0.2 * rel_tol;
  const int inner_cap = std::max(1, max_subdivisions / 2);
  int inner_subdivisions = 0;
  bool inner_converged = true;
  auto conditional_moment = [&](double u) {
    if (a2 == 0.0) return 1.0;
    const double mu = spec.sigma2 * spec.rho * u;
    const QuadResult r = detail::folded_moment(a2, mu, cond_sd, inner_rel, inner_cap);
    inner_subdivisions += r.subdivisions;
    inner_converged = inner_converged && r.converged;
    return r.value;
  };
  auto outer_profile = [&](double u) {
    return detail::normal_density(u, 0.0, 1.0) * conditional_moment(u);
  };
  const QuadResult outer =
      detail::power_weighted_half(outer_profile, a1, 40.0, rel_tol, max_subdivisions);
  if (!outer.converged || !inner_converged) {
    throw convergence_error("quad_joint_moment: subdivision cap reached before tolerance");
  }
  const double scale = 2.0 * std::pow(spec.sigma1, a1);
  const double value = scale * outer.value;
  const double tail = std::exp(detail::log_outer_tail_bound(a1, a2, spec, cond_sd));
  QuadratureEstimate out;
  out.value = value;
  out.abs_error_estimate =
      scale * outer.abs_error + std::abs(value) * 2.0 * inner_rel + tail;
  out.subdivisions = outer.subdivisions + inner_subdivisions;
  return out;
}

// Exact E[X1^(2p) X2^(2q)] at unit variances by enumerating perfect pairings
// of the 2p+2q factors: cross pairings contribute rho each, within-block
// pairings contribute 1, so the moment is an integer-coefficient polynomial
// in rho evaluated here by Horner.
inline double isserlis_even_moment(int p, int q, double rho) {
  detail::require_domain(p >= 0 && q >= 0, "isserlis_even_moment: requires p, q >= 0");
  detail::require_domain(p + q <= 6, "isserlis_even_moment: requires p + q <= 6");
  detail::require_domain(std::isfinite(rho) && std::abs(rho) <= 1.0,
                         "isserlis_even_moment: requires |rho| <= 1");
  const int n = 2 * (p + q);
  if (n == 0) return 1.0;
  std::array<long long, 7> cross_counts{};
  std::array<bool, 12> matched{};
  const int first_block = 2 * p;
  const std::function<void(int, int)> enumerate = [&](int done, int crossings) {
    if (done == n) {
      cross_counts[static_cast<std::size_t>(crossings)] += 1;
      return;
    }
    int i = 0;
    while (matched[static_cast<std::size_t>(i)]) ++i;
    matched[static_cast<std::size_t>(i)] = true;
    for (int j = i + 1; j < n; ++j) {
      if (matched[static_cast<std::size_t>(j)]) continue;
      matched[static_cast<std::size_t>(j)] = true;
      const bool is_cross = (i < first_block) != (j < first_block);
      enumerate(done + 2, crossings + (is_cross ? 1 : 0));
      matched[static_cast<std::size_t>(j)] = false;
    }
    matched[static_cast<std::size_t>(i)] = false;
  };
  enumerate(0, 0);
  double value = 0.0;
  for (int k = 6; k >= 0; --k) {
    value = value * rho + static_cast<double>(cross_counts[static_cast<std::size_t>(k)]);
  }
  return value;
}

}  // namespace gpi
