#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "gpi/common.hpp"

namespace gpi {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;  // self-reported estimate
  int subdivisions = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss nodes and weights on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  double value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gk15(F&& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double f_lower[7], f_upper[7];
  const double f_center = f(center);
  double result_gauss = kGaussWeights[3] * f_center;
  double result_kronrod = kKronrodWeights[7] * f_center;
  double resabs = kKronrodWeights[7] * std::abs(f_center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    f_lower[i] = f(center - dx);
    f_upper[i] = f(center + dx);
    result_kronrod += kKronrodWeights[i] * (f_lower[i] + f_upper[i]);
    resabs += kKronrodWeights[i] * (std::abs(f_lower[i]) + std::abs(f_upper[i]));
  }
  // Gauss points are the odd-index Kronrod nodes.
  result_gauss += kGaussWeights[0] * (f_lower[1] + f_upper[1]) +
                  kGaussWeights[1] * (f_lower[3] + f_upper[3]) +
                  kGaussWeights[2] * (f_lower[5] + f_upper[5]);
  const double mean = result_kronrod * 0.5;
  double resasc = kKronrodWeights[7] * std::abs(f_center - mean);
  for (int i = 0; i < 7; ++i) {
    resasc += kKronrodWeights[i] * (std::abs(f_lower[i] - mean) + std::abs(f_upper[i] - mean));
  }
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((result_kronrod - result_gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50) {
    err = std::max(err, eps50 * resabs);
  }
  return {lo, hi, result_kronrod * half, err};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration: repeatedly bisect the panel
// with the largest local error until the summed error estimate meets
// max(abs_tol, rel_tol * |value|) or the subdivision cap is hit.
template <class F>
QuadResult integrate_adaptive(F&& f, double lo, double hi, double abs_tol, double rel_tol,
                              int max_subdivisions = 4000) {
  std::priority_queue<detail::Panel> queue;
  detail::Panel whole = detail::gk15(f, lo, hi);
  double total = whole.value;
  double total_err = whole.error;
  queue.push(whole);
  QuadResult out;
  for (int n = 0; n < max_subdivisions; ++n) {
    if (total_err <= std::max(abs_tol, rel_tol * std::abs(total))) {
      out.value = total;
      out.abs_error = total_err;
      out.subdivisions = n;
      out.converged = true;
      return out;
    }
    const detail::Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const detail::Panel left = detail::gk15(f, worst.lo, mid);
    const detail::Panel right = detail::gk15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  out.value = total;
  out.abs_error = total_err;
  out.subdivisions = max_subdivisions;
  out.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total));
  return out;
}

}  // namespace gpi
