#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gpi/common.hpp"
#include "gpi/moments.hpp"
#include "gpi/special_functions.hpp"

namespace gpi {

enum class Statement {
  BivariateGPI,          // joint >= product, same-sign exponents
  BivariateOppositeGPI,  // joint <= product, opposite-sign exponents
  OneDimUpper,           // 1-D ratio < algebraic threshold
  OneDimLower,           // 1-D ratio > algebraic threshold
  MonotoneDecreasing,    // G'(z) < 0 on the grid
  MonotoneIncreasing,    // G'(z) > 0 on the grid
};

enum class Verdict { HoldsStrict, Equality, Violated };

// Outcome of one inequality check.  The invariants are:
//   verdict == Equality   iff |margin| <= tolerance,
//   verdict == Violated   iff margin has the forbidden sign and
//                             |margin| > tolerance.
// Violated is an ordinary return value, never an exception: sweeps must run
// to completion and report anomalies.
struct InequalityVerdict {
  Statement statement = Statement::BivariateGPI;
  double ratio = 0.0;
  double threshold = 0.0;
  double margin = 0.0;  // ratio - threshold, signed
  double tolerance = 0.0;
  Verdict verdict = Verdict::Equality;
  double error_bound = 0.0;  // certified numeric error of the ratio
  std::string method;
};

inline const char* to_string(Statement s) {
  switch (s) {
    case Statement::BivariateGPI: return "BivariateGPI";
    case Statement::BivariateOppositeGPI: return "BivariateOppositeGPI";
    case Statement::OneDimUpper: return "OneDimUpper";
    case Statement::OneDimLower: return "OneDimLower";
    case Statement::MonotoneDecreasing: return "MonotoneDecreasing";
    case Statement::MonotoneIncreasing: return "MonotoneIncreasing";
  }
  return "?";
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::HoldsStrict: return "HoldsStrict";
    case Verdict::Equality: return "Equality";
    case Verdict::Violated: return "Violated";
  }
  return "?";
}

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::SameSignPositive: return "SameSignPositive";
    case Regime::SameSignNegative: return "SameSignNegative";
    case Regime::OppositeSign: return "OppositeSign";
    case Regime::Degenerate: return "Degenerate";
  }
  return "?";
}

inline Regime classify_regime(const ExponentPair& pair) {
  detail::validate_pair(pair);
  const double a1 = pair.alpha1, a2 = pair.alpha2;
  if (a1 == 0.0 || a2 == 0.0) return Regime::Degenerate;
  if (a1 > 0.0 && a2 > 0.0) return Regime::SameSignPositive;
  if (a1 < 0.0 && a2 < 0.0) return Regime::SameSignNegative;
  return Regime::OppositeSign;
}

namespace detail {

// expected: +1 ratio should exceed threshold, -1 should fall below,
// 0 equality expected.
inline Verdict resolve_verdict(double margin, double tolerance, int expected) {
  if (std::abs(margin) <= tolerance) return Verdict::Equality;
  if (expected == 0) return Verdict::Violated;
  return (margin > 0.0) == (expected > 0) ? Verdict::HoldsStrict : Verdict::Violated;
}

}  // namespace detail

namespace detail {

inline InequalityVerdict make_bivariate_verdict(Regime regime, const SeriesEvaluation& kernel,
                                                double tolerance) {
  InequalityVerdict out;
  out.statement = regime == Regime::OppositeSign ? Statement::BivariateOppositeGPI
                                                 : Statement::BivariateGPI;
  out.ratio = kernel.value;
  out.threshold = 1.0;
  out.margin = kernel.value - 1.0;
  out.tolerance = tolerance;
  out.error_bound = kernel.tail_bound + std::abs(kernel.value) * 1e-14;
  out.method = "hypergeometric";
  const int expected = regime == Regime::Degenerate ? 0
                       : regime == Regime::OppositeSign ? -1
                                                        : +1;
  out.verdict = resolve_verdict(out.margin, tolerance, expected);
  return out;
}

}  // namespace detail

// Joint-vs-product comparison at the given correlation.  Same-sign regimes
// assert ratio >= 1, the opposite-sign regime asserts ratio <= 1; equality is
// expected exactly at independence (rho = 0) or a zero exponent.
inline InequalityVerdict check_bivariate(const ExponentPair& pair, double rho,
                                         double tolerance) {
  detail::require_domain(std::isfinite(tolerance) && tolerance > 0.0,
                         "check_bivariate: requires tolerance > 0");
  const Regime regime = classify_regime(pair);
  const SeriesEvaluation kernel = moment_ratio_eval(pair, rho);
  return detail::make_bivariate_verdict(regime, kernel, tolerance);
}

// Default equality band: the certified series error must dominate it, so the
// band is max(1e-9, 10x the propagated tail bound).
inline InequalityVerdict check_bivariate(const ExponentPair& pair, double rho) {
  const Regime regime = classify_regime(pair);
  const SeriesEvaluation kernel = moment_ratio_eval(pair, rho);
  const double tolerance = std::max(1e-9, 10.0 * kernel.tail_bound);
  return detail::make_bivariate_verdict(regime, kernel, tolerance);
}

// One-dimensional comparison of E|X|^(a1+a2) against the algebraic multiple
// (a1+1)(a2+1)/(a1+a2+1) of the split product.  Strict < for opposite signs,
// strict > for same signs, equality when an exponent vanishes.
inline InequalityVerdict check_one_dim(double alpha1, double alpha2, double tolerance) {
  detail::require_domain(std::isfinite(tolerance) && tolerance > 0.0,
                         "check_one_dim: requires tolerance > 0");
  const Regime regime = classify_regime({alpha1, alpha2});
  InequalityVerdict out;
  out.ratio = one_dim_ratio(alpha1, alpha2);
  out.threshold = (alpha1 + 1.0) * (alpha2 + 1.0) / (alpha1 + alpha2 + 1.0);
  out.margin = out.ratio - out.threshold;
  out.tolerance = tolerance;
  out.error_bound = std::abs(out.ratio) * 1e-13;
  out.method = "beta_ratio";
  out.statement = regime == Regime::OppositeSign || regime == Regime::Degenerate
                      ? Statement::OneDimUpper
                      : Statement::OneDimLower;
  const int expected = regime == Regime::Degenerate ? 0
                       : regime == Regime::OppositeSign ? -1
                                                        : +1;
  out.verdict = detail::resolve_verdict(out.margin, tolerance, expected);
  return out;
}

// Sign of the kernel derivative G'(z) across a grid: strictly negative for
// opposite-sign exponents, strictly positive for same-sign ones.  Also
// cross-checks that the kernel G itself moves monotonically in the same
// direction along the (sorted) grid.  margin is the worst signed derivative
// value, threshold 0.
inline InequalityVerdict check_monotonicity(const ExponentPair& pair,
                                            std::span<const double> z_grid,
                                            double tolerance = 1e-12) {
  const Regime regime = classify_regime(pair);
  detail::require_domain(!z_grid.empty(), "check_monotonicity: requires a non-empty grid");
  for (const double z : z_grid) {
    detail::require_domain(std::isfinite(z) && z >= 0.0 && z <= kZCap,
                           "check_monotonicity: grid entries must lie in [0, 0.99500625]");
  }
  InequalityVerdict out;
  out.threshold = 0.0;
  out.tolerance = tolerance;
  out.method = "euler_derivative";
  if (regime == Regime::Degenerate) {
    out.statement = Statement::MonotoneIncreasing;
    out.ratio = 0.0;
    out.margin = 0.0;
    out.verdict = Verdict::Equality;
    return out;
  }
  const int expected = regime == Regime::OppositeSign ? -1 : +1;
  out.statement = expected < 0 ? Statement::MonotoneDecreasing : Statement::MonotoneIncreasing;
  double worst_signed = std::numeric_limits<double>::infinity();
  double worst_value = 0.0;
  for (const double z : z_grid) {
    const double d = gpi_kernel_derivative(pair.alpha1, pair.alpha2, z);
    const double signed_d = expected < 0 ? -d : d;
    if (signed_d < worst_signed) {
      worst_signed = signed_d;
      worst_value = d;
    }
  }
  // Cross-check: the kernel itself must be monotone in the expected direction
  // along the sorted grid.
  std::vector<double> zs(z_grid.begin(), z_grid.end());
  std::sort(zs.begin(), zs.end());
  for (std::size_t i = 1; i < zs.size(); ++i) {
    if (zs[i] == zs[i - 1]) continue;
    const double lo = gauss_2f1(-0.5 * pair.alpha1, -0.5 * pair.alpha2, 0.5, zs[i - 1]).value;
    const double hi = gauss_2f1(-0.5 * pair.alpha1, -0.5 * pair.alpha2, 0.5, zs[i]).value;
    const double step_signed = expected < 0 ? lo - hi : hi - lo;
    if (step_signed < -tolerance) {
      out.ratio = hi;
      out.margin = expected < 0 ? -(hi - lo) : hi - lo;
      out.verdict = Verdict::Violated;
      return out;
    }
  }
  out.ratio = worst_value;
  out.margin = worst_signed;
  out.verdict = detail::resolve_verdict(out.margin, tolerance, +1);
  return out;
}

// Exact algebra behind the 1-D threshold: (a1+a2+1) - (a1+1)(a2+1) = -a1*a2,
// so the Beta-parameter product comparison is decided by the sign of a1*a2.
struct ThresholdCheck {
  int sign_of_neg_product = 0;       // sign(-a1*a2)
  bool opposite_sign_direction = false;  // sign pattern matches OppositeSign
  bool same_sign_direction = false;      // sign pattern matches the same-sign regimes
};

inline ThresholdCheck algebraic_threshold_check(double alpha1, double alpha2) {
  const ExponentPair pair{alpha1, alpha2};
  const Regime regime = classify_regime(pair);
  const double p = alpha1 * alpha2;
  ThresholdCheck out;
  out.sign_of_neg_product = p < 0.0 ? +1 : (p > 0.0 ? -1 : 0);
  out.opposite_sign_direction = (out.sign_of_neg_product > 0) == (regime == Regime::OppositeSign);
  out.same_sign_direction =
      (out.sign_of_neg_product < 0) ==
      (regime == Regime::SameSignPositive || regime == Regime::SameSignNegative);
  return out;
}

struct SweepGrid {
  std::vector<double> alpha1_values;
  std::vector<double> alpha2_values;
  std::vector<double> rho_values;
};

struct SweepRecord {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double rho = 0.0;
  bool skipped = false;
  std::string skip_reason;
  InequalityVerdict verdict;
};

// Verdict counts per regime; indexed [regime][verdict].
struct SweepCounts {
  std::array<std::array<long, 3>, 4> table{};

  long& at(Regime r, Verdict v) { return table[static_cast<int>(r)][static_cast<int>(v)]; }
  long at(Regime r, Verdict v) const { return table[static_cast<int>(r)][static_cast<int>(v)]; }
  long total(Verdict v) const {
    long t = 0;
    for (const auto& row : table) t += row[static_cast<int>(v)];
    return t;
  }
};

struct SweepReport {
  std::vector<SweepRecord> records;
  SweepCounts counts;
  long skipped = 0;
  double tolerance = 0.0;
  std::string timestamp;  // wall-clock; excluded from machine formats
  std::string version = kVersion;
  long max_series_terms = kMaxSeriesTerms;
  double rho_cap = kRhoCap;
};

// Bivariate check over the full alpha1 x alpha2 x rho grid (rho innermost).
// Invalid combinations are recorded as skips with the domain-error reason;
// the sweep itself never aborts, and record order equals grid order.
inline SweepReport sweep(const SweepGrid& grid, double tolerance) {
  detail::require_domain(!grid.alpha1_values.empty() && !grid.alpha2_values.empty() &&
                             !grid.rho_values.empty(),
                         "sweep: requires non-empty grid axes");
  SweepReport report;
  report.tolerance = tolerance;
  report.records.reserve(grid.alpha1_values.size() * grid.alpha2_values.size() *
                         grid.rho_values.size());
  for (const double a1 : grid.alpha1_values) {
    for (const double a2 : grid.alpha2_values) {
      for (const double rho : grid.rho_values) {
        SweepRecord rec;
        rec.alpha1 = a1;
        rec.alpha2 = a2;
        rec.rho = rho;
        try {
          rec.verdict = check_bivariate({a1, a2}, rho, tolerance);
          report.counts.at(classify_regime({a1, a2}), rec.verdict.verdict) += 1;
        } catch (const std::exception& e) {
          rec.skipped = true;
          rec.skip_reason = e.what();
          report.skipped += 1;
        }
        report.records.push_back(std::move(rec));
      }
    }
  }
  return report;
}

}  // namespace gpi
