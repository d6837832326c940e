#include <catch2/catch.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "gpi/moments.hpp"
#include "gpi/oracle.hpp"
#include "reference_oracles.hpp"

using gpi::BivariatePairSpec;
using gpi::even_exponent_ratio;
using gpi::ExponentPair;
using gpi::joint_abs_moment;
using gpi::marginal_abs_moment;
using gpi::marginal_product;
using gpi::moment_ratio;
using gpi::moment_ratio_eval;
using gpi::MomentMethod;
using gpi::MomentValue;
using gpi::one_dim_ratio;

TEST_CASE("marginal_abs_moment anchors") {
  CHECK(marginal_abs_moment(0.0).value == Approx(1.0).epsilon(1e-13));
  CHECK(marginal_abs_moment(2.0).value == Approx(1.0).epsilon(1e-12));
  CHECK(marginal_abs_moment(1.0).value == Approx(std::sqrt(2.0 / gpi::kPi)).epsilon(1e-12));
  CHECK(marginal_abs_moment(-0.5).value == Approx(ref::kAbsMomentMinusHalf).epsilon(1e-11));
  CHECK(marginal_abs_moment(5.0).value == Approx(ref::kAbsMomentFive).epsilon(1e-11));
}

TEST_CASE("marginal_abs_moment matches the reference across the domain") {
  for (double nu = -0.95; nu <= 12.0; nu += 0.111) {
    const double expected = static_cast<double>(ref::abs_moment_ld(nu));
    CHECK(marginal_abs_moment(nu).value == Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("marginal_abs_moment scaling and errors") {
  const double base = marginal_abs_moment(1.7).value;
  CHECK(marginal_abs_moment(1.7, 2.0).value ==
        Approx(std::pow(2.0, 1.7) * base).epsilon(1e-13));
  CHECK_THROWS_AS(marginal_abs_moment(-1.0), std::domain_error);
  CHECK_THROWS_AS(marginal_abs_moment(-1.5), std::domain_error);
  CHECK_THROWS_AS(marginal_abs_moment(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(marginal_abs_moment(1.0, -2.0), std::domain_error);
}

TEST_CASE("marginal_product examples") {
  CHECK(marginal_product({2.0, 2.0}, {1.0, 1.0, 0.7}).value == Approx(1.0).epsilon(1e-12));
  CHECK(marginal_product({0.0, 5.0}, {1.0, 1.0, 0.0}).value ==
        Approx(ref::kAbsMomentFive).epsilon(1e-11));
  CHECK(marginal_product({1.0, 1.0}, {2.0, 3.0, 0.3}).value ==
        Approx(ref::kMarginal1Sigma2TimesSigma3).epsilon(1e-11));
  // independent of rho
  CHECK(marginal_product({1.3, 0.4}, {1.0, 1.0, -0.9}).value ==
        marginal_product({1.3, 0.4}, {1.0, 1.0, 0.2}).value);
}

TEST_CASE("joint_abs_moment anchors") {
  const MomentValue isserlis22 = joint_abs_moment({2.0, 2.0}, {1.0, 1.0, 0.5});
  CHECK(isserlis22.value == Approx(1.5).epsilon(1e-12));
  CHECK(isserlis22.method == MomentMethod::hypergeometric);

  // rho = 0 factorizes exactly
  const ExponentPair pair{-0.4, 3.1};
  const BivariatePairSpec indep{1.4, 0.8, 0.0};
  CHECK(joint_abs_moment(pair, indep).value == marginal_product(pair, indep).value);

  const MomentValue terminating = joint_abs_moment({-0.5, 2.0}, {1.0, 1.0, 0.5});
  CHECK(terminating.value ==
        Approx(0.875 * marginal_product({-0.5, 2.0}, {1.0, 1.0, 0.5}).value).epsilon(1e-12));
}

TEST_CASE("joint_abs_moment at |rho| = 1") {
  const MomentValue limit = joint_abs_moment({1.0, 1.0}, {1.0, 1.0, 1.0});
  CHECK(limit.value == Approx(1.0).epsilon(1e-12));
  CHECK(limit.method == MomentMethod::limit_rho_one);
  // X2 = -X1 has the same absolute moments
  CHECK(joint_abs_moment({1.0, 1.0}, {1.0, 1.0, -1.0}).value ==
        Approx(limit.value).epsilon(1e-14));
  // sigma scaling in the limit branch
  CHECK(joint_abs_moment({1.0, 2.0}, {2.0, 3.0, 1.0}).value ==
        Approx(2.0 * 9.0 * static_cast<double>(ref::abs_moment_ld(3.0))).epsilon(1e-11));
  CHECK_THROWS_AS(joint_abs_moment({-0.6, -0.5}, {1.0, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("joint_abs_moment domain band") {
  CHECK_THROWS_AS(joint_abs_moment({1.0, 1.0}, {1.0, 1.0, 0.999}), std::domain_error);
  CHECK_THROWS_AS(joint_abs_moment({1.0, 1.0}, {1.0, 1.0, -0.999}), std::domain_error);
  CHECK_THROWS_AS(joint_abs_moment({1.0, 1.0}, {1.0, 1.0, 1.5}), std::domain_error);
  CHECK_NOTHROW(joint_abs_moment({1.0, 1.0}, {1.0, 1.0, 0.9975}));
}

TEST_CASE("joint_abs_moment scale invariance") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> alpha(-0.9, 4.0);
  std::uniform_real_distribution<double> sigma(0.1, 5.0);
  std::uniform_real_distribution<double> rho(-0.99, 0.99);
  for (int i = 0; i < 300; ++i) {
    const ExponentPair pair{alpha(gen), alpha(gen)};
    const double s1 = sigma(gen), s2 = sigma(gen), r = rho(gen);
    const double scaled = joint_abs_moment(pair, {s1, s2, r}).value;
    const double unit = joint_abs_moment(pair, {1.0, 1.0, r}).value;
    const double factor = std::pow(s1, pair.alpha1) * std::pow(s2, pair.alpha2);
    CHECK(scaled == Approx(factor * unit).epsilon(1e-12));
  }
}

TEST_CASE("moment_ratio anchors") {
  CHECK(moment_ratio({-0.5, 2.0}, 0.5) == 0.875);  // terminating, exact
  CHECK(moment_ratio({1.7, -0.3}, 0.0) == 1.0);
  CHECK(moment_ratio({2.0, 4.0}, 0.5) == Approx(2.0).epsilon(1e-10));
}

TEST_CASE("moment_ratio parity and exchange symmetry") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> alpha(-0.95, 4.5);
  std::uniform_real_distribution<double> rho(0.0, 0.9975);
  for (int i = 0; i < 200; ++i) {
    const ExponentPair pair{alpha(gen), alpha(gen)};
    const double r = rho(gen);
    CHECK(moment_ratio(pair, r) == moment_ratio(pair, -r));  // exact: routes through rho^2
    const double swapped = moment_ratio({pair.alpha2, pair.alpha1}, r);
    CHECK(moment_ratio(pair, r) == Approx(swapped).epsilon(1e-11));
  }
}

TEST_CASE("moment_ratio approaches the 1-D ratio as rho -> 1") {
  for (const ExponentPair pair : {ExponentPair{-0.5, 1.0}, ExponentPair{2.0, 2.0},
                                  ExponentPair{-0.3, -0.4}, ExponentPair{0.5, 3.0}}) {
    const double limit = one_dim_ratio(pair.alpha1, pair.alpha2);
    double previous_gap = std::numeric_limits<double>::infinity();
    for (const double r : {0.99, 0.995, 0.9975}) {
      const double gap = std::abs(moment_ratio(pair, r) - limit);
      CHECK(gap < previous_gap);
      previous_gap = gap;
    }
  }
}

TEST_CASE("even_exponent_ratio examples") {
  CHECK(even_exponent_ratio(-0.5, 1, 0.5) == Approx(0.875).epsilon(1e-15));
  CHECK(even_exponent_ratio(3.21, 1, 0.0) == 1.0);
  CHECK(even_exponent_ratio(2.0, 2, 0.5) == Approx(2.0).epsilon(1e-14));
  // m = 1 collapses to 1 + alpha1 rho^2
  for (double rho = -0.9; rho <= 0.91; rho += 0.3) {
    CHECK(even_exponent_ratio(-0.7, 1, rho) == Approx(1.0 - 0.7 * rho * rho).epsilon(1e-14));
  }
}

TEST_CASE("even_exponent_ratio agrees with the hypergeometric kernel") {
  const double alphas[] = {-0.9, -0.5, -0.1, 0.5, 1.0, 2.0, 3.3};
  const double rhos[] = {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9};
  for (const double a1 : alphas) {
    for (int m = 1; m <= 4; ++m) {
      for (const double rho : rhos) {
        const double finite = even_exponent_ratio(a1, m, rho);
        const double kernel = moment_ratio({a1, 2.0 * m}, rho);
        CHECK(std::abs(finite - kernel) <= 1e-9 * std::abs(kernel));
      }
    }
  }
}

TEST_CASE("even_exponent_ratio domain") {
  CHECK_THROWS_AS(even_exponent_ratio(-1.0, 1, 0.5), std::domain_error);
  CHECK_THROWS_AS(even_exponent_ratio(0.5, 0, 0.5), std::domain_error);
  CHECK_THROWS_AS(even_exponent_ratio(0.5, 1, 1.0), std::domain_error);
  CHECK_THROWS_AS(even_exponent_ratio(0.5, 1, -1.0), std::domain_error);
}

TEST_CASE("one_dim_ratio anchors") {
  CHECK(one_dim_ratio(0.0, 3.7) == Approx(1.0).epsilon(1e-12));
  CHECK(one_dim_ratio(1.0, 1.0) == Approx(0.5 * gpi::kPi).epsilon(1e-11));
  const double upper = one_dim_ratio(-0.5, 1.0);
  CHECK(upper == Approx(ref::kOneDimMinusHalfOne).epsilon(1e-11));
  CHECK(upper < 2.0 / 3.0);
}

TEST_CASE("one_dim_ratio symmetry and reference agreement") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> alpha(-0.95, 5.0);
  for (int i = 0; i < 400; ++i) {
    const double a1 = alpha(gen), a2 = alpha(gen);
    if (a1 + a2 <= -1.0) continue;
    const double v = one_dim_ratio(a1, a2);
    CHECK(v == one_dim_ratio(a2, a1));
    const double expected = static_cast<double>(ref::one_dim_ratio_ld(a1, a2));
    CHECK(v == Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("one_dim_ratio domain") {
  CHECK_THROWS_AS(one_dim_ratio(-0.6, -0.5), std::domain_error);
  CHECK_THROWS_AS(one_dim_ratio(-1.0, 2.0), std::domain_error);
  CHECK_NOTHROW(one_dim_ratio(-0.6, -0.3999));
}

TEST_CASE("moment_ratio stays accurate for large exponents at the rho cap") {
  // slowest-converging corner: big non-integer exponents, z at the series cap
  const ExponentPair pair{49.9, 30.3};
  for (const double rho : {0.9, 0.9975}) {
    const gpi::SeriesEvaluation kernel = moment_ratio_eval(pair, rho);
    const double expected = static_cast<double>(
        ref::hyp2f1_ld(-0.5L * pair.alpha1, -0.5L * pair.alpha2, 0.5L,
                       static_cast<long double>(rho) * static_cast<long double>(rho)));
    CHECK(std::abs(kernel.value - expected) <=
          kernel.tail_bound + 1e-7 * std::abs(expected));
    CHECK(kernel.terms_used < gpi::kMaxSeriesTerms);
  }
}

TEST_CASE("joint moments match the pairing oracle at even exponents") {
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 2; ++q) {
      for (const double rho : {0.0, 0.3, -0.3, 0.7, -0.7}) {
        const double wick = gpi::isserlis_even_moment(p, q, rho);
        const double closed =
            joint_abs_moment({2.0 * p, 2.0 * q}, {1.0, 1.0, rho}).value;
        CHECK(std::abs(closed - wick) <= 1e-9 * std::abs(wick));
      }
    }
  }
}
