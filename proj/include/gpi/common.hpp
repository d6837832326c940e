#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace gpi {

inline constexpr const char kVersion[] = "1.0.0";

inline constexpr double kPi = 3.14159265358979323846264338328;
inline constexpr double kLnPi = 1.14472988584940017414342735135;
inline constexpr double kLn2 = 0.69314718055994530941723212146;
inline constexpr double kSqrt2Pi = 2.50662827463100050241576528481;

// Correlation cap for the hypergeometric series engine and the matching
// cap on the series argument z = rho^2.  The band (kRhoCap, 1) is a domain
// error; |rho| = 1 is handled by a separate limit branch in the moments
// module.
inline constexpr double kRhoCap = 0.9975;
inline constexpr double kZCap = kRhoCap * kRhoCap;  // 0.99500625

// Hard cap on hypergeometric series terms before reporting failure.
inline constexpr long kMaxSeriesTerms = 1000000;

// Series/product or quadrature failed to reach its certified accuracy
// target within the configured budget.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require_domain(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

// Compensated (Kahan) accumulator.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

}  // namespace detail
}  // namespace gpi
