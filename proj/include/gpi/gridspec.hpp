#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpi {

namespace detail {

inline double parse_double(const std::string& token) {
  if (token.empty()) throw std::invalid_argument("grid: empty numeric token");
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || !std::isfinite(v)) {
    throw std::invalid_argument("grid: malformed number '" + token + "'");
  }
  return v;
}

}  // namespace detail

// Expand a grid specification: either a comma-separated list "a,b,c" or an
// inclusive range "start:stop:step".  The range count is computed from the
// rounded (stop-start)/step so accumulated floating steps cannot drop or
// duplicate the final point.
inline std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("grid: empty specification");
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    const auto first = spec.find(':');
    const auto second = spec.find(':', first + 1);
    if (second == std::string::npos || spec.find(':', second + 1) != std::string::npos) {
      throw std::invalid_argument("grid: range must be start:stop:step");
    }
    const double start = detail::parse_double(spec.substr(0, first));
    const double stop = detail::parse_double(spec.substr(first + 1, second - first - 1));
    const double step = detail::parse_double(spec.substr(second + 1));
    if (step == 0.0) throw std::invalid_argument("grid: step must be non-zero");
    const double span = (stop - start) / step;
    if (span < -1e-9) throw std::invalid_argument("grid: step sign does not reach stop");
    const long count = std::lround(span);
    if (std::abs(span - static_cast<double>(count)) > 1e-6 * (1.0 + std::abs(span))) {
      throw std::invalid_argument("grid: step does not evenly divide the range");
    }
    for (long i = 0; i <= count; ++i) {
      out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const auto end = comma == std::string::npos ? spec.size() : comma;
    out.push_back(detail::parse_double(spec.substr(pos, end - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace gpi
