#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace tightcycle {

/// Exact density values. Numerators stay below r*n and denominators below
/// r*n*2^30, so 64 bits are plenty at the sizes this library targets.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& q) { return boost::rational_cast<double>(q); }

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

/// q * f with f in [0, 1] rounded down to a multiple of 2^-30. The result
/// never exceeds the real product, so thresholds derived this way stay
/// conservative.
Rational scale_down(const Rational& q, double factor);

}  // namespace tightcycle
