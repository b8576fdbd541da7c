#include "tightcycle/rational.hpp"

#include <cmath>

namespace tightcycle {

Rational scale_down(const Rational& q, double factor) {
  constexpr std::int64_t kScale = std::int64_t{1} << 30;
  if (factor <= 0.0) return Rational(0);
  if (factor >= 1.0) return q;
  const auto num = static_cast<std::int64_t>(std::floor(factor * static_cast<double>(kScale)));
  return q * Rational(num, kScale);
}

}  // namespace tightcycle
