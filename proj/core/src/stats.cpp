#include "critwalk/stats.hpp"

#include <algorithm>
#include <cmath>

namespace critwalk {

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double m = static_cast<double>(trials);
  const double phat = static_cast<double>(hits) / m;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / m;
  const double centre = (phat + z2 / (2.0 * m)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / m + z2 / (4.0 * m * m)) / denom;
  // The score interval always covers phat; clamp away rounding at the ends.
  return {std::clamp(std::min(centre - half, phat), 0.0, 1.0),
          std::clamp(std::max(centre + half, phat), 0.0, 1.0)};
}

}  // namespace critwalk
