#pragma once

#include <cstdint>

namespace critwalk {

inline constexpr double kWilsonZ = 1.96;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for `hits` successes out of `trials`.
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = kWilsonZ);

}  // namespace critwalk
