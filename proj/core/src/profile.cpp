#include "critwalk/profile.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace critwalk {

std::uint64_t ComponentProfile::cmax() const {
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

std::uint64_t ComponentProfile::total_size() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::uint64_t{0});
}

std::vector<std::uint64_t> ComponentProfile::sorted_sizes() const {
  std::vector<std::uint64_t> out = sizes;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace critwalk
