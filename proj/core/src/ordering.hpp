#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "critwalk/errors.hpp"

namespace critwalk::detail {

/// Returns `ordering` as a vector after checking it is a permutation of
/// 0..n-1; an empty span yields the natural order.
inline std::vector<std::uint32_t> resolve_ordering(std::uint32_t n,
                                                   std::span<const std::uint32_t> ordering) {
  std::vector<std::uint32_t> order(n);
  if (ordering.empty()) {
    std::iota(order.begin(), order.end(), 0u);
    return order;
  }
  if (ordering.size() != n) throw ParameterError("ordering must list every vertex exactly once");
  std::vector<std::uint8_t> seen(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t v = ordering[i];
    if (v >= n || seen[v]++) throw ParameterError("ordering must be a permutation of the vertices");
    order[i] = v;
  }
  return order;
}

}  // namespace critwalk::detail
