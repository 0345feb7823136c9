#pragma once

// Ground-truth component computation for every materialized model.

#include <cstdint>
#include <vector>

#include "critwalk/instance.hpp"

namespace critwalk {

/// Disjoint-set forest with path compression and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t count);

  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }
  /// Component sizes, sorted descending.
  std::vector<std::uint64_t> component_sizes();

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Exact component size multiset, sorted descending. Units are vertices,
/// except for quantum instances where they are intervals.
std::vector<std::uint64_t> union_find_components(const MaterializedInstance& instance);

inline constexpr std::uint32_t kMaxEnumerationVertices = 5;

/// Exact law of |C_max| for G(n, p) by summing over all 2^{n(n-1)/2} graphs.
/// Entry c is P(|C_max| = c); entry 0 is always zero.
std::vector<double> enumerate_er_cmax(std::uint32_t n, double p);

}  // namespace critwalk
