#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "critwalk/er.hpp"
#include "critwalk/harness.hpp"
#include "critwalk/rng.hpp"

namespace critwalk::testing {

inline std::vector<std::uint32_t> random_order(std::uint32_t n, RngStream& stream) {
  std::vector<std::uint32_t> order(n);
  for (std::uint32_t v = 0; v < n; ++v) order[v] = v;
  for (std::uint32_t i = n; i > 1; --i) std::swap(order[i - 1], order[stream.uniform_index(i)]);
  return order;
}

inline SimpleGraph graph_from(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  SimpleGraph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

/// cmax of `trials` independent harness trials.
inline std::vector<std::uint64_t> cmax_sample(const harness::ModelSpec& spec, std::uint64_t trials,
                                              std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  out.reserve(trials);
  for (const auto& s : harness::run(spec, trials, seed, 1)) out.push_back(s.cmax);
  return out;
}

}  // namespace critwalk::testing
