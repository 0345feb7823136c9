#pragma once

// Near-critical Erdős–Rényi graphs G(n, p) with p = (1 + lambda n^{-1/3}) / n.

#include <cstdint>
#include <optional>
#include <span>

#include "critwalk/instance.hpp"
#include "critwalk/profile.hpp"
#include "critwalk/rng.hpp"

namespace critwalk::er {

struct ErParams {
  ErParams(std::uint64_t n, double lambda, std::optional<double> p_override = std::nullopt);

  std::uint64_t n;
  double lambda;
  std::optional<double> p_override;
};

double edge_prob(const ErParams& params);

/// Vertex-by-vertex exploration with binomial increments drawn on the fly.
/// Runs exactly n steps.
ComponentProfile explore(const ErParams& params, RngStream& stream);

/// Samples every unordered pair independently with probability edge_prob.
SimpleGraph materialize(const ErParams& params, RngStream& stream,
                        std::uint32_t cap = kDefaultOracleCap);

/// Deterministic replay of the exploration on a realized graph. `ordering`
/// is a permutation of the vertices (empty means natural order).
ComponentProfile explore_on_graph(const SimpleGraph& graph,
                                  std::span<const std::uint32_t> ordering = {});

}  // namespace critwalk::er
