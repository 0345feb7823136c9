#pragma once

// Bond percolation on the configuration-model random d-regular multigraph,
// explored one stub pairing at a time.

#include <cstdint>
#include <optional>
#include <span>

#include "critwalk/instance.hpp"
#include "critwalk/profile.hpp"
#include "critwalk/rng.hpp"

namespace critwalk::regular {

struct RegParams {
  RegParams(std::uint64_t n, std::uint32_t d, double lambda,
            std::optional<double> p_override = std::nullopt);

  std::uint64_t n;
  std::uint32_t d;
  double lambda;
  std::optional<double> p_override;
};

/// (1 + lambda n^{-1/3}) / (d - 1), or the override.
double percolation_prob(const RegParams& params);

/// Stub-level exploration of G'(n, d, p) with the matching revealed lazily.
/// Sizes are in vertices; halfedge_lengths holds t_i - t_{i-1} per component.
/// Runs exactly dn/2 steps.
ComponentProfile explore(const RegParams& params, RngStream& stream);

/// Uniform perfect matching on d*n stubs; every pair marked retained.
ConfigurationInstance pair_full(std::uint32_t n, std::uint32_t d, RngStream& stream);

/// Redraws every retention bit independently with probability `prob`.
void percolate(ConfigurationInstance& instance, double prob, RngStream& stream);

/// True iff the multigraph has neither self-loops nor repeated edges.
bool is_simple(const ConfigurationInstance& instance);

/// Deterministic replay on a realized pairing. `marks` holds one retention
/// bit per pair (empty means use instance.retained). `ordering[0]` seeds the
/// first excursion; later excursions start at the first vertex in `ordering`
/// that still has an unseen stub.
ComponentProfile explore_on_instance(const ConfigurationInstance& instance,
                                     std::span<const std::uint8_t> marks = {},
                                     std::span<const std::uint32_t> ordering = {});

/// One trial of the simple-graph conditioned model: rejection-samples a
/// simple pairing, percolates it, and replays from a uniform seed vertex.
/// `rejections`, when given, receives the number of discarded pairings.
ComponentProfile explore_conditioned_simple(const RegParams& params, RngStream& stream,
                                            std::uint64_t* rejections = nullptr);

}  // namespace critwalk::regular
