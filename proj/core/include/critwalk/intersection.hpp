#pragma once

// Random intersection graphs G(n, k, p): vertices are adjacent when they
// share at least one attribute; k = floor(beta n), p = gamma / n.

#include <cstdint>

#include "critwalk/instance.hpp"
#include "critwalk/profile.hpp"
#include "critwalk/rng.hpp"

namespace critwalk::intersection {

struct IntersectionParams {
  IntersectionParams(std::uint64_t n, double beta, double gamma);

  std::uint64_t n;
  double beta;
  double gamma;
  std::uint64_t k;  // floor(beta n)
  double p;         // gamma / n

  /// beta gamma^2 == 1 to within 1e-12.
  bool critical() const;
};

/// Vertex-by-vertex exploration tracking only the discovered-attribute count.
ComponentProfile explore(const IntersectionParams& params, RngStream& stream);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Monte Carlo mean of the first-step offspring eta_1 from a fresh start.
MeanEstimate mean_offspring_check(const IntersectionParams& params, std::uint64_t samples,
                                  RngStream& stream);

/// Bernoulli(p) incidence for every (vertex, attribute) pair plus projection.
BipartiteInstance materialize(const IntersectionParams& params, RngStream& stream,
                              std::uint32_t cap = kDefaultOracleCap);

/// Projects an incidence onto vertices: an edge per pair sharing an attribute.
SimpleGraph project(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& members);

}  // namespace critwalk::intersection
