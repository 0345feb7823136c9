#include "critwalk/er.hpp"

#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "critwalk/errors.hpp"
#include "ordering.hpp"

namespace critwalk::er {

ErParams::ErParams(std::uint64_t n_, double lambda_, std::optional<double> p_override_)
    : n(n_), lambda(lambda_), p_override(p_override_) {
  if (n == 0) throw ParameterError("ER: n must be positive");
  if (p_override) {
    if (!(*p_override >= 0.0 && *p_override <= 1.0)) {
      throw ParameterError("ER: p_override must lie in [0, 1]");
    }
    return;
  }
  if (!std::isfinite(lambda)) throw ParameterError("ER: lambda must be finite");
  const double p = edge_prob(*this);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("ER: p = (1 + lambda n^{-1/3}) / n must lie in [0, 1], got " +
                         std::to_string(p));
  }
}

double edge_prob(const ErParams& params) {
  if (params.p_override) return *params.p_override;
  const double n = static_cast<double>(params.n);
  return (1.0 + params.lambda * std::cbrt(1.0 / n)) / n;
}

ComponentProfile explore(const ErParams& params, RngStream& stream) {
  const std::uint64_t n = params.n;
  const double p = edge_prob(params);
  ComponentProfile profile;
  profile.sizes.reserve(64);
  ExcursionRecorder walk(profile);
  for (std::uint64_t t = 1; t <= n; ++t) {
    // unseen vertices at the start of step t, minus the fresh root if Y = 0
    const std::uint64_t unseen = n - (t - 1) - walk.active();
    const std::uint64_t available = walk.idle() ? unseen - 1 : unseen;
    walk.step(sample_binomial(available, p, stream));
  }
  return profile;
}

SimpleGraph materialize(const ErParams& params, RngStream& stream, std::uint32_t cap) {
  if (params.n > cap) {
    throw SizeError("ER materialization: n = " + std::to_string(params.n) +
                    " exceeds oracle cap " + std::to_string(cap));
  }
  const double p = edge_prob(params);
  SimpleGraph graph;
  graph.n = static_cast<std::uint32_t>(params.n);
  for (std::uint32_t a = 0; a < graph.n; ++a) {
    for (std::uint32_t b = a + 1; b < graph.n; ++b) {
      if (sample_bernoulli(p, stream)) graph.edges.emplace_back(a, b);
    }
  }
  return graph;
}

ComponentProfile explore_on_graph(const SimpleGraph& graph, std::span<const std::uint32_t> ordering) {
  graph.validate();
  const std::uint32_t n = graph.n;
  const auto order = detail::resolve_ordering(n, ordering);
  std::vector<std::uint32_t> rank(n);
  for (std::uint32_t i = 0; i < n; ++i) rank[order[i]] = i;
  const auto adj = graph.adjacency();

  enum : std::uint8_t { kUnseen, kActive, kExplored };
  std::vector<std::uint8_t> status(n, kUnseen);
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> active;  // ranks
  std::uint32_t unseen_cursor = 0;

  ComponentProfile profile;
  ExcursionRecorder walk(profile);
  for (std::uint32_t t = 1; t <= n; ++t) {
    std::uint32_t u;
    if (!active.empty()) {
      u = order[active.top()];
      active.pop();
    } else {
      while (status[order[unseen_cursor]] != kUnseen) ++unseen_cursor;
      u = order[unseen_cursor];
    }
    status[u] = kExplored;
    std::uint64_t gained = 0;
    for (std::uint32_t x : adj[u]) {
      if (status[x] == kUnseen) {
        status[x] = kActive;
        active.push(rank[x]);
        ++gained;
      }
    }
    walk.step(gained);
  }
  return profile;
}

}  // namespace critwalk::er
