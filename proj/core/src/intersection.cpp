#include "critwalk/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "critwalk/errors.hpp"

namespace critwalk::intersection {

IntersectionParams::IntersectionParams(std::uint64_t n_, double beta_, double gamma_)
    : n(n_), beta(beta_), gamma(gamma_) {
  if (n == 0) throw ParameterError("intersection: n must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("intersection: beta must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("intersection: gamma must be nonnegative");
  }
  k = static_cast<std::uint64_t>(std::floor(beta * static_cast<double>(n)));
  p = gamma / static_cast<double>(n);
  if (k < 1) throw ParameterError("intersection: k = floor(beta n) must be at least 1");
  if (p > 1.0) throw ParameterError("intersection: p = gamma / n must not exceed 1, got " + std::to_string(p));
}

bool IntersectionParams::critical() const { return std::fabs(beta * gamma * gamma - 1.0) < 1e-12; }

namespace {

// 1 - (1 - p)^m without cancellation for small p.
double join_probability(double p, std::uint64_t fresh_attributes) {
  if (fresh_attributes == 0) return 0.0;
  return -std::expm1(static_cast<double>(fresh_attributes) * std::log1p(-p));
}

}  // namespace

ComponentProfile explore(const IntersectionParams& params, RngStream& stream) {
  const std::uint64_t n = params.n;
  ComponentProfile profile;
  ExcursionRecorder walk(profile);
  std::uint64_t discovered = 0;
  for (std::uint64_t t = 1; t <= n; ++t) {
    const std::uint64_t fresh = sample_binomial(params.k - discovered, params.p, stream);
    discovered += fresh;
    const std::uint64_t unseen = n - (t - 1) - walk.active();
    const std::uint64_t available = walk.idle() ? unseen - 1 : unseen;
    walk.step(fresh == 0 ? 0 : sample_binomial(available, join_probability(params.p, fresh), stream));
  }
  profile.attributes_discovered = discovered;
  return profile;
}

MeanEstimate mean_offspring_check(const IntersectionParams& params, std::uint64_t samples,
                                  RngStream& stream) {
  if (samples == 0) throw ParameterError("mean_offspring_check: samples must be positive");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t fresh = sample_binomial(params.k, params.p, stream);
    const double eta =
        fresh == 0 ? 0.0
                   : static_cast<double>(sample_binomial(params.n - 1, join_probability(params.p, fresh), stream));
    sum += eta;
    sum_sq += eta * eta;
  }
  const double m = static_cast<double>(samples);
  MeanEstimate est;
  est.samples = samples;
  est.mean = sum / m;
  const double var = samples > 1 ? std::max(0.0, (sum_sq - m * est.mean * est.mean) / (m - 1.0)) : 0.0;
  est.std_error = std::sqrt(var / m);
  return est;
}

SimpleGraph project(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& members) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& list : members) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) edges.emplace_back(std::minmax(list[i], list[j]));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  SimpleGraph graph;
  graph.n = n;
  graph.edges = std::move(edges);
  return graph;
}

BipartiteInstance materialize(const IntersectionParams& params, RngStream& stream, std::uint32_t cap) {
  if (params.n > cap) {
    throw SizeError("intersection materialization: n = " + std::to_string(params.n) +
                    " exceeds oracle cap " + std::to_string(cap));
  }
  BipartiteInstance instance;
  instance.n = static_cast<std::uint32_t>(params.n);
  instance.k = static_cast<std::uint32_t>(params.k);
  instance.members.resize(instance.k);
  for (std::uint32_t v = 0; v < instance.n; ++v) {
    for (std::uint32_t a = 0; a < instance.k; ++a) {
      if (sample_bernoulli(params.p, stream)) instance.members[a].push_back(v);
    }
  }
  instance.projection = project(instance.n, instance.members);
  return instance;
}

}  // namespace critwalk::intersection
