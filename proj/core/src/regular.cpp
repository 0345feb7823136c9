#include "critwalk/regular.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "critwalk/errors.hpp"
#include "ordering.hpp"

namespace critwalk::regular {

RegParams::RegParams(std::uint64_t n_, std::uint32_t d_, double lambda_,
                     std::optional<double> p_override_)
    : n(n_), d(d_), lambda(lambda_), p_override(p_override_) {
  if (n == 0) throw ParameterError("regular: n must be positive");
  if (d < 3) throw ParameterError("regular: d must be at least 3");
  if ((n * d) % 2 != 0) throw ParameterError("regular: d*n must be even");
  if (n * d > std::numeric_limits<std::uint32_t>::max()) {
    throw ParameterError("regular: d*n exceeds the 32-bit stub index range");
  }
  if (p_override) {
    if (!(*p_override >= 0.0 && *p_override <= 1.0)) {
      throw ParameterError("regular: p_override must lie in [0, 1]");
    }
    return;
  }
  if (!std::isfinite(lambda)) throw ParameterError("regular: lambda must be finite");
  const double p = percolation_prob(*this);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("regular: p = (1 + lambda n^{-1/3}) / (d - 1) must lie in [0, 1], got " +
                         std::to_string(p));
  }
}

double percolation_prob(const RegParams& params) {
  if (params.p_override) return *params.p_override;
  const double n = static_cast<double>(params.n);
  return (1.0 + params.lambda * std::cbrt(1.0 / n)) / static_cast<double>(params.d - 1);
}

namespace {

enum : std::uint8_t { kUnseen, kActive, kExplored };

// The exploration state machine shared by the lazy sampler and the replay.
// Source supplies the seed choices, the partner of each popped stub, and the
// retention of each newly revealed edge.
template <class Source>
ComponentProfile run_stub_exploration(std::uint32_t n, std::uint32_t d, Source& source) {
  const std::uint32_t stubs = n * d;
  std::vector<std::uint8_t> status(stubs, kUnseen);
  std::vector<std::uint32_t> unseen_left(n, d);
  std::vector<std::uint8_t> activated(n, 0);
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> active;

  ComponentProfile profile;
  std::uint64_t y = 0;
  std::uint64_t component_vertices = 0;

  auto activate_vertex = [&](std::uint32_t v) {
    for (std::uint32_t s = v * d; s < (v + 1) * d; ++s) {
      if (status[s] == kUnseen) {
        status[s] = kActive;
        active.push(s);
        ++y;
      }
    }
    unseen_left[v] = 0;
    activated[v] = 1;
    ++component_vertices;
  };
  auto pop_lowest_active = [&]() {
    while (status[active.top()] != kActive) active.pop();
    const std::uint32_t s = active.top();
    active.pop();
    return s;
  };
  auto explore_stub = [&](std::uint32_t s) {
    status[s] = kExplored;
    source.on_explored(s);
  };

  activate_vertex(source.first_vertex());
  profile.max_active = y;

  const std::uint64_t total_steps = static_cast<std::uint64_t>(stubs) / 2;
  for (std::uint64_t t = 1; t <= total_steps; ++t) {
    if (y == 0) activate_vertex(source.next_fresh_vertex(unseen_left));
    const std::uint32_t e = pop_lowest_active();
    explore_stub(e);
    --y;
    const std::uint32_t h = source.partner(e);
    if (status[h] == kActive) {
      explore_stub(h);
      --y;
    } else {
      const std::uint32_t w = h / d;
      explore_stub(h);
      --unseen_left[w];
      if (source.retained(e, h)) activate_vertex(w);
    }
    profile.max_active = std::max(profile.max_active, y);
    if (y == 0) {
      profile.sizes.push_back(component_vertices);
      profile.halfedge_lengths.push_back(t - profile.excursion_bounds.back());
      profile.excursion_bounds.push_back(t);
      component_vertices = 0;
    }
  }
  profile.steps = total_steps;
  if (y != 0 || std::count(status.begin(), status.end(), kExplored) != static_cast<std::ptrdiff_t>(stubs)) {
    throw ValidationError("stub exploration ended with unexplored stubs");
  }
  // Vertices whose stubs were all consumed by unretained pairings never
  // start an excursion; they are isolated in the percolated graph.
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!activated[v]) {
      profile.sizes.push_back(1);
      profile.halfedge_lengths.push_back(0);
    }
  }
  return profile;
}

class LazyMatchingSource {
 public:
  LazyMatchingSource(std::uint32_t n, std::uint32_t d, double p, RngStream& stream)
      : n_(n), p_(p), stream_(stream), pool_(static_cast<std::size_t>(n) * d), where_(pool_.size()) {
    for (std::uint32_t s = 0; s < pool_.size(); ++s) pool_[s] = where_[s] = s;
  }

  std::uint32_t first_vertex() { return static_cast<std::uint32_t>(stream_.uniform_index(n_)); }

  std::uint32_t next_fresh_vertex(const std::vector<std::uint32_t>& unseen_left) {
    while (unseen_left[cursor_] == 0) ++cursor_;
    return cursor_;
  }

  void on_explored(std::uint32_t s) {
    const std::uint32_t i = where_[s];
    const std::uint32_t last = pool_.back();
    pool_[i] = last;
    where_[last] = i;
    pool_.pop_back();
  }

  std::uint32_t partner(std::uint32_t) { return pool_[stream_.uniform_index(pool_.size())]; }

  bool retained(std::uint32_t, std::uint32_t) { return sample_bernoulli(p_, stream_); }

 private:
  std::uint32_t n_;
  double p_;
  RngStream& stream_;
  std::vector<std::uint32_t> pool_;
  std::vector<std::uint32_t> where_;
  std::uint32_t cursor_ = 0;
};

class ReplaySource {
 public:
  ReplaySource(const ConfigurationInstance& instance, std::span<const std::uint8_t> marks,
               std::vector<std::uint32_t> order)
      : marks_(marks), order_(std::move(order)), partner_(instance.stub_count()),
        pair_of_(instance.stub_count()) {
    for (std::uint32_t i = 0; i < instance.pairs.size(); ++i) {
      const auto [a, b] = instance.pairs[i];
      partner_[a] = b;
      partner_[b] = a;
      pair_of_[a] = pair_of_[b] = i;
    }
  }

  std::uint32_t first_vertex() { return order_.front(); }

  std::uint32_t next_fresh_vertex(const std::vector<std::uint32_t>& unseen_left) {
    while (unseen_left[order_[cursor_]] == 0) ++cursor_;
    return order_[cursor_];
  }

  void on_explored(std::uint32_t) {}
  std::uint32_t partner(std::uint32_t e) { return partner_[e]; }
  bool retained(std::uint32_t e, std::uint32_t) { return marks_[pair_of_[e]] != 0; }

 private:
  std::span<const std::uint8_t> marks_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> partner_;
  std::vector<std::uint32_t> pair_of_;
  std::uint32_t cursor_ = 0;
};

}  // namespace

ComponentProfile explore(const RegParams& params, RngStream& stream) {
  const auto n = static_cast<std::uint32_t>(params.n);
  LazyMatchingSource source(n, params.d, percolation_prob(params), stream);
  return run_stub_exploration(n, params.d, source);
}

ConfigurationInstance pair_full(std::uint32_t n, std::uint32_t d, RngStream& stream) {
  const std::uint64_t stubs = static_cast<std::uint64_t>(n) * d;
  if (d == 0 || n == 0) throw ParameterError("pair_full: n and d must be positive");
  if (stubs % 2 != 0) throw ParameterError("pair_full: d*n must be even");
  if (stubs > std::numeric_limits<std::uint32_t>::max()) {
    throw SizeError("pair_full: d*n exceeds the 32-bit stub index range");
  }
  std::vector<std::uint32_t> perm(stubs);
  for (std::uint32_t s = 0; s < stubs; ++s) perm[s] = s;
  for (std::uint64_t i = stubs - 1; i > 0; --i) {
    std::swap(perm[i], perm[stream.uniform_index(i + 1)]);
  }
  ConfigurationInstance instance;
  instance.n = n;
  instance.d = d;
  instance.pairs.reserve(stubs / 2);
  for (std::uint64_t i = 0; i < stubs; i += 2) instance.pairs.emplace_back(perm[i], perm[i + 1]);
  instance.retained.assign(instance.pairs.size(), 1);
  return instance;
}

void percolate(ConfigurationInstance& instance, double prob, RngStream& stream) {
  if (!(prob >= 0.0 && prob <= 1.0)) throw ParameterError("percolate: prob must lie in [0, 1]");
  instance.retained.resize(instance.pairs.size());
  for (auto& bit : instance.retained) bit = sample_bernoulli(prob, stream) ? 1 : 0;
}

bool is_simple(const ConfigurationInstance& instance) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(instance.pairs.size());
  for (auto [a, b] : instance.pairs) {
    const std::uint32_t u = instance.vertex_of(a);
    const std::uint32_t v = instance.vertex_of(b);
    if (u == v) return false;
    edges.push_back(std::minmax(u, v));
  }
  std::sort(edges.begin(), edges.end());
  return std::adjacent_find(edges.begin(), edges.end()) == edges.end();
}

ComponentProfile explore_on_instance(const ConfigurationInstance& instance,
                                     std::span<const std::uint8_t> marks,
                                     std::span<const std::uint32_t> ordering) {
  instance.validate();
  if (marks.empty()) marks = instance.retained;
  if (marks.size() != instance.pairs.size()) {
    throw ParameterError("explore_on_instance: one retention mark per pair required");
  }
  ReplaySource source(instance, marks, detail::resolve_ordering(instance.n, ordering));
  return run_stub_exploration(instance.n, instance.d, source);
}

ComponentProfile explore_conditioned_simple(const RegParams& params, RngStream& stream,
                                            std::uint64_t* rejections) {
  const auto n = static_cast<std::uint32_t>(params.n);
  std::uint64_t rejected = 0;
  ConfigurationInstance instance = pair_full(n, params.d, stream);
  while (!is_simple(instance)) {
    ++rejected;
    instance = pair_full(n, params.d, stream);
  }
  if (rejections) *rejections = rejected;
  percolate(instance, percolation_prob(params), stream);
  std::vector<std::uint32_t> order(n);
  for (std::uint32_t v = 0; v < n; ++v) order[v] = v;
  std::swap(order[0], order[stream.uniform_index(n)]);
  return explore_on_instance(instance, {}, order);
}

}  // namespace critwalk::regular
