#include "critwalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "critwalk/errors.hpp"

namespace critwalk {

UnionFind::UnionFind(std::size_t count) : parent_(count), size_(count, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

std::vector<std::uint64_t> UnionFind::component_sizes() {
  std::vector<std::uint64_t> sizes;
  for (std::size_t x = 0; x < parent_.size(); ++x) {
    if (find(x) == x) sizes.push_back(size_[x]);
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

namespace {

struct ComponentVisitor {
  std::vector<std::uint64_t> operator()(const SimpleGraph& g) const {
    g.validate();
    UnionFind uf(g.n);
    for (auto [a, b] : g.edges) uf.unite(a, b);
    return uf.component_sizes();
  }

  std::vector<std::uint64_t> operator()(const ConfigurationInstance& c) const {
    c.validate();
    UnionFind uf(c.n);
    for (std::size_t i = 0; i < c.pairs.size(); ++i) {
      if (c.retained[i]) uf.unite(c.vertex_of(c.pairs[i].first), c.vertex_of(c.pairs[i].second));
    }
    return uf.component_sizes();
  }

  std::vector<std::uint64_t> operator()(const BipartiteInstance& b) const {
    b.validate();
    return (*this)(b.projection);
  }

  std::vector<std::uint64_t> operator()(const QuantumInstance& q) const {
    q.validate();
    const auto offsets = q.interval_offsets();
    UnionFind uf(offsets.back());
    for (const auto& link : q.links) {
      uf.unite(offsets[link.u] + q.interval_of(link.u, link.time),
               offsets[link.v] + q.interval_of(link.v, link.time));
    }
    return uf.component_sizes();
  }
};

}  // namespace

std::vector<std::uint64_t> union_find_components(const MaterializedInstance& instance) {
  return std::visit(ComponentVisitor{}, instance);
}

std::vector<double> enumerate_er_cmax(std::uint32_t n, double p) {
  if (n == 0 || n > kMaxEnumerationVertices) {
    throw SizeError("exhaustive enumeration supports 1 <= n <= 5");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("edge probability must lie in [0, 1]");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> all_pairs;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) all_pairs.emplace_back(a, b);
  }
  const auto m = static_cast<std::uint32_t>(all_pairs.size());
  std::vector<double> dist(n + 1, 0.0);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    UnionFind uf(n);
    std::uint32_t edges = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        uf.unite(all_pairs[i].first, all_pairs[i].second);
        ++edges;
      }
    }
    const auto cmax = uf.component_sizes().front();
    dist[cmax] += std::pow(p, edges) * std::pow(1.0 - p, m - edges);
  }
  return dist;
}

}  // namespace critwalk
