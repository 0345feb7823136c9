#include "critwalk/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "critwalk/errors.hpp"

namespace critwalk {

void SimpleGraph::validate() const {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw ValidationError("edge endpoint out of range");
    if (a == b) throw ValidationError("simple graph contains a self-loop");
    if (!seen.insert(std::minmax(a, b)).second) {
      throw ValidationError("simple graph contains a repeated edge");
    }
  }
}

std::vector<std::vector<std::uint32_t>> SimpleGraph::adjacency() const {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

void ConfigurationInstance::validate() const {
  if (d == 0) throw ValidationError("configuration instance needs d >= 1");
  const std::uint64_t stubs = static_cast<std::uint64_t>(n) * d;
  if (stubs % 2 != 0) throw ValidationError("configuration instance has an odd stub count");
  if (pairs.size() != stubs / 2) throw ValidationError("pairing is not perfect");
  if (retained.size() != pairs.size()) throw ValidationError("one retention bit per pair required");
  std::vector<std::uint8_t> used(stubs, 0);
  for (auto [a, b] : pairs) {
    if (a >= stubs || b >= stubs || a == b) throw ValidationError("pair references an invalid stub");
    if (used[a]++ || used[b]++) throw ValidationError("stub matched twice");
  }
}

void BipartiteInstance::validate() const {
  if (members.size() != k) throw ValidationError("incidence must list every attribute");
  if (projection.n != n) throw ValidationError("projection vertex count mismatch");
  std::set<std::pair<std::uint32_t, std::uint32_t>> expected;
  for (const auto& list : members) {
    if (!std::is_sorted(list.begin(), list.end()) ||
        std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw ValidationError("attribute member list must be sorted and unique");
    }
    if (!list.empty() && list.back() >= n) throw ValidationError("attribute member out of range");
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) expected.emplace(list[i], list[j]);
    }
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> actual;
  for (auto [a, b] : projection.edges) actual.insert(std::minmax(a, b));
  if (actual != expected || actual.size() != projection.edges.size()) {
    throw ValidationError("projection does not match the shared-attribute rule");
  }
}

double Arc::length(double theta) const {
  if (full) return theta;
  return wraps ? theta - start + end : end - start;
}

bool Arc::contains(double x, double /*theta*/) const {
  if (full) return true;
  return wraps ? (x > start || x < end) : (x > start && x < end);
}

std::uint32_t QuantumInstance::interval_count(std::uint32_t circle) const {
  return std::max<std::uint32_t>(static_cast<std::uint32_t>(holes[circle].size()), 1);
}

std::uint64_t QuantumInstance::total_intervals() const {
  std::uint64_t total = 0;
  for (std::uint32_t c = 0; c < n; ++c) total += interval_count(c);
  return total;
}

std::uint32_t QuantumInstance::interval_of(std::uint32_t circle, double x) const {
  const auto& h = holes[circle];
  if (h.empty()) return 0;
  const auto idx = static_cast<std::uint32_t>(std::upper_bound(h.begin(), h.end(), x) - h.begin());
  return idx == 0 ? static_cast<std::uint32_t>(h.size() - 1) : idx - 1;
}

Arc QuantumInstance::interval_arc(std::uint32_t circle, std::uint32_t index) const {
  const auto& h = holes[circle];
  Arc arc;
  arc.circle = circle;
  if (h.empty()) {
    arc.full = true;
    arc.start = 0.0;
    arc.end = theta;
    return arc;
  }
  const std::size_t m = h.size();
  arc.start = h[index];
  if (index + 1 < m) {
    arc.end = h[index + 1];
  } else {
    arc.end = h[0];
    arc.wraps = true;
  }
  return arc;
}

std::vector<std::uint64_t> QuantumInstance::interval_offsets() const {
  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (std::uint32_t c = 0; c < n; ++c) offsets[c + 1] = offsets[c] + interval_count(c);
  return offsets;
}

void QuantumInstance::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw ValidationError("theta must be positive");
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (holes.size() != n) throw ValidationError("one hole list per circle required");
  for (const auto& h : holes) {
    if (!std::is_sorted(h.begin(), h.end()) ||
        std::adjacent_find(h.begin(), h.end()) != h.end()) {
      throw ValidationError("holes must be strictly increasing");
    }
    if (!h.empty() && (h.front() < 0.0 || h.back() >= theta)) {
      throw ValidationError("hole outside [0, theta)");
    }
  }
  for (const auto& link : links) {
    if (link.u >= link.v || link.v >= n) throw ValidationError("link endpoints must satisfy u < v < n");
    if (link.time < 0.0 || link.time >= theta) throw ValidationError("link time outside [0, theta)");
  }
  if (uniforms.size() < total_intervals()) {
    throw ValidationError("instance carries fewer exploration uniforms than intervals");
  }
  for (double u : uniforms) {
    if (!(u >= 0.0 && u < 1.0)) throw ValidationError("exploration uniform outside [0, 1)");
  }
}

}  // namespace critwalk
