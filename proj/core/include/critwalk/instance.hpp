#pragma once

// Fully realized small graphs used as ground truth for the exploration engines.

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace critwalk {

inline constexpr std::uint32_t kDefaultOracleCap = 10000;
inline constexpr std::uint32_t kDefaultQuantumOracleCap = 128;

/// Simple undirected graph on vertices 0..n-1.
struct SimpleGraph {
  std::uint32_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  void validate() const;
  std::vector<std::vector<std::uint32_t>> adjacency() const;
};

/// A perfect matching on d*n labelled stubs plus one retention bit per pair.
/// Stub s belongs to vertex s / d.
struct ConfigurationInstance {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::uint8_t> retained;

  std::uint32_t vertex_of(std::uint32_t stub) const { return stub / d; }
  std::uint32_t stub_count() const { return n * d; }
  void validate() const;
};

/// Vertex/attribute incidence of a random intersection graph and its projection.
struct BipartiteInstance {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::vector<std::vector<std::uint32_t>> members;  // per attribute, sorted vertices
  SimpleGraph projection;

  void validate() const;
};

/// An arc of a circle of length theta. When wraps is set the arc runs from
/// start through theta back to end.
struct Arc {
  std::uint32_t circle = 0;
  double start = 0.0;
  double end = 0.0;
  bool wraps = false;
  bool full = false;  // the whole circle (no cut point)

  double length(double theta) const;
  bool contains(double x, double theta) const;
};

struct LinkPoint {
  std::uint32_t u = 0;  // u < v
  std::uint32_t v = 0;
  double time = 0.0;
};

/// A quantum random graph realization with all exploration randomness drawn.
///
/// Circle c has sorted holes in [0, theta); with m holes it splits into
/// max(m, 1) intervals. Interval j < m - 1 spans (h_j, h_{j+1}); interval
/// m - 1 wraps from h_{m-1} to h_0.
struct QuantumInstance {
  std::uint32_t n = 0;
  double theta = 0.0;
  double lambda = 0.0;
  std::vector<std::vector<double>> holes;
  std::vector<LinkPoint> links;
  std::vector<double> uniforms;  // consumed in order by fresh-start steps

  std::uint32_t interval_count(std::uint32_t circle) const;
  std::uint64_t total_intervals() const;
  /// Index of the interval of `circle` containing `x`.
  std::uint32_t interval_of(std::uint32_t circle, double x) const;
  Arc interval_arc(std::uint32_t circle, std::uint32_t index) const;
  /// Global interval ids: offsets[c] + local index.
  std::vector<std::uint64_t> interval_offsets() const;
  void validate() const;
};

using MaterializedInstance =
    std::variant<SimpleGraph, ConfigurationInstance, BipartiteInstance, QuantumInstance>;

}  // namespace critwalk
