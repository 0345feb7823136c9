#pragma once

// Quantum random graph G(n, beta, lambda), described as n circles of length
// theta = lambda * beta with rate-1 holes and rate-1/(lambda n) pairwise links.

#include <cstdint>
#include <vector>

#include "critwalk/instance.hpp"
#include "critwalk/intersection.hpp"
#include "critwalk/profile.hpp"
#include "critwalk/rng.hpp"

namespace critwalk::quantum {

struct QuantumParams {
  QuantumParams(std::uint64_t n, double beta, double lambda);

  std::uint64_t n;
  double beta;
  double lambda;
  double theta;
};

/// F(theta) = 2(1 - e^{-theta}) - theta e^{-theta}: mean cut-gamma interval length.
double interval_mean(double theta);

/// F(theta) / theta, evaluated stably near 0.
double interval_mean_ratio(double theta);

/// lambda^{-1} F(lambda beta) - 1.
double critical_residual(double beta, double lambda);

struct CriticalPoint {
  double beta = 0.0;
  std::vector<double> lambda_roots;
  std::vector<double> residuals;
};

/// All lambda > 0 with lambda^{-1} F(lambda beta) = 1, by bisection on every
/// sign change of the residual over a log-spaced bracket scan.
CriticalPoint solve_critical_lambda(double beta);

/// 1 / sup_theta F(theta)/theta, by numeric maximization.
double solvability_threshold();

/// Reduced exploration: n steps, one interval per circle, eta drawn from a
/// binomial with success probability 1 - exp(-J / (lambda n)).
ComponentProfile reduced_explore(const QuantumParams& params, RngStream& stream);

/// Monte Carlo mean of the reduced process's first-step offspring.
intersection::MeanEstimate mean_offspring_check(const QuantumParams& params, std::uint64_t samples,
                                                RngStream& stream);

/// Realizes holes, all pairwise link processes and the exploration uniforms.
QuantumInstance materialize_quantum(const QuantumParams& params, RngStream& stream,
                                    std::uint32_t cap = kDefaultQuantumOracleCap);

/// Neutral (unexplored) space of every circle as sorted non-wrapping segments.
class NeutralLedger {
 public:
  struct Segment {
    double lo;
    double hi;
  };

  static constexpr double kTolerance = 1e-9;

  NeutralLedger(std::uint32_t circles, double theta);

  bool intact(std::uint32_t circle) const { return !touched_[circle]; }
  bool has_neutral(std::uint32_t circle) const { return !segments_[circle].empty(); }
  double neutral_length(std::uint32_t circle) const;
  const std::vector<Segment>& segments(std::uint32_t circle) const { return segments_[circle]; }

  /// Position at fraction u in [0, 1) of the circle's neutral measure.
  double point_at(std::uint32_t circle, double u) const;
  /// Maximal neutral arc containing x (full circle when intact).
  Arc neutral_arc_around(std::uint32_t circle, double x) const;
  /// Marks the arc explored.
  void remove(const Arc& arc);

 private:
  void subtract(std::uint32_t circle, double lo, double hi);

  double theta_;
  std::vector<std::vector<Segment>> segments_;
  std::vector<std::uint8_t> touched_;
};

/// Deterministic replay of the full interval-by-interval exploration on a
/// materialized instance. Sizes are in intervals.
ComponentProfile full_explore(const QuantumInstance& instance);

}  // namespace critwalk::quantum
