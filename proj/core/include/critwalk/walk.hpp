#pragma once

// Lattice random-walk estimators: stay-positive and ballot-type probabilities,
// excursion decomposition of paths, and the binomial Chernoff bound.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "critwalk/rng.hpp"

namespace critwalk::walk {

struct PoissonMinusOne {};
/// Bin(count, prob) - 1.
struct BinomialMinusOne {
  std::uint64_t count;
  double prob;
};
/// (d - 1) Bernoulli(prob) - 1.
struct RegularStep {
  std::uint32_t d;
  double prob;
};
/// d - 2 with probability 1/(d - 1), else -1; mean zero.
struct CutWalk {
  std::uint32_t d;
};
struct Rademacher {};

using IncrementLaw = std::variant<PoissonMinusOne, BinomialMinusOne, RegularStep, CutWalk, Rademacher>;

/// Throws ParameterError on out-of-range parameters.
void validate(const IncrementLaw& law);
double law_mean(const IncrementLaw& law);
std::int64_t sample_increment(const IncrementLaw& law, RngStream& stream);
/// Law kind: poisson, binomial, regular, cutwalk or rademacher.
std::string law_name(const IncrementLaw& law);
/// Semicolon-separated parameters, e.g. "d=3" (empty when parameter-free).
std::string law_params(const IncrementLaw& law);
/// Increment values of positive probability, capped at `cap` from above.
std::vector<std::int64_t> law_support(const IncrementLaw& law, std::int64_t cap);

struct Estimate {
  std::string law;
  std::string params;
  std::uint64_t horizon = 0;
  std::int64_t j = -1;  // -1 when not a ballot estimate
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double phat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  bool reachable = true;
};

/// P(start + X_1 + ... + X_t > 0 for all 1 <= t <= horizon); start defaults
/// to 1.
Estimate stay_positive_estimate(const IncrementLaw& law, std::uint64_t horizon, std::uint64_t trials,
                                RngStream& stream, std::int64_t start = 1);

/// P(S_t > 0 for all t in [n], S_n = j) for S_0 = 0 and a centred law.
/// Unreachable j yields phat = 0 with reachable = false and no simulation.
Estimate ballot_estimate(const IncrementLaw& law, std::uint64_t n, std::int64_t j, std::uint64_t trials,
                         RngStream& stream);

/// Joint ballot estimates for every j in [1, j_max] from one set of paths.
std::vector<Estimate> ballot_estimates(const IncrementLaw& law, std::uint64_t n, std::int64_t j_max,
                                       std::uint64_t trials, RngStream& stream);

/// Whether S_n = j with S_t > 0 on [n] has positive probability.
bool ballot_reachable(const IncrementLaw& law, std::uint64_t n, std::int64_t j);

/// exp(-x^2 / (2 (N P + x / 3))), bounding P(Bin(N, P) >= N P + x).
double chernoff_bound(std::uint64_t big_n, double big_p, double x);

/// Monte Carlo frequency of B_{N,P} >= N P + x (law "chernoff", horizon N).
Estimate chernoff_exceedance_estimate(std::uint64_t big_n, double big_p, double x, std::uint64_t trials,
                                      RngStream& stream);

struct ExcursionSplit {
  std::vector<std::uint64_t> completed;
  std::uint64_t open_length = 0;
};

/// Lengths t_i - t_{i-1} between successive zeros of a path indexed from
/// t = 1 (t_0 = 0 implicit). Steps after the last zero are reported as the
/// open excursion.
ExcursionSplit excursion_lengths(const std::vector<std::int64_t>& path);

}  // namespace critwalk::walk
