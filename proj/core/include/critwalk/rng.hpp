#pragma once

// Deterministic counter-based random streams and the exact samplers consumed
// by the exploration engines.

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace critwalk {

/// A Philox4x32-10 stream addressed by (master_seed, stream_index).
///
/// Every stream is a pure function of its two coordinates and an internal
/// block counter, so trial streams can be derived in any order and on any
/// thread. Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next_u64(); }
  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform on (0, 1]; safe as a log argument.
  double uniform_pos();
  /// Unit-rate exponential.
  double exponential();
  /// Uniform integer on [0, bound) without modulo bias. bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  /// 50 hex characters: seed, index, next block, buffer position.
  std::string serialize() const;
  static RngStream deserialize(std::string_view token);

  friend bool operator==(const RngStream& a, const RngStream& b) {
    return a.master_seed_ == b.master_seed_ && a.stream_index_ == b.stream_index_ &&
           a.next_block_ == b.next_block_ && a.pos_ == b.pos_;
  }

 private:
  void refill();

  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t next_block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  std::uint8_t pos_ = 2;
};

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_index);

/// Raw Philox4x32-10 block function; exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Parameters of the cut-gamma law: (E1 + E2) capped at theta.
struct CutGammaParams {
  explicit CutGammaParams(double theta);
  double theta;
};

/// log(k!) exact to double precision.
double log_factorial(std::uint64_t k);

bool sample_bernoulli(double prob, RngStream& stream);

/// Exact Binomial(count, prob) draw.
std::uint64_t sample_binomial(std::uint64_t count, double prob, RngStream& stream);

/// Exact Poisson(mean) draw.
std::uint64_t sample_poisson(double mean, RngStream& stream);

/// min(E1 + E2, theta) for independent unit exponentials.
double sample_cut_gamma(const CutGammaParams& params, RngStream& stream);

/// Homogeneous Poisson process on [0, length), sorted ascending.
std::vector<double> sample_poisson_process(double rate, double length, RngStream& stream);

/// Closed-form mean of the cut-gamma law: 2 - (theta + 2) e^{-theta}.
double cut_gamma_mean(double theta);

/// Closed-form CDF of the cut-gamma law.
double cut_gamma_cdf(double x, double theta);

}  // namespace critwalk
