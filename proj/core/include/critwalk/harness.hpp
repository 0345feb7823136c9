#pragma once

// Trial orchestration, tail-probability curves and stretched-exponent fits.

#include <cstdint>
#include <exception>
#include <mutex>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "critwalk/er.hpp"
#include "critwalk/intersection.hpp"
#include "critwalk/profile.hpp"
#include "critwalk/quantum.hpp"
#include "critwalk/regular.hpp"

namespace critwalk::harness {

using ModelSpec = std::variant<er::ErParams, regular::RegParams, intersection::IntersectionParams,
                               quantum::QuantumParams>;

enum class ModelKind { er, regular, intersection, quantum };

ModelKind kind_of(const ModelSpec& spec);
std::string model_name(ModelKind kind);
std::uint64_t vertex_count(const ModelSpec& spec);

struct RunOptions {
  // regular model only: condition on a simple pairing by rejection
  bool regular_simple_only = false;
};

/// Per-trial scalar statistics; the optional fields are model specific.
struct TrialSummary {
  std::uint64_t trial = 0;
  std::uint64_t cmax = 0;
  std::uint64_t n_components = 0;
  std::uint64_t max_active = 0;
  std::uint64_t steps = 0;
  std::optional<std::uint64_t> halfedge_excursion_max;
  std::optional<bool> simple_flag;
  std::optional<std::uint64_t> attributes_discovered_total;
  std::optional<std::uint64_t> intervals_total;

  bool operator==(const TrialSummary&) const = default;
};

/// One exploration for trial `trial` on derive_stream(master_seed, trial).
TrialSummary run_trial(const ModelSpec& spec, std::uint64_t trial, std::uint64_t master_seed,
                       const RunOptions& options = {});

/// Calls body(i) for every i in [0, count) on `workers` fixed shards
/// (i mod workers). The first exception is rethrown after all shards join.
template <class Body>
void for_each_index(std::uint64_t count, unsigned workers, Body&& body) {
  if (workers <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  const auto shards = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
  std::exception_ptr failure;
  std::mutex failure_lock;
  std::vector<std::thread> threads;
  threads.reserve(shards);
  for (unsigned w = 0; w < shards; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < count; i += shards) {
          {
            std::lock_guard<std::mutex> guard(failure_lock);
            if (failure) return;
          }
          body(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> guard(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Runs `trials` independent trials; output is ordered by trial index and
/// does not depend on `workers`.
std::vector<TrialSummary> run(const ModelSpec& spec, std::uint64_t trials, std::uint64_t master_seed,
                              unsigned workers, const RunOptions& options = {});

enum class Direction { lower, upper };

std::string direction_name(Direction direction);

struct TailRow {
  double a = 0.0;
  double threshold = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double phat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

struct TailCurve {
  Direction direction = Direction::lower;
  std::vector<TailRow> rows;
};

/// n^{2/3}.
double scale(std::uint64_t n);

/// Hit iff cmax < n^{2/3} / A.
TailCurve lower_tail(const std::vector<TrialSummary>& summaries, std::uint64_t n,
                     const std::vector<double>& a_values);
/// Hit iff cmax > A n^{2/3}.
TailCurve upper_tail(const std::vector<TrialSummary>& summaries, std::uint64_t n,
                     const std::vector<double>& a_values);

/// Row from raw counts with the Wilson interval filled in.
TailRow make_row(double a, double threshold, std::uint64_t hits, std::uint64_t trials);

/// Adds hit and trial counts row by row; both curves must share direction and grid.
TailCurve merge(const TailCurve& a, const TailCurve& b);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t rows_used = 0;
  std::uint64_t resamples = 0;
};

inline constexpr std::uint64_t kBootstrapResamples = 1000;
inline constexpr std::uint64_t kBootstrapSeed = 0x5eedb007u;

/// Least squares of log(-log phat) on log A over rows with 0 < phat < 1;
/// percentile bootstrap CI from binomial resampling of each row's count.
ExponentFit fit_stretch_exponent(const TailCurve& curve, std::uint64_t resamples = kBootstrapResamples,
                                 std::uint64_t seed = kBootstrapSeed);

}  // namespace critwalk::harness
