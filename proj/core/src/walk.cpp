#include "critwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "critwalk/errors.hpp"
#include "critwalk/stats.hpp"

namespace critwalk::walk {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(std::string(what) + ": prob must lie in [0, 1]");
}

Estimate make_estimate(const IncrementLaw& law, std::uint64_t horizon, std::int64_t j,
                       std::uint64_t trials, std::uint64_t hits) {
  Estimate est;
  est.law = law_name(law);
  est.params = law_params(law);
  est.horizon = horizon;
  est.j = j;
  est.trials = trials;
  est.hits = hits;
  est.phat = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
  const Interval ci = wilson_interval(hits, trials);
  est.ci_lo = ci.lo;
  est.ci_hi = ci.hi;
  return est;
}

}  // namespace

void validate(const IncrementLaw& law) {
  std::visit(Overloaded{
                 [](const PoissonMinusOne&) {},
                 [](const BinomialMinusOne& b) { require_prob(b.prob, "binomial-1"); },
                 [](const RegularStep& r) {
                   require_prob(r.prob, "regular step");
                   if (r.d < 2) throw ParameterError("regular step: d must be at least 2");
                 },
                 [](const CutWalk& c) {
                   if (c.d < 2) throw ParameterError("cut walk: d must be at least 2");
                 },
                 [](const Rademacher&) {},
             },
             law);
}

double law_mean(const IncrementLaw& law) {
  return std::visit(Overloaded{
                        [](const PoissonMinusOne&) { return 0.0; },
                        [](const BinomialMinusOne& b) { return static_cast<double>(b.count) * b.prob - 1.0; },
                        [](const RegularStep& r) { return static_cast<double>(r.d - 1) * r.prob - 1.0; },
                        [](const CutWalk& c) {
                          // (d - 2) * 1/(d - 1) + (-1) * (d - 2)/(d - 1)
                          const double up = static_cast<double>(c.d - 2);
                          const double q = 1.0 / static_cast<double>(c.d - 1);
                          return up * q - (1.0 - q);
                        },
                        [](const Rademacher&) { return 0.0; },
                    },
                    law);
}

std::int64_t sample_increment(const IncrementLaw& law, RngStream& stream) {
  return std::visit(
      Overloaded{
          [&](const PoissonMinusOne&) { return static_cast<std::int64_t>(sample_poisson(1.0, stream)) - 1; },
          [&](const BinomialMinusOne& b) {
            return static_cast<std::int64_t>(sample_binomial(b.count, b.prob, stream)) - 1;
          },
          [&](const RegularStep& r) {
            return sample_bernoulli(r.prob, stream) ? static_cast<std::int64_t>(r.d) - 2 : std::int64_t{-1};
          },
          [&](const CutWalk& c) {
            return stream.uniform_index(c.d - 1) == 0 ? static_cast<std::int64_t>(c.d) - 2 : std::int64_t{-1};
          },
          [&](const Rademacher&) { return (stream.next_u64() >> 63) ? std::int64_t{1} : std::int64_t{-1}; },
      },
      law);
}

std::string law_name(const IncrementLaw& law) {
  return std::visit(Overloaded{
                        [](const PoissonMinusOne&) { return std::string("poisson"); },
                        [](const BinomialMinusOne&) { return std::string("binomial"); },
                        [](const RegularStep&) { return std::string("regular"); },
                        [](const CutWalk&) { return std::string("cutwalk"); },
                        [](const Rademacher&) { return std::string("rademacher"); },
                    },
                    law);
}

std::string law_params(const IncrementLaw& law) {
  auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  return std::visit(Overloaded{
                        [](const PoissonMinusOne&) { return std::string(); },
                        [&](const BinomialMinusOne& b) {
                          return "count=" + std::to_string(b.count) + ";prob=" + num(b.prob);
                        },
                        [&](const RegularStep& r) { return "d=" + std::to_string(r.d) + ";prob=" + num(r.prob); },
                        [](const CutWalk& c) { return "d=" + std::to_string(c.d); },
                        [](const Rademacher&) { return std::string(); },
                    },
                    law);
}

std::vector<std::int64_t> law_support(const IncrementLaw& law, std::int64_t cap) {
  std::vector<std::int64_t> values;
  auto add_range = [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t v = lo; v <= std::min(hi, cap); ++v) values.push_back(v);
  };
  std::visit(Overloaded{
                 [&](const PoissonMinusOne&) { add_range(-1, cap); },
                 [&](const BinomialMinusOne& b) {
                   const auto top = static_cast<std::int64_t>(b.count) - 1;
                   if (b.prob == 0.0) {
                     add_range(-1, -1);
                   } else if (b.prob == 1.0) {
                     add_range(top, top);
                   } else {
                     add_range(-1, top);
                   }
                 },
                 [&](const RegularStep& r) {
                   const auto up = static_cast<std::int64_t>(r.d) - 2;
                   if (r.prob < 1.0) add_range(-1, -1);
                   if (r.prob > 0.0 && up != -1) add_range(up, up);
                 },
                 [&](const CutWalk& c) {
                   const auto up = static_cast<std::int64_t>(c.d) - 2;
                   if (c.d > 2) add_range(-1, -1);
                   add_range(up, up);
                 },
                 [&](const Rademacher&) {
                   add_range(-1, -1);
                   add_range(1, 1);
                 },
             },
             law);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

bool ballot_reachable(const IncrementLaw& law, std::uint64_t n, std::int64_t j) {
  validate(law);
  if (n == 0 || j < 1) return false;
  const auto steps = static_cast<std::int64_t>(n);
  const auto support = law_support(law, j + steps + 1);
  const bool has_minus_one = std::binary_search(support.begin(), support.end(), -1);
  const bool has_zero = std::binary_search(support.begin(), support.end(), 0);
  std::vector<std::int64_t> positives;
  for (auto v : support) {
    if (v > 0) positives.push_back(v);
  }
  if (positives.empty()) return false;
  // Every law here has a contiguous positive support [lo, hi] and no step
  // below -1. Putting all up-steps first, then zeros, then -1 steps keeps
  // the path positive, so reachability is a counting question.
  const std::int64_t lo = positives.front();
  const std::int64_t hi = positives.back();
  for (std::int64_t k = 1; k <= steps; ++k) {
    const std::int64_t z_max = has_zero ? steps - k : 0;
    for (std::int64_t z = 0; z <= z_max; ++z) {
      const std::int64_t minus = steps - k - z;
      if (minus > 0 && !has_minus_one) continue;
      const std::int64_t up_total = j + minus;
      if (up_total >= k * lo && up_total <= k * hi) return true;
    }
  }
  return false;
}

Estimate stay_positive_estimate(const IncrementLaw& law, std::uint64_t horizon, std::uint64_t trials,
                                RngStream& stream, std::int64_t start) {
  validate(law);
  if (horizon < 1) throw ParameterError("stay_positive_estimate: horizon must be at least 1");
  if (trials < 1) throw ParameterError("stay_positive_estimate: trials must be at least 1");
  std::uint64_t hits = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::int64_t s = start;
    bool alive = true;
    for (std::uint64_t t = 0; t < horizon; ++t) {
      s += sample_increment(law, stream);
      if (s <= 0) {
        alive = false;
        break;
      }
    }
    hits += alive ? 1 : 0;
  }
  return make_estimate(law, horizon, -1, trials, hits);
}

std::vector<Estimate> ballot_estimates(const IncrementLaw& law, std::uint64_t n, std::int64_t j_max,
                                       std::uint64_t trials, RngStream& stream) {
  validate(law);
  if (n < 1) throw ParameterError("ballot_estimate: n must be at least 1");
  if (trials < 1) throw ParameterError("ballot_estimate: trials must be at least 1");
  if (j_max < 0) throw ParameterError("ballot_estimate: j must be nonnegative");
  if (std::fabs(law_mean(law)) > 1e-12) throw ParameterError("ballot_estimate: law must be centred");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(j_max) + 1, 0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::int64_t s = 0;
    bool alive = true;
    for (std::uint64_t t = 0; t < n; ++t) {
      s += sample_increment(law, stream);
      if (s <= 0) {
        alive = false;
        break;
      }
    }
    if (alive && s <= j_max) ++counts[static_cast<std::size_t>(s)];
  }
  std::vector<Estimate> out;
  for (std::int64_t j = 0; j <= j_max; ++j) {
    Estimate est = make_estimate(law, n, j, trials, counts[static_cast<std::size_t>(j)]);
    est.reachable = ballot_reachable(law, n, j);
    out.push_back(est);
  }
  return out;
}

Estimate ballot_estimate(const IncrementLaw& law, std::uint64_t n, std::int64_t j, std::uint64_t trials,
                         RngStream& stream) {
  validate(law);
  if (j < 0) throw ParameterError("ballot_estimate: j must be nonnegative");
  if (!ballot_reachable(law, n, j)) {
    if (std::fabs(law_mean(law)) > 1e-12) throw ParameterError("ballot_estimate: law must be centred");
    Estimate est = make_estimate(law, n, j, trials, 0);
    est.reachable = false;
    return est;
  }
  return ballot_estimates(law, n, j, trials, stream).back();
}

double chernoff_bound(std::uint64_t big_n, double big_p, double x) {
  if (big_n < 1) throw ParameterError("chernoff_bound: N must be at least 1");
  require_prob(big_p, "chernoff_bound");
  if (!(x >= 0.0)) throw ParameterError("chernoff_bound: x must be nonnegative");
  if (x == 0.0) return 1.0;
  const double mean = static_cast<double>(big_n) * big_p;
  return std::exp(-x * x / (2.0 * (mean + x / 3.0)));
}

Estimate chernoff_exceedance_estimate(std::uint64_t big_n, double big_p, double x, std::uint64_t trials,
                                      RngStream& stream) {
  chernoff_bound(big_n, big_p, x);
  if (trials < 1) throw ParameterError("chernoff_exceedance_estimate: trials must be at least 1");
  const double level = static_cast<double>(big_n) * big_p + x;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    hits += static_cast<double>(sample_binomial(big_n, big_p, stream)) >= level ? 1 : 0;
  }
  Estimate est = make_estimate(BinomialMinusOne{big_n, big_p}, big_n, -1, trials, hits);
  char buf[64];
  std::snprintf(buf, sizeof(buf), ";x=%.17g", x);
  est.law = "chernoff";
  est.params += buf;
  return est;
}

ExcursionSplit excursion_lengths(const std::vector<std::int64_t>& path) {
  if (!path.empty() && path.front() < 0) throw ParameterError("excursion_lengths: path must start nonnegative");
  ExcursionSplit split;
  std::uint64_t last_zero = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] == 0) {
      split.completed.push_back(i + 1 - last_zero);
      last_zero = i + 1;
    }
  }
  split.open_length = path.size() - last_zero;
  return split;
}

}  // namespace critwalk::walk
