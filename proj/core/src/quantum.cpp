#include "critwalk/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "critwalk/errors.hpp"

namespace critwalk::quantum {

QuantumParams::QuantumParams(std::uint64_t n_, double beta_, double lambda_)
    : n(n_), beta(beta_), lambda(lambda_), theta(lambda_ * beta_) {
  if (n == 0) throw ParameterError("quantum: n must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("quantum: beta must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("quantum: lambda must be positive");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw ParameterError("quantum: theta = lambda beta must be positive");
}

double interval_mean(double theta) { return -2.0 * std::expm1(-theta) - theta * std::exp(-theta); }

double interval_mean_ratio(double theta) {
  if (theta < 1e-3) {
    // F(theta)/theta = sum_k (-1)^{k+1} (2 - k) theta^{k-1} / k!
    const double t2 = theta * theta;
    return 1.0 - t2 / 6.0 + t2 * theta / 12.0 - t2 * t2 / 40.0 + t2 * t2 * theta / 180.0;
  }
  return interval_mean(theta) / theta;
}

double critical_residual(double beta, double lambda) {
  if (!(beta > 0.0) || !(lambda > 0.0)) {
    throw ParameterError("critical_residual: beta and lambda must be positive");
  }
  const double theta = lambda * beta;
  if (std::isinf(theta)) return 2.0 / lambda - 1.0;
  return beta * interval_mean_ratio(theta) - 1.0;
}

CriticalPoint solve_critical_lambda(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("solve_critical_lambda: beta must be positive");
  CriticalPoint point;
  point.beta = beta;
  constexpr int kGrid = 4000;
  const double theta_lo = 1e-9;
  const double theta_hi = std::max(100.0, 8.0 * beta);
  const double log_step = std::log(theta_hi / theta_lo) / kGrid;
  auto g = [beta](double lambda) { return critical_residual(beta, lambda); };

  double prev_lambda = theta_lo / beta;
  double prev_g = g(prev_lambda);
  for (int i = 1; i <= kGrid; ++i) {
    const double lambda = theta_lo * std::exp(log_step * i) / beta;
    const double cur_g = g(lambda);
    if ((prev_g > 0.0) != (cur_g > 0.0)) {
      double lo = prev_lambda;
      double hi = lambda;
      const bool lo_positive = prev_g > 0.0;
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        ((g(mid) > 0.0) == lo_positive ? lo : hi) = mid;
      }
      const double root = std::fabs(g(lo)) <= std::fabs(g(hi)) ? lo : hi;
      const double residual = g(root);
      if (std::fabs(residual) < 1e-12) {
        point.lambda_roots.push_back(root);
        point.residuals.push_back(residual);
      }
    }
    prev_lambda = lambda;
    prev_g = cur_g;
  }
  return point;
}

double solvability_threshold() {
  // Coarse log-grid scan, then golden-section refinement around the best cell.
  constexpr int kGrid = 2000;
  const double lo = std::log(1e-9);
  const double hi = std::log(100.0);
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double value = interval_mean_ratio(std::exp(lo + (hi - lo) * i / kGrid));
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best - 1) / kGrid;
  double b = lo + (hi - lo) * std::min(kGrid, best + 1) / kGrid;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int iter = 0; iter < 200 && b - a > 1e-12; ++iter) {
    const double c = b - phi * (b - a);
    const double d = a + phi * (b - a);
    if (interval_mean_ratio(std::exp(c)) >= interval_mean_ratio(std::exp(d))) {
      b = d;
    } else {
      a = c;
    }
  }
  best_value = std::max(best_value, interval_mean_ratio(std::exp(0.5 * (a + b))));
  return 1.0 / best_value;
}

namespace {

double reduced_join_probability(double jump, double lambda, std::uint64_t n) {
  return -std::expm1(-jump / (lambda * static_cast<double>(n)));
}

}  // namespace

ComponentProfile reduced_explore(const QuantumParams& params, RngStream& stream) {
  const std::uint64_t n = params.n;
  const CutGammaParams cut(params.theta);
  ComponentProfile profile;
  ExcursionRecorder walk(profile);
  for (std::uint64_t t = 1; t <= n; ++t) {
    const double jump = sample_cut_gamma(cut, stream);
    const std::uint64_t unseen = n - (t - 1) - walk.active();
    const std::uint64_t available = walk.idle() ? unseen - 1 : unseen;
    walk.step(sample_binomial(available, reduced_join_probability(jump, params.lambda, n), stream));
  }
  return profile;
}

intersection::MeanEstimate mean_offspring_check(const QuantumParams& params, std::uint64_t samples,
                                                RngStream& stream) {
  if (samples == 0) throw ParameterError("mean_offspring_check: samples must be positive");
  const CutGammaParams cut(params.theta);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double jump = sample_cut_gamma(cut, stream);
    const auto eta = static_cast<double>(
        sample_binomial(params.n - 1, reduced_join_probability(jump, params.lambda, params.n), stream));
    sum += eta;
    sum_sq += eta * eta;
  }
  const double m = static_cast<double>(samples);
  intersection::MeanEstimate est;
  est.samples = samples;
  est.mean = sum / m;
  const double var = samples > 1 ? std::max(0.0, (sum_sq - m * est.mean * est.mean) / (m - 1.0)) : 0.0;
  est.std_error = std::sqrt(var / m);
  return est;
}

QuantumInstance materialize_quantum(const QuantumParams& params, RngStream& stream, std::uint32_t cap) {
  if (params.n > cap) {
    throw SizeError("quantum materialization: n = " + std::to_string(params.n) +
                    " exceeds oracle cap " + std::to_string(cap));
  }
  QuantumInstance instance;
  instance.n = static_cast<std::uint32_t>(params.n);
  instance.theta = params.theta;
  instance.lambda = params.lambda;
  instance.holes.reserve(instance.n);
  for (std::uint32_t c = 0; c < instance.n; ++c) {
    instance.holes.push_back(sample_poisson_process(1.0, params.theta, stream));
  }
  const double link_rate = 1.0 / (params.lambda * static_cast<double>(params.n));
  for (std::uint32_t u = 0; u < instance.n; ++u) {
    for (std::uint32_t v = u + 1; v < instance.n; ++v) {
      for (double time : sample_poisson_process(link_rate, params.theta, stream)) {
        instance.links.push_back({u, v, time});
      }
    }
  }
  instance.uniforms.resize(instance.total_intervals());
  for (auto& u : instance.uniforms) u = stream.uniform();
  return instance;
}

NeutralLedger::NeutralLedger(std::uint32_t circles, double theta)
    : theta_(theta), segments_(circles, std::vector<Segment>{{0.0, theta}}), touched_(circles, 0) {}

double NeutralLedger::neutral_length(std::uint32_t circle) const {
  double total = 0.0;
  for (const auto& seg : segments_[circle]) total += seg.hi - seg.lo;
  return total;
}

double NeutralLedger::point_at(std::uint32_t circle, double u) const {
  const auto& segs = segments_[circle];
  if (segs.empty()) throw ValidationError("point_at: circle has no neutral space");
  double remaining = u * neutral_length(circle);
  for (const auto& seg : segs) {
    const double len = seg.hi - seg.lo;
    if (remaining < len) return seg.lo + remaining;
    remaining -= len;
  }
  return segs.back().lo + 0.5 * (segs.back().hi - segs.back().lo);
}

Arc NeutralLedger::neutral_arc_around(std::uint32_t circle, double x) const {
  Arc arc;
  arc.circle = circle;
  if (intact(circle)) {
    arc.full = true;
    arc.start = 0.0;
    arc.end = theta_;
    return arc;
  }
  const auto& segs = segments_[circle];
  const auto it = std::find_if(segs.begin(), segs.end(),
                               [x](const Segment& s) { return s.lo <= x && x < s.hi; });
  if (it == segs.end()) throw ValidationError("active point does not lie on neutral space");
  arc.start = it->lo;
  arc.end = it->hi;
  const bool touches_top = it->hi >= theta_ - kTolerance;
  const bool touches_zero = it->lo <= kTolerance;
  if (touches_top && segs.front().lo <= kTolerance && &segs.front() != &*it) {
    arc.end = segs.front().hi;
    arc.wraps = true;
  } else if (touches_zero && segs.back().hi >= theta_ - kTolerance && &segs.back() != &*it) {
    arc.start = segs.back().lo;
    arc.wraps = true;
  }
  return arc;
}

void NeutralLedger::subtract(std::uint32_t circle, double lo, double hi) {
  auto& segs = segments_[circle];
  std::vector<Segment> out;
  out.reserve(segs.size() + 1);
  for (const auto& seg : segs) {
    if (hi <= seg.lo || lo >= seg.hi) {
      out.push_back(seg);
      continue;
    }
    if (lo - seg.lo > kTolerance) out.push_back({seg.lo, lo});
    if (seg.hi - hi > kTolerance) out.push_back({hi, seg.hi});
  }
  segs = std::move(out);
}

void NeutralLedger::remove(const Arc& arc) {
  touched_[arc.circle] = 1;
  if (arc.full) {
    segments_[arc.circle].clear();
  } else if (arc.wraps) {
    subtract(arc.circle, arc.start, theta_);
    subtract(arc.circle, 0.0, arc.end);
  } else {
    subtract(arc.circle, arc.start, arc.end);
  }
}

namespace {

struct CircleLink {
  double time;
  std::uint32_t other;
};

// Distance travelled backward (forward) around the circle from x to y.
double back_distance(double x, double y, double theta) { return x >= y ? x - y : x - y + theta; }
double fwd_distance(double x, double y, double theta) { return y >= x ? y - x : y - x + theta; }

}  // namespace

ComponentProfile full_explore(const QuantumInstance& instance) {
  instance.validate();
  const std::uint32_t n = instance.n;
  const double theta = instance.theta;
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<std::vector<CircleLink>> links_by_circle(n);
  for (const auto& link : instance.links) {
    links_by_circle[link.u].push_back({link.time, link.v});
    links_by_circle[link.v].push_back({link.time, link.u});
  }
  std::vector<std::vector<std::uint8_t>> explored(n);
  for (std::uint32_t c = 0; c < n; ++c) explored[c].assign(instance.interval_count(c), 0);

  NeutralLedger ledger(n, theta);
  // (circle, registration order) -> position; begin() is the next point to explore
  std::map<std::pair<std::uint32_t, std::uint64_t>, double> active;
  std::uint64_t registrations = 0;
  std::size_t next_uniform = 0;

  ComponentProfile profile;
  std::uint64_t component_intervals = 0;
  const std::uint64_t total = instance.total_intervals();

  for (std::uint64_t t = 1;; ++t) {
    if (active.empty()) {
      std::uint32_t circle = n;
      for (std::uint32_t c = 0; c < n; ++c) {
        if (ledger.intact(c)) {
          circle = c;
          break;
        }
      }
      double position;
      if (circle < n) {
        position = instance.uniforms[next_uniform++] * theta;
      } else {
        for (std::uint32_t c = 0; c < n; ++c) {
          if (ledger.has_neutral(c)) {
            circle = c;
            break;
          }
        }
        if (circle == n) break;
        position = ledger.point_at(circle, instance.uniforms[next_uniform++]);
      }
      active.emplace(std::make_pair(circle, registrations++), position);
    }

    const auto [key, s] = *active.begin();
    const std::uint32_t w = key.first;

    // Extract the sub-interval of the maximal neutral arc around s that the
    // holes delimit, and check the two descriptions agree.
    const auto& holes = instance.holes[w];
    const std::uint32_t j = instance.interval_of(w, s);
    if (explored[w][j]) throw ValidationError("active point lies in an explored interval");
    const Arc neutral = ledger.neutral_arc_around(w, s);
    const Arc interval = instance.interval_arc(w, j);
    if (!neutral.full) {
      const double jump_minus = holes.empty() ? inf : back_distance(s, interval.start, theta);
      const double jump_plus = holes.empty() ? inf : fwd_distance(s, interval.end, theta);
      const double left = std::min(back_distance(s, neutral.start, theta), jump_minus);
      const double right = std::min(fwd_distance(s, neutral.end, theta), jump_plus);
      if (std::fabs(left - jump_minus) > NeutralLedger::kTolerance ||
          std::fabs(right - jump_plus) > NeutralLedger::kTolerance) {
        throw ValidationError("neutral boundary cuts through a hole interval");
      }
    }
    ledger.remove(interval);
    explored[w][j] = 1;
    ++component_intervals;

    std::uint64_t absorbed = 0;
    for (auto it = active.lower_bound({w, 0}); it != active.end() && it->first.first == w;) {
      if (instance.interval_of(w, it->second) == j) {
        it = active.erase(it);
        ++absorbed;
      } else {
        ++it;
      }
    }
    profile.surplus_edges += absorbed - 1;

    for (const auto& link : links_by_circle[w]) {
      if (instance.interval_of(w, link.time) != j) continue;
      const std::uint32_t target = instance.interval_of(link.other, link.time);
      if (explored[link.other][target]) continue;
      active.emplace(std::make_pair(link.other, registrations++), link.time);
    }

    profile.max_active = std::max<std::uint64_t>(profile.max_active, active.size());
    profile.steps = t;
    if (active.empty()) {
      profile.sizes.push_back(component_intervals);
      profile.excursion_bounds.push_back(t);
      component_intervals = 0;
    }
  }
  if (profile.steps != total) throw ValidationError("exploration did not visit every interval");
  return profile;
}

}  // namespace critwalk::quantum
