#include "critwalk/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "critwalk/errors.hpp"
#include "critwalk/rng.hpp"
#include "critwalk/stats.hpp"

namespace critwalk::harness {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

TrialSummary summarize(const ComponentProfile& profile, std::uint64_t trial) {
  TrialSummary s;
  s.trial = trial;
  s.cmax = profile.cmax();
  s.n_components = profile.n_components();
  s.max_active = profile.max_active;
  s.steps = profile.steps;
  return s;
}

struct LineFit {
  double slope;
  double intercept;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("fit_stretch_exponent: usable rows share a single A value");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

double percentile(std::vector<double> sorted_values, double q) {
  std::sort(sorted_values.begin(), sorted_values.end());
  const double pos = q * static_cast<double>(sorted_values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted_values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
}

}  // namespace

ModelKind kind_of(const ModelSpec& spec) {
  return std::visit(Overloaded{
                        [](const er::ErParams&) { return ModelKind::er; },
                        [](const regular::RegParams&) { return ModelKind::regular; },
                        [](const intersection::IntersectionParams&) { return ModelKind::intersection; },
                        [](const quantum::QuantumParams&) { return ModelKind::quantum; },
                    },
                    spec);
}

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::er: return "er";
    case ModelKind::regular: return "regular";
    case ModelKind::intersection: return "intersection";
    case ModelKind::quantum: return "quantum";
  }
  return "unknown";
}

std::uint64_t vertex_count(const ModelSpec& spec) {
  return std::visit([](const auto& p) { return static_cast<std::uint64_t>(p.n); }, spec);
}

TrialSummary run_trial(const ModelSpec& spec, std::uint64_t trial, std::uint64_t master_seed,
                       const RunOptions& options) {
  RngStream stream = derive_stream(master_seed, trial);
  return std::visit(
      Overloaded{
          [&](const er::ErParams& p) { return summarize(er::explore(p, stream), trial); },
          [&](const regular::RegParams& p) {
            const ComponentProfile profile =
                options.regular_simple_only ? regular::explore_conditioned_simple(p, stream) : regular::explore(p, stream);
            TrialSummary s = summarize(profile, trial);
            s.halfedge_excursion_max =
                profile.halfedge_lengths.empty()
                    ? 0
                    : *std::max_element(profile.halfedge_lengths.begin(), profile.halfedge_lengths.end());
            if (options.regular_simple_only) s.simple_flag = true;
            return s;
          },
          [&](const intersection::IntersectionParams& p) {
            const ComponentProfile profile = intersection::explore(p, stream);
            TrialSummary s = summarize(profile, trial);
            s.attributes_discovered_total = profile.attributes_discovered;
            return s;
          },
          [&](const quantum::QuantumParams& p) {
            const ComponentProfile profile = quantum::reduced_explore(p, stream);
            TrialSummary s = summarize(profile, trial);
            s.intervals_total = profile.total_size();
            return s;
          },
      },
      spec);
}

std::vector<TrialSummary> run(const ModelSpec& spec, std::uint64_t trials, std::uint64_t master_seed,
                              unsigned workers, const RunOptions& options) {
  if (trials < 1) throw ParameterError("run: trials must be at least 1");
  if (workers < 1) throw ParameterError("run: workers must be at least 1");
  try {
    std::vector<TrialSummary> out(trials);
    for_each_index(trials, workers, [&](std::uint64_t i) { out[i] = run_trial(spec, i, master_seed, options); });
    return out;
  } catch (const std::bad_alloc&) {
    throw std::runtime_error("run: out of memory; partial results discarded");
  }
}

std::string direction_name(Direction direction) { return direction == Direction::lower ? "lower" : "upper"; }

double scale(std::uint64_t n) {
  const double c = std::cbrt(static_cast<double>(n));
  return c * c;
}

TailRow make_row(double a, double threshold, std::uint64_t hits, std::uint64_t trials) {
  TailRow row;
  row.a = a;
  row.threshold = threshold;
  row.trials = trials;
  row.hits = hits;
  row.phat = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
  const Interval ci = wilson_interval(hits, trials);
  row.ci_lo = ci.lo;
  row.ci_hi = ci.hi;
  return row;
}

namespace {

TailCurve tail(const std::vector<TrialSummary>& summaries, std::uint64_t n, const std::vector<double>& a_values,
               Direction direction) {
  for (double a : a_values) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("tail: every A must be positive and finite");
  }
  TailCurve curve;
  curve.direction = direction;
  const double base = scale(n);
  for (double a : a_values) {
    const double threshold = direction == Direction::lower ? base / a : a * base;
    std::uint64_t hits = 0;
    for (const auto& s : summaries) {
      const auto c = static_cast<double>(s.cmax);
      hits += (direction == Direction::lower ? c < threshold : c > threshold) ? 1 : 0;
    }
    curve.rows.push_back(make_row(a, threshold, hits, summaries.size()));
  }
  return curve;
}

}  // namespace

TailCurve lower_tail(const std::vector<TrialSummary>& summaries, std::uint64_t n,
                     const std::vector<double>& a_values) {
  return tail(summaries, n, a_values, Direction::lower);
}

TailCurve upper_tail(const std::vector<TrialSummary>& summaries, std::uint64_t n,
                     const std::vector<double>& a_values) {
  return tail(summaries, n, a_values, Direction::upper);
}

TailCurve merge(const TailCurve& a, const TailCurve& b) {
  if (a.direction != b.direction || a.rows.size() != b.rows.size()) {
    throw ParameterError("merge: curves differ in direction or grid");
  }
  TailCurve out;
  out.direction = a.direction;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const TailRow& x = a.rows[i];
    const TailRow& y = b.rows[i];
    if (x.a != y.a || x.threshold != y.threshold) throw ParameterError("merge: curves differ in A grid");
    out.rows.push_back(make_row(x.a, x.threshold, x.hits + y.hits, x.trials + y.trials));
  }
  return out;
}

ExponentFit fit_stretch_exponent(const TailCurve& curve, std::uint64_t resamples, std::uint64_t seed) {
  std::vector<const TailRow*> usable;
  for (const auto& row : curve.rows) {
    if (row.phat > 0.0 && row.phat < 1.0) usable.push_back(&row);
  }
  if (usable.size() < 3) {
    throw FitError("fit_stretch_exponent: need at least 3 rows with 0 < phat < 1, have " +
                   std::to_string(usable.size()));
  }
  std::vector<double> x;
  std::vector<double> y;
  for (const TailRow* row : usable) {
    x.push_back(std::log(row->a));
    y.push_back(std::log(-std::log(row->phat)));
  }
  const LineFit point = least_squares(x, y);

  ExponentFit fit;
  fit.slope = point.slope;
  fit.intercept = point.intercept;
  fit.rows_used = usable.size();
  fit.ci_lo = fit.ci_hi = point.slope;

  RngStream stream = derive_stream(seed, 0);
  std::vector<double> slopes;
  slopes.reserve(resamples);
  for (std::uint64_t r = 0; r < resamples; ++r) {
    std::vector<double> bx;
    std::vector<double> by;
    for (const TailRow* row : usable) {
      double p = row->phat;
      if (row->trials > 0) {
        p = static_cast<double>(sample_binomial(row->trials, row->phat, stream)) / static_cast<double>(row->trials);
      }
      if (p > 0.0 && p < 1.0) {
        bx.push_back(std::log(row->a));
        by.push_back(std::log(-std::log(p)));
      }
    }
    if (bx.size() < 3) continue;
    slopes.push_back(least_squares(bx, by).slope);
  }
  fit.resamples = slopes.size();
  if (!slopes.empty()) {
    fit.ci_lo = percentile(slopes, 0.025);
    fit.ci_hi = percentile(slopes, 0.975);
  }
  return fit;
}

}  // namespace critwalk::harness
