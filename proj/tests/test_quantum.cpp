#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "critwalk/errors.hpp"
#include "critwalk/oracle.hpp"
#include "critwalk/quantum.hpp"
#include "support/random_instances.hpp"
#include "support/stat_checks.hpp"

using namespace critwalk;
using quantum::QuantumParams;

namespace {

// Closed form 2 - (theta + 2) e^{-theta}, kept apart from the library's form.
double f_closed(double theta) { return 2.0 - (theta + 2.0) * std::exp(-theta); }

// Independent root search for lambda^{-1} f(lambda beta) = 1 on [lo, hi].
double bisect_root(double beta, double lo, double hi) {
  auto g = [beta](double lambda) { return f_closed(lambda * beta) / lambda - 1.0; };
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((g(lo) < 0) == (g(mid) < 0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("parameters") {
  const QuantumParams q(10, 2.0, 1.5);
  CHECK(q.theta == 3.0);
  CHECK_THROWS_AS(QuantumParams(0, 1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(QuantumParams(5, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(QuantumParams(5, 1.0, -1.0), ParameterError);
}

TEST_CASE("critical residual") {
  CHECK(quantum::interval_mean(1.0) == doctest::Approx(2.0 - 3.0 / std::exp(1.0)).epsilon(1e-14));
  CHECK(std::fabs(quantum::interval_mean(1.0) - (2.0 - 3.0 * std::exp(-1.0))) < 1e-14);
  for (double theta : {1e-6, 0.01, 0.5, 1.0, 3.0, 10.0, 40.0}) {
    CHECK(quantum::interval_mean(theta) == doctest::Approx(f_closed(theta)).epsilon(1e-12));
    CHECK(quantum::interval_mean(theta) == doctest::Approx(cut_gamma_mean(theta)).epsilon(1e-12));
  }
  CHECK(quantum::critical_residual(1e-10, 1.0) == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(quantum::critical_residual(1e4, 0.5) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(quantum::critical_residual(1e4, 4.0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK_THROWS_AS(quantum::critical_residual(0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(quantum::critical_residual(1.0, -2.0), ParameterError);
  CHECK(quantum::interval_mean_ratio(1e-12) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("solvability threshold and roots") {
  double best = 0.0;
  for (int i = 1; i <= 200000; ++i) best = std::max(best, f_closed(i * 1e-4) / (i * 1e-4));
  CHECK(best <= 1.0);
  CHECK(quantum::solvability_threshold() == doctest::Approx(1.0).epsilon(1e-6));

  CHECK(quantum::solve_critical_lambda(0.5).lambda_roots.empty());
  CHECK(quantum::solve_critical_lambda(1.0).lambda_roots.empty());

  for (double beta : {1.01, 1.5, 2.0, 5.0, 20.0, 100.0}) {
    const auto cp = quantum::solve_critical_lambda(beta);
    REQUIRE_FALSE(cp.lambda_roots.empty());
    CHECK(cp.lambda_roots.size() <= 2);
    CHECK(cp.residuals.size() == cp.lambda_roots.size());
    CHECK(cp.beta == beta);
    for (double lambda : cp.lambda_roots) {
      CHECK(std::fabs(quantum::critical_residual(beta, lambda)) < 1e-12);
      // F(theta) < 2, so every root has lambda < 2
      CHECK(bisect_root(beta, lambda * 0.9, std::min(2.0, lambda * 1.1)) == doctest::Approx(lambda).epsilon(1e-10));
    }
  }
  CHECK(quantum::solve_critical_lambda(2.0).lambda_roots.back() == doctest::Approx(1.8617908066319777).epsilon(1e-12));
}

TEST_CASE("critical point gives unit mean offspring") {
  const double beta = 2.0;
  const double lambda = quantum::solve_critical_lambda(beta).lambda_roots.back();
  const double n = 1e6;
  const CutGammaParams cut(lambda * beta);
  RngStream s = derive_stream(1, 0);
  double sum = 0.0;
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) sum += -n * std::expm1(-sample_cut_gamma(cut, s) / (lambda * n));
  CHECK(std::fabs(sum / draws - 1.0) < 0.005);

  const auto est = quantum::mean_offspring_check(QuantumParams(1000000, beta, lambda), draws, s);
  CHECK(std::fabs(est.mean - 1.0) < 0.005);
}

TEST_CASE("reduced exploration") {
  RngStream s = derive_stream(2, 0);
  CHECK(quantum::reduced_explore(QuantumParams(1, 2.0, 1.0), s).sizes == std::vector<std::uint64_t>{1});

  const ComponentProfile frozen = quantum::reduced_explore(QuantumParams(100, 1e-6, 1e6), s);
  CHECK(frozen.sizes == std::vector<std::uint64_t>(100, 1));

  std::uint64_t index = 0;
  for (double beta : {0.5, 2.0, 5.0}) {
    for (std::uint64_t n : {1ull, 10ull, 1000ull}) {
      const QuantumParams params(n, beta, 1.0);
      for (int trial = 0; trial < 200; ++trial) {
        RngStream t = derive_stream(3, index++);
        const ComponentProfile prof = quantum::reduced_explore(params, t);
        REQUIRE(prof.total_size() == n);
        REQUIRE(prof.steps == n);
        for (std::size_t i = 0; i < prof.sizes.size(); ++i) {
          REQUIRE(prof.sizes[i] == prof.excursion_bounds[i + 1] - prof.excursion_bounds[i]);
        }
      }
    }
  }
}

TEST_CASE("critical C_max median is of order n^(2/3)") {
  const double beta = 2.0;
  const double lambda = quantum::solve_critical_lambda(beta).lambda_roots.back();
  const std::uint64_t n = 100000;
  auto sample = critwalk::testing::cmax_sample(QuantumParams(n, beta, lambda), 10000, 4);
  std::nth_element(sample.begin(), sample.begin() + 5000, sample.end());
  const double median = static_cast<double>(sample[5000]);
  const double scale = std::pow(std::cbrt(static_cast<double>(n)), 2);
  CHECK(median >= 0.1 * scale);
  CHECK(median <= 10.0 * scale);
}

TEST_CASE("materialization") {
  RngStream s = derive_stream(5, 0);
  CHECK_THROWS_AS(quantum::materialize_quantum(QuantumParams(129, 1.0, 1.0), s), SizeError);
  CHECK_THROWS_AS(quantum::materialize_quantum(QuantumParams(20, 1.0, 1.0), s, 10), SizeError);

  QuantumInstance intact;
  intact.n = 1;
  intact.theta = 2.5;
  intact.lambda = 1.0;
  intact.holes = {{}};
  intact.uniforms = {0.3};
  CHECK(intact.interval_count(0) == 1);
  CHECK(intact.interval_arc(0, 0).full);
  CHECK(intact.interval_arc(0, 0).length(2.5) == 2.5);

  const double theta = 2.0;
  const int circles = 100000;
  double count = 0.0;
  for (int i = 0; i < circles; ++i) {
    const QuantumInstance inst = quantum::materialize_quantum(QuantumParams(1, theta, 1.0), s);
    count += inst.interval_count(0);
    if (i < 2000) {
      double total = 0.0;
      for (std::uint32_t j = 0; j < inst.interval_count(0); ++j) total += inst.interval_arc(0, j).length(theta);
      REQUIRE(std::fabs(total - theta) < 1e-9);
    }
  }
  const double expected = theta + std::exp(-theta);
  CHECK(std::fabs(count / circles - expected) < 0.02 * expected);
}

TEST_CASE("full exploration on fixed instances") {
  QuantumInstance one;
  one.n = 1;
  one.theta = 3.0;
  one.lambda = 1.0;
  one.holes = {{0.2, 1.0, 2.5}};
  one.uniforms = {0.5, 0.1, 0.9};
  CHECK(quantum::full_explore(one).sizes == std::vector<std::uint64_t>(3, 1));

  QuantumInstance unlinked;
  unlinked.n = 3;
  unlinked.theta = 2.0;
  unlinked.lambda = 1.0;
  unlinked.holes = {{0.5, 1.5}, {}, {0.1, 0.2, 1.9}};
  unlinked.uniforms.assign(6, 0.25);
  CHECK(quantum::full_explore(unlinked).sizes == std::vector<std::uint64_t>(6, 1));

  QuantumInstance linked = unlinked;
  linked.links = {{0, 1, 1.0}, {1, 2, 1.0}};
  CHECK(quantum::full_explore(linked).sorted_sizes() == std::vector<std::uint64_t>{3, 1, 1, 1});
  CHECK(union_find_components(linked) == std::vector<std::uint64_t>{3, 1, 1, 1});

  QuantumInstance bad = unlinked;
  bad.holes[0] = {1.5, 0.5};
  CHECK_THROWS_AS(quantum::full_explore(bad), ValidationError);
}

TEST_CASE("full exploration equals union-find on 300 random instances") {
  std::uint64_t linked = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    RngStream s = derive_stream(6, i);
    const auto n = 1 + s.uniform_index(24);
    const double beta = 0.5 + 2.5 * s.uniform();
    const double lambda = 0.3 + 1.7 * s.uniform();
    const QuantumInstance inst = quantum::materialize_quantum(QuantumParams(n, beta, lambda), s);
    const ComponentProfile prof = quantum::full_explore(inst);
    const auto truth = union_find_components(inst);
    REQUIRE(prof.sorted_sizes() == truth);
    REQUIRE(prof.total_size() == inst.total_intervals());
    linked += truth.front() > 1 ? 1 : 0;
  }
  CHECK(linked > 100);
}

TEST_CASE("neutral ledger stays disjoint and shrinks") {
  const double theta = 5.0;
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    RngStream s = derive_stream(7, rep);
    quantum::NeutralLedger ledger(2, theta);
    CHECK(ledger.intact(0));
    CHECK(ledger.neutral_arc_around(0, 1.0).full);
    double previous = ledger.neutral_length(0);
    for (int step = 0; step < 12 && ledger.has_neutral(0); ++step) {
      const double x = ledger.point_at(0, s.uniform());
      const Arc around = ledger.neutral_arc_around(0, x);
      REQUIRE(around.contains(x, theta));
      Arc cut;
      cut.circle = 0;
      const double half = 0.8 * s.uniform();
      cut.start = x - half < 0 ? x - half + theta : x - half;
      cut.end = x + half >= theta ? x + half - theta : x + half;
      cut.wraps = cut.start > cut.end;
      ledger.remove(cut);
      const auto& segs = ledger.segments(0);
      for (std::size_t i = 0; i < segs.size(); ++i) {
        REQUIRE(segs[i].lo < segs[i].hi);
        REQUIRE(segs[i].lo >= 0.0);
        REQUIRE(segs[i].hi <= theta);
        if (i > 0) REQUIRE(segs[i - 1].hi <= segs[i].lo);
      }
      const double now = ledger.neutral_length(0);
      REQUIRE(now <= previous + 1e-12);
      previous = now;
    }
    CHECK(ledger.intact(1));
    CHECK(ledger.neutral_length(1) == theta);
  }
}

TEST_CASE("reduced exploration is stochastically smaller than the full one") {
  const double beta = 2.0;
  const double lambda = quantum::solve_critical_lambda(beta).lambda_roots.back();
  const QuantumParams params(24, beta, lambda);
  const std::uint64_t trials = 100000;
  double sum_r = 0.0, sq_r = 0.0, sum_f = 0.0, sq_f = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    RngStream a = derive_stream(8, i);
    const auto r = static_cast<double>(quantum::reduced_explore(params, a).cmax());
    RngStream b = derive_stream(9, i);
    const auto f = static_cast<double>(quantum::full_explore(quantum::materialize_quantum(params, b)).cmax());
    sum_r += r;
    sq_r += r * r;
    sum_f += f;
    sq_f += f * f;
  }
  const double m = static_cast<double>(trials);
  const double mean_r = sum_r / m;
  const double mean_f = sum_f / m;
  const double se = std::sqrt((sq_r / m - mean_r * mean_r) / m + (sq_f / m - mean_f * mean_f) / m);
  CHECK(mean_r <= mean_f + 4.0 * se);
}

TEST_CASE("first extracted interval follows the cut-gamma law") {
  const double theta = 2.5;
  RngStream s = derive_stream(10, 0);
  std::vector<double> lengths;
  for (int i = 0; i < 100000; ++i) {
    const QuantumInstance inst = quantum::materialize_quantum(QuantumParams(1, theta, 1.0), s);
    const double start = inst.uniforms[0] * theta;
    const double len = inst.interval_arc(0, inst.interval_of(0, start)).length(theta);
    // a single hole gives a wrapped arc whose length can be off by one ulp
    lengths.push_back(std::fabs(len - theta) < 1e-12 ? theta : len);
  }
  const double p = critwalk::testing::ks_pvalue(
      lengths, [theta](double x) { return cut_gamma_cdf(x, theta); },
      [theta](double x) { return x >= theta ? 1.0 - (1.0 + theta) * std::exp(-theta) : cut_gamma_cdf(x, theta); });
  CHECK(p > 0.01);
}
