#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "critwalk/er.hpp"
#include "critwalk/errors.hpp"
#include "critwalk/oracle.hpp"
#include "support/random_instances.hpp"
#include "support/stat_checks.hpp"

using namespace critwalk;
using critwalk::testing::graph_from;

TEST_CASE("edge probability") {
  CHECK(er::edge_prob(er::ErParams(1000000, 0.0)) == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(er::edge_prob(er::ErParams(8, 0.0)) == 0.125);
  CHECK(er::edge_prob(er::ErParams(1000, 1.0)) == doctest::Approx(0.0011).epsilon(1e-12));
  CHECK(er::edge_prob(er::ErParams(1000, 1.0, 0.3)) == 0.3);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(er::ErParams(0, 0.0), ParameterError);
  CHECK_THROWS_AS(er::ErParams(1, 1.0), ParameterError);   // p = 2
  CHECK_THROWS_AS(er::ErParams(8, -3.0), ParameterError);  // p < 0
  CHECK_THROWS_AS(er::ErParams(8, 0.0, 1.5), ParameterError);
  CHECK_THROWS_AS(er::ErParams(8, 0.0, -0.1), ParameterError);
  CHECK_NOTHROW(er::ErParams(1, 1.0, 1.0));
}

TEST_CASE("small explorations") {
  RngStream s = derive_stream(1, 0);
  CHECK(er::explore(er::ErParams(1, 0.0, 0.7), s).sizes == std::vector<std::uint64_t>{1});
  CHECK(er::explore(er::ErParams(3, 0.0, 1.0), s).sizes == std::vector<std::uint64_t>{3});
  CHECK(er::explore(er::ErParams(6, 0.0, 0.0), s).sizes == std::vector<std::uint64_t>(6, 1));
}

TEST_CASE("per-trial invariants") {
  std::uint64_t index = 0;
  for (double lambda : {-2.0, 0.0, 2.0}) {
    for (std::uint64_t n : {1ull, 2ull, 50ull, 1000ull}) {
      if (n < 50 && lambda != 0.0) continue;  // p would leave [0, 1]
      const er::ErParams params(n, lambda);
      for (int trial = 0; trial < 300; ++trial) {
        RngStream s = derive_stream(2, index++);
        const ComponentProfile prof = er::explore(params, s);
        REQUIRE(prof.total_size() == n);
        REQUIRE(prof.steps == n);
        REQUIRE(prof.excursion_bounds.size() == prof.sizes.size() + 1);
        REQUIRE(prof.excursion_bounds.back() == n);
        REQUIRE(prof.max_active < n);
        for (std::size_t i = 0; i < prof.sizes.size(); ++i) {
          REQUIRE(prof.sizes[i] == prof.excursion_bounds[i + 1] - prof.excursion_bounds[i]);
        }
      }
    }
  }
}

TEST_CASE("materialization") {
  RngStream s = derive_stream(3, 0);
  CHECK(er::materialize(er::ErParams(10, 0.0, 0.0), s).edges.empty());
  CHECK(er::materialize(er::ErParams(4, 0.0, 1.0), s).edges.size() == 6);
  CHECK_THROWS_AS(er::materialize(er::ErParams(10001, 0.0), s), SizeError);
  CHECK_THROWS_AS(er::materialize(er::ErParams(50, 0.0), s, 40), SizeError);

  double total = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const SimpleGraph g = er::materialize(er::ErParams(100, 0.0, 0.05), s);
    if (i < 50) REQUIRE_NOTHROW(g.validate());
    total += static_cast<double>(g.edges.size());
  }
  CHECK(std::fabs(total / 10000 - 247.5) < 2.0);
}

TEST_CASE("replay on fixed graphs") {
  const SimpleGraph triangle_plus = graph_from(4, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(er::explore_on_graph(triangle_plus).sorted_sizes() == std::vector<std::uint64_t>{3, 1});
  const SimpleGraph path = graph_from(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(er::explore_on_graph(path).sorted_sizes() == std::vector<std::uint64_t>{5});
  const std::vector<std::uint32_t> order{4, 2, 0, 1, 3};
  CHECK(er::explore_on_graph(path, order).sorted_sizes() == std::vector<std::uint64_t>{5});

  const std::vector<std::uint32_t> bad{0, 0, 1, 2, 3};
  CHECK_THROWS_AS(er::explore_on_graph(path, bad), ParameterError);
  const std::vector<std::uint32_t> short_order{0, 1};
  CHECK_THROWS_AS(er::explore_on_graph(path, short_order), ParameterError);
}

TEST_CASE("replay equals union-find on 500 random graphs") {
  std::uint64_t nontrivial = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    RngStream s = derive_stream(4, i);
    const auto n = static_cast<std::uint32_t>(1 + s.uniform_index(64));
    const double p = s.uniform() < 0.2 ? s.uniform() : std::min(1.0, 3.0 * s.uniform() / n);
    const SimpleGraph g = er::materialize(er::ErParams(n, 0.0, p), s);
    const auto order = critwalk::testing::random_order(n, s);
    const ComponentProfile prof = er::explore_on_graph(g, order);
    const auto truth = union_find_components(g);
    REQUIRE(prof.sorted_sizes() == truth);
    REQUIRE(prof.total_size() == n);
    REQUIRE(er::explore_on_graph(g).sorted_sizes() == truth);
    nontrivial += (truth.size() > 1 && truth.front() > 1) ? 1 : 0;
  }
  CHECK(nontrivial > 100);
}

TEST_CASE("explored C_max law matches materialized graphs at n = 30") {
  const er::ErParams params(30, 0.0);
  const std::uint64_t trials = 100000;
  const auto explored = critwalk::testing::cmax_sample(params, trials, 5);
  std::vector<std::uint64_t> materialized;
  RngStream s = derive_stream(6, 0);
  for (std::uint64_t i = 0; i < trials; ++i) materialized.push_back(union_find_components(er::materialize(params, s)).front());
  const double p = critwalk::testing::chi_square_two_sample(critwalk::testing::histogram(explored, 31),
                                                            critwalk::testing::histogram(materialized, 31));
  CHECK(p > 0.01);
}
