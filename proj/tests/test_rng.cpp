#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "critwalk/errors.hpp"
#include "critwalk/io.hpp"
#include "critwalk/rng.hpp"
#include "support/stat_checks.hpp"

using namespace critwalk;

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

template <class Draw>
Moments moments(std::uint64_t draws, Draw draw) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < draws; ++i) {
    const double x = draw();
    sum += x;
    sum_sq += x * x;
  }
  const double m = static_cast<double>(draws);
  return {sum / m, (sum_sq - sum * sum / m) / (m - 1.0)};
}

// Simpson's rule for the integral of (1 + t) e^{-t} over [0, theta].
double cut_gamma_mean_by_quadrature(double theta) {
  const int steps = 20000;
  const double h = theta / steps;
  auto f = [](double t) { return (1.0 + t) * std::exp(-t); };
  double s = f(0.0) + f(theta);
  for (int i = 1; i < steps; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("philox block function matches the published known answers") {
  using B = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10(B{0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("same coordinates give the same sequence") {
  RngStream a = derive_stream(7, 0);
  RngStream b = derive_stream(7, 0);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("neighbouring stream indices differ on the first draw") {
  int differ = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    differ += derive_stream(seed, 0).next_u64() != derive_stream(seed, 1).next_u64() ? 1 : 0;
  }
  CHECK(differ == 100);
}

TEST_CASE("serialized state resumes the identical continuation") {
  RngStream s = derive_stream(7, 3);
  for (int i = 0; i < 5; ++i) s.next_u64();
  s.uniform();  // leaves half a block buffered
  const std::string token = s.serialize();
  CHECK(token.size() == 50);
  RngStream r = RngStream::deserialize(token);
  CHECK(r == s);
  for (int i = 0; i < 100; ++i) REQUIRE(r.next_u64() == s.next_u64());

  RngStream j = io::stream_from_json(io::stream_to_json(s));
  for (int i = 0; i < 10; ++i) REQUIRE(j.next_u64() == s.next_u64());

  CHECK_THROWS(RngStream::deserialize("zz"));
  CHECK_THROWS(RngStream::deserialize(std::string(50, 'g')));
  CHECK_THROWS(io::stream_from_json("{}"));
}

TEST_CASE("distinct streams are uncorrelated") {
  RngStream a = derive_stream(11, 0);
  RngStream b = derive_stream(11, 1);
  const int n = 100000;
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform();
    const double y = b.uniform();
    sa += x;
    sb += y;
    sab += x * y;
    saa += x * x;
    sbb += y * y;
  }
  const double cov = sab / n - (sa / n) * (sb / n);
  const double r = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
  CHECK(std::fabs(r) < 4.0 / std::sqrt(n));
}

TEST_CASE("uniform helpers stay in range and index draws are unbiased") {
  RngStream s = derive_stream(3, 0);
  std::vector<std::uint64_t> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const double u = s.uniform();
    const double v = s.uniform_pos();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(v > 0.0);
    REQUIRE(v <= 1.0);
    ++counts[s.uniform_index(7)];
  }
  CHECK(testing::chi_square_gof(counts, std::vector<double>(7, 1.0 / 7)) > testing::kSuiteAlpha);
}

TEST_CASE("binomial edge cases") {
  RngStream s = derive_stream(1, 0);
  CHECK(sample_binomial(0, 0.5, s) == 0);
  CHECK(sample_binomial(7, 1.0, s) == 7);
  CHECK(sample_binomial(7, 0.0, s) == 0);
  CHECK_THROWS_AS(sample_binomial(5, -0.1, s), ParameterError);
  CHECK_THROWS_AS(sample_binomial(5, 1.5, s), ParameterError);
  CHECK_THROWS_AS(sample_binomial(5, std::nan(""), s), ParameterError);
  for (int i = 0; i < 1000; ++i) REQUIRE(sample_binomial(13, 0.7, s) <= 13);
}

TEST_CASE("binomial(100, 0.3) mean over a million draws") {
  RngStream s = derive_stream(2, 0);
  const Moments m = moments(1000000, [&] { return static_cast<double>(sample_binomial(100, 0.3, s)); });
  CHECK(std::fabs(m.mean - 30.0) < 0.05);
}

TEST_CASE("binomial mean and variance across a parameter grid") {
  const std::vector<std::uint64_t> counts{1, 5, 20, 100, 1000, 1000000};
  const std::vector<double> probs{0.001, 0.05, 0.3, 0.5, 0.9, 0.999};
  const std::uint64_t draws = 100000;
  std::uint64_t index = 0;
  for (auto n : counts) {
    for (double p : probs) {
      RngStream s = derive_stream(4, index++);
      const Moments m = moments(draws, [&] { return static_cast<double>(sample_binomial(n, p, s)); });
      const double nd = static_cast<double>(n);
      const double var = nd * p * (1 - p);
      const double mu4 = var * (1.0 + 3.0 * (nd - 2.0) * p * (1 - p));
      const double big_n = static_cast<double>(draws);
      const double se_mean = std::sqrt(var / big_n);
      const double se_var = std::sqrt(mu4 / big_n - var * var * (big_n - 3.0) / (big_n * (big_n - 1.0)));
      INFO("n=" << n << " p=" << p);
      CHECK(std::fabs(m.mean - nd * p) <= 4.0 * se_mean + 1e-12);
      CHECK(std::fabs(m.var - var) <= 4.0 * se_var + 1e-9);
    }
  }
}

TEST_CASE("binomial draws follow the exact pmf in both sampling regimes") {
  struct Case {
    std::uint64_t n;
    double p;
  };
  std::uint64_t index = 0;
  for (Case c : {Case{20, 0.2}, Case{1000, 0.3}, Case{500, 0.97}, Case{100000, 0.0004}}) {
    RngStream s = derive_stream(5, index++);
    boost::math::binomial_distribution<double> law(static_cast<double>(c.n), c.p);
    const std::size_t cells = static_cast<std::size_t>(std::min<std::uint64_t>(c.n, 2000)) + 1;
    std::vector<std::uint64_t> counts(cells, 0);
    for (int i = 0; i < 200000; ++i) ++counts[std::min<std::uint64_t>(sample_binomial(c.n, c.p, s), cells - 1)];
    std::vector<double> probs(cells);
    for (std::size_t k = 0; k < cells; ++k) probs[k] = boost::math::pdf(law, static_cast<double>(k));
    INFO("n=" << c.n << " p=" << c.p);
    CHECK(testing::chi_square_gof(counts, probs) > testing::kSuiteAlpha);
  }
}

TEST_CASE("poisson draws follow the exact pmf") {
  std::uint64_t index = 0;
  for (double mean : {0.5, 3.0, 10.0, 50.0, 1000.0}) {
    RngStream s = derive_stream(6, index++);
    boost::math::poisson_distribution<double> law(mean);
    const std::size_t cells = static_cast<std::size_t>(mean * 3 + 30);
    std::vector<std::uint64_t> counts(cells, 0);
    for (int i = 0; i < 200000; ++i) ++counts[std::min<std::uint64_t>(sample_poisson(mean, s), cells - 1)];
    std::vector<double> probs(cells);
    for (std::size_t k = 0; k < cells; ++k) probs[k] = boost::math::pdf(law, static_cast<double>(k));
    INFO("mean=" << mean);
    CHECK(testing::chi_square_gof(counts, probs) > testing::kSuiteAlpha);
  }
  RngStream s = derive_stream(6, 99);
  CHECK(sample_poisson(0.0, s) == 0);
  CHECK_THROWS_AS(sample_poisson(-1.0, s), ParameterError);
}

TEST_CASE("log factorial agrees with lgamma") {
  for (std::uint64_t k : {0ull, 1ull, 2ull, 10ull, 255ull, 256ull, 257ull, 1000ull, 123456789ull}) {
    const double expected = std::lgamma(static_cast<double>(k) + 1.0);
    CHECK(log_factorial(k) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("cut gamma draws are truncated at theta") {
  RngStream s = derive_stream(8, 0);
  for (double theta : {0.01, 0.5, 2.0, 5.0}) {
    const CutGammaParams params(theta);
    for (int i = 0; i < 10000; ++i) {
      const double x = sample_cut_gamma(params, s);
      REQUIRE(x >= 0.0);
      REQUIRE(x <= theta);
    }
  }
  CHECK_THROWS_AS(CutGammaParams(0.0), ParameterError);
  CHECK_THROWS_AS(CutGammaParams(-1.0), ParameterError);
}

TEST_CASE("cut gamma closed-form mean agrees with quadrature") {
  for (double theta : {0.01, 0.5, 1.0, 2.0, 5.0, 30.0}) {
    CHECK(cut_gamma_mean(theta) == doctest::Approx(cut_gamma_mean_by_quadrature(theta)).epsilon(1e-12));
  }
  CHECK(cut_gamma_mean(2.0) == doctest::Approx(2.0 - 4.0 * std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("cut gamma empirical means") {
  SUBCASE("theta = 2 over a million draws") {
    RngStream s = derive_stream(9, 0);
    const CutGammaParams params(2.0);
    const Moments m = moments(1000000, [&] { return sample_cut_gamma(params, s); });
    CHECK(std::fabs(m.mean - 1.4587) < 0.005);
  }
  SUBCASE("large theta approaches the gamma(2, 1) mean") {
    RngStream s = derive_stream(9, 1);
    const CutGammaParams params(60.0);
    const Moments m = moments(200000, [&] { return sample_cut_gamma(params, s); });
    CHECK(std::fabs(m.mean - 2.0) < 4.0 * std::sqrt(2.0 / 200000));
  }
  SUBCASE("mean within four standard errors across theta") {
    std::uint64_t index = 2;
    for (double theta : {0.5, 1.0, 2.0, 5.0}) {
      RngStream s = derive_stream(9, index++);
      const CutGammaParams params(theta);
      const Moments m = moments(100000, [&] { return sample_cut_gamma(params, s); });
      INFO("theta=" << theta);
      CHECK(std::fabs(m.mean - cut_gamma_mean_by_quadrature(theta)) < 4.0 * std::sqrt(m.var / 100000));
    }
  }
}

TEST_CASE("cut gamma draws pass a Kolmogorov-Smirnov test") {
  RngStream s = derive_stream(10, 0);
  const double theta = 2.5;
  const CutGammaParams params(theta);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = sample_cut_gamma(params, s);
  auto cdf = [theta](double x) { return cut_gamma_cdf(x, theta); };
  auto left = [theta](double x) { return x >= theta ? 1.0 - (1.0 + theta) * std::exp(-theta) : cut_gamma_cdf(x, theta); };
  CHECK(testing::ks_pvalue(xs, cdf, left) > 0.01);
}

TEST_CASE("poisson process") {
  RngStream s = derive_stream(12, 0);
  CHECK(sample_poisson_process(0.0, 10.0, s).empty());
  CHECK(sample_poisson_process(3.0, 0.0, s).empty());
  CHECK_THROWS_AS(sample_poisson_process(-1.0, 1.0, s), ParameterError);
  CHECK_THROWS_AS(sample_poisson_process(1.0, -1.0, s), ParameterError);

  double total = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto pts = sample_poisson_process(1.0, 5.0, s);
    REQUIRE(std::is_sorted(pts.begin(), pts.end()));
    for (double x : pts) {
      REQUIRE(x >= 0.0);
      REQUIRE(x < 5.0);
    }
    total += static_cast<double>(pts.size());
  }
  CHECK(std::fabs(total / draws - 5.0) < 0.05);
}

TEST_CASE("poisson process points are uniform") {
  RngStream s = derive_stream(12, 1);
  std::vector<double> xs;
  while (xs.size() < 50000) {
    for (double x : sample_poisson_process(2.0, 3.0, s)) xs.push_back(x);
  }
  auto cdf = [](double x) { return std::clamp(x / 3.0, 0.0, 1.0); };
  CHECK(testing::ks_pvalue(xs, cdf, cdf) > testing::kSuiteAlpha);
}

TEST_CASE("the whole sampler suite replays identically") {
  auto run = [] {
    RngStream s = derive_stream(99, 5);
    std::vector<double> out;
    const CutGammaParams params(1.5);
    for (int i = 0; i < 200; ++i) {
      out.push_back(static_cast<double>(sample_binomial(1000, 0.37, s)));
      out.push_back(static_cast<double>(sample_binomial(10, 0.2, s)));
      out.push_back(static_cast<double>(sample_poisson(40.0, s)));
      out.push_back(static_cast<double>(sample_poisson(2.0, s)));
      out.push_back(sample_cut_gamma(params, s));
      out.push_back(sample_bernoulli(0.3, s) ? 1.0 : 0.0);
      for (double x : sample_poisson_process(1.0, 2.0, s)) out.push_back(x);
    }
    return out;
  };
  CHECK(run() == run());
}
