#include "critwalk/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "critwalk/errors.hpp"

namespace critwalk {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

std::uint64_t parse_hex(std::string_view s) {
  std::uint64_t value = 0;
  for (char ch : s) {
    value <<= 4;
    if (ch >= '0' && ch <= '9') {
      value |= static_cast<std::uint64_t>(ch - '0');
    } else if (ch >= 'a' && ch <= 'f') {
      value |= static_cast<std::uint64_t>(ch - 'a' + 10);
    } else if (ch >= 'A' && ch <= 'F') {
      value |= static_cast<std::uint64_t>(ch - 'A' + 10);
    } else {
      throw ParameterError("stream token contains a non-hex character");
    }
  }
  return value;
}

// Inversion by sequential search; used when count * prob < 10 with prob <= 1/2.
std::uint64_t binomial_inversion(std::uint64_t count, double prob, RngStream& stream) {
  const double q = 1.0 - prob;
  const double q_pow_n = std::exp(static_cast<double>(count) * std::log1p(-prob));
  const double ratio = prob / q;
  const double g = ratio * (static_cast<double>(count) + 1.0);
  const double mean = static_cast<double>(count) * prob;
  // Mass beyond this point is below 1e-20; a restart there is indistinguishable
  // from the exact law in double precision.
  const double bound = std::min(static_cast<double>(count),
                                mean + 10.0 * std::sqrt(mean * q + 1.0) + 10.0);
  for (;;) {
    std::uint64_t x = 0;
    double px = q_pow_n;
    double u = stream.uniform();
    bool restart = false;
    while (u > px) {
      u -= px;
      ++x;
      if (static_cast<double>(x) > bound) {
        restart = true;
        break;
      }
      px *= g / static_cast<double>(x) - ratio;
    }
    if (!restart) return x;
  }
}

// Hörmann's BTRS transformed rejection; exact for count * prob >= 10, prob <= 1/2.
std::uint64_t binomial_btrs(std::uint64_t count, double prob, RngStream& stream) {
  const double n = static_cast<double>(count);
  const double q = 1.0 - prob;
  const double spq = std::sqrt(n * prob * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * prob;
  const double c = n * prob + 0.5;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double v_r = 0.92 - 4.2 / b;
  const double lpq = std::log(prob / q);
  const auto m = static_cast<std::uint64_t>(std::floor((n + 1.0) * prob));
  const double h = log_factorial(m) + log_factorial(count - m);
  for (;;) {
    const double u = stream.uniform() - 0.5;
    double v = stream.uniform_pos();
    const double us = 0.5 - std::fabs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + c);
    if (kd < 0.0 || kd > n) continue;
    const auto k = static_cast<std::uint64_t>(kd);
    if (us >= 0.07 && v <= v_r) return k;
    v = std::log(v * alpha / (a / (us * us) + b));
    const double bound = h - log_factorial(k) - log_factorial(count - k) +
                         (kd - static_cast<double>(m)) * lpq;
    if (v <= bound) return k;
  }
}

std::uint64_t poisson_inversion(double mean, RngStream& stream) {
  const double bound = mean + 10.0 * std::sqrt(mean + 1.0) + 10.0;
  const double p0 = std::exp(-mean);
  for (;;) {
    std::uint64_t x = 0;
    double px = p0;
    double u = stream.uniform();
    bool restart = false;
    while (u > px) {
      u -= px;
      ++x;
      if (static_cast<double>(x) > bound) {
        restart = true;
        break;
      }
      px *= mean / static_cast<double>(x);
    }
    if (!restart) return x;
  }
}

// Hörmann's PTRS transformed rejection; exact for mean >= 10.
std::uint64_t poisson_ptrs(double mean, RngStream& stream) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = stream.uniform() - 0.5;
    const double v = stream.uniform_pos();
    const double us = 0.5 - std::fabs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kd);
    if (kd < 0.0 || (us < 0.013 && v > us)) continue;
    const auto k = static_cast<std::uint64_t>(kd);
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + kd * loglam - log_factorial(k)) {
      return k;
    }
  }
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
  return RngStream(master_seed, stream_index);
}

void RngStream::refill() {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(next_block_), static_cast<std::uint32_t>(next_block_ >> 32),
      static_cast<std::uint32_t>(stream_index_), static_cast<std::uint32_t>(stream_index_ >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(master_seed_),
                                            static_cast<std::uint32_t>(master_seed_ >> 32)};
  const auto out = philox4x32_10(ctr, key);
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  ++next_block_;
  pos_ = 0;
}

std::uint64_t RngStream::next_u64() {
  if (pos_ >= 2) refill();
  return buffer_[pos_++];
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::exponential() { return -std::log(uniform_pos()); }

std::uint64_t RngStream::uniform_index(std::uint64_t bound) {
  // Lemire's multiply-shift rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::string RngStream::serialize() const {
  char buf[51];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx%016llx%02x",
                static_cast<unsigned long long>(master_seed_),
                static_cast<unsigned long long>(stream_index_),
                static_cast<unsigned long long>(next_block_), static_cast<unsigned>(pos_));
  return std::string(buf, 50);
}

RngStream RngStream::deserialize(std::string_view token) {
  if (token.size() != 50) throw ParameterError("stream token must be 50 hex characters");
  RngStream stream(parse_hex(token.substr(0, 16)), parse_hex(token.substr(16, 16)));
  const std::uint64_t next_block = parse_hex(token.substr(32, 16));
  const auto pos = static_cast<std::uint8_t>(parse_hex(token.substr(48, 2)));
  if (pos > 2) throw ParameterError("stream token has an invalid buffer position");
  if (pos < 2) {
    if (next_block == 0) throw ParameterError("stream token has a buffered position before any block");
    stream.next_block_ = next_block - 1;
    stream.refill();
    stream.pos_ = pos;
  } else {
    stream.next_block_ = next_block;
    stream.pos_ = 2;
  }
  return stream;
}

CutGammaParams::CutGammaParams(double theta_) : theta(theta_) {
  if (!(theta_ > 0.0) || !std::isfinite(theta_)) {
    throw ParameterError("cut-gamma theta must be positive and finite");
  }
}

double log_factorial(std::uint64_t k) {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    return t;
  }();
  if (k < table.size()) return table[k];
  const double x = static_cast<double>(k);
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return (x + 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
}

bool sample_bernoulli(double prob, RngStream& stream) { return stream.uniform() < prob; }

std::uint64_t sample_binomial(std::uint64_t count, double prob, RngStream& stream) {
  if (!(prob >= 0.0 && prob <= 1.0)) throw ParameterError("binomial prob must lie in [0, 1]");
  if (count == 0 || prob == 0.0) return 0;
  if (prob == 1.0) return count;
  const bool flipped = prob > 0.5;
  const double p = flipped ? 1.0 - prob : prob;
  const std::uint64_t x = static_cast<double>(count) * p < 10.0
                              ? binomial_inversion(count, p, stream)
                              : binomial_btrs(count, p, stream);
  return flipped ? count - x : x;
}

std::uint64_t sample_poisson(double mean, RngStream& stream) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw ParameterError("poisson mean must be >= 0");
  if (mean == 0.0) return 0;
  return mean < 10.0 ? poisson_inversion(mean, stream) : poisson_ptrs(mean, stream);
}

double sample_cut_gamma(const CutGammaParams& params, RngStream& stream) {
  const double sum = stream.exponential() + stream.exponential();
  return std::min(sum, params.theta);
}

std::vector<double> sample_poisson_process(double rate, double length, RngStream& stream) {
  if (!(rate >= 0.0) || !(length >= 0.0) || !std::isfinite(rate) || !std::isfinite(length)) {
    throw ParameterError("poisson process rate and length must be nonnegative");
  }
  const std::uint64_t count = sample_poisson(rate * length, stream);
  std::vector<double> points(count);
  for (auto& x : points) x = stream.uniform() * length;
  std::sort(points.begin(), points.end());
  return points;
}

double cut_gamma_mean(double theta) { return 2.0 - (theta + 2.0) * std::exp(-theta); }

double cut_gamma_cdf(double x, double theta) {
  if (x <= 0.0) return 0.0;
  if (x >= theta) return 1.0;
  return 1.0 - (1.0 + x) * std::exp(-x);
}

}  // namespace critwalk
