#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "rdl/errors.hpp"

namespace rdl {

// Counter-based stream: a Threefry-style 2x64 block cipher keyed by
// (master_seed, stream_index), applied to a running draw counter. Streams with
// distinct keys are independent; a stream replays bit-identically from any
// (seed, index) pair, independent of what other streams do. This is what makes
// sample-parallel Monte Carlo reproducible: one stream per sample, merged in
// sample order.
class RngStream {
public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : key0_(master_seed), key1_(stream_index) {}

  std::uint64_t master_seed() const { return key0_; }
  std::uint64_t stream_index() const { return key1_; }

  std::uint64_t next_u64() {
    if (have_spare_word_) {
      have_spare_word_ = false;
      return spare_word_;
    }
    std::uint64_t x0 = counter_++;
    std::uint64_t x1 = 0;
    block(x0, x1);
    spare_word_ = x1;
    have_spare_word_ = true;
    return x0;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; never zero, safe under log().
  double next_double_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    require(n > 0, "BadParams", "next_below needs n >= 1");
    std::uint64_t reject_below = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t x = next_u64();
      if (x >= reject_below) return x % n;
    }
  }

  bool next_bit() { return (next_u64() & 1u) != 0; }

  bool next_bernoulli(double p) { return next_double() < p; }

  // Standard normal via Box-Muller; the paired draw is cached.
  double next_normal() {
    if (have_spare_normal_) {
      have_spare_normal_ = false;
      return spare_normal_;
    }
    double u = next_double_pos();
    double v = next_double();
    double r = std::sqrt(-2.0 * std::log(u));
    double a = 2.0 * std::numbers::pi * v;
    spare_normal_ = r * std::sin(a);
    have_spare_normal_ = true;
    return r * std::cos(a);
  }

  std::complex<double> next_complex_normal() {
    double re = next_normal();
    double im = next_normal();
    return {re, im};
  }

  // First k entries of a uniform random permutation of [0, n): a uniform
  // random subset of size k in random order.
  std::vector<int> next_subset(int n, int k) {
    require(0 <= k && k <= n, "BadParams", "subset size out of range");
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(next_below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

private:
  static constexpr std::uint64_t kKeyParity = 0x1BD11BDAA9FC1A22ull;
  static constexpr int kRounds = 20;
  static constexpr unsigned kRot[8] = {16, 42, 12, 31, 16, 32, 24, 21};

  static std::uint64_t rotl(std::uint64_t x, unsigned r) {
    return (x << r) | (x >> (64 - r));
  }

  void block(std::uint64_t& x0, std::uint64_t& x1) const {
    const std::uint64_t ks[3] = {key0_, key1_, kKeyParity ^ key0_ ^ key1_};
    x0 += ks[0];
    x1 += ks[1];
    for (int round = 0; round < kRounds; ++round) {
      x0 += x1;
      x1 = rotl(x1, kRot[round % 8]) ^ x0;
      if (round % 4 == 3) {
        int s = round / 4 + 1;
        x0 += ks[s % 3];
        x1 += ks[(s + 1) % 3] + static_cast<std::uint64_t>(s);
      }
    }
  }

  std::uint64_t key0_;
  std::uint64_t key1_;
  std::uint64_t counter_ = 0;
  std::uint64_t spare_word_ = 0;
  bool have_spare_word_ = false;
  double spare_normal_ = 0.0;
  bool have_spare_normal_ = false;
};

}  // namespace rdl
