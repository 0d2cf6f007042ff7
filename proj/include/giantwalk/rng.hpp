#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace giantwalk {

// Seeded, splittable PRNG stream for deterministic Monte Carlo runs.
//
// Core generator is xoshiro256++ (period 2^256 - 1). Per-replica streams are
// derived from (master_seed, replica_index): the pair is hash-mixed through
// the SplitMix64 finalizer and the result seeds a SplitMix64 sequence that
// fills the xoshiro state. Equal (seed, index) pairs give byte-identical
// output sequences; distinct indices give unrelated states.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithmId = "xoshiro256++/splitmix64-split";

  RngStream() : RngStream(0, 0) {}

  RngStream(std::uint64_t master_seed, std::int64_t replica_index)
      : master_seed_(master_seed), replica_index_(replica_index) {
    if (replica_index < 0) throw std::domain_error("RngStream: replica_index must be >= 0");
    std::uint64_t x = mix64(master_seed + kGolden * static_cast<std::uint64_t>(replica_index));
    for (auto& word : state_) {
      x += kGolden;
      word = mix64(x);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;  // forbidden point
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t master_seed() const { return master_seed_; }
  std::int64_t replica_index() const { return replica_index_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  // SplitMix64 finalizer (Stafford mix 13).
  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  static constexpr std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
  std::uint64_t master_seed_;
  std::int64_t replica_index_;
};

inline RngStream seed_stream(std::uint64_t master_seed, std::int64_t replica_index) {
  return RngStream(master_seed, replica_index);
}

namespace detail {

// log(k!) - Stirling approximation; used by the BTRS acceptance bound.
inline double stirling_tail(double k) {
  static constexpr double kTable[] = {
      0.0810614667953272,  0.0413406959554092,  0.0276779256849983,
      0.02079067210376509, 0.0166446911898211,  0.0138761288230707,
      0.0118967099458917,  0.0104112652619720,  0.00925546218271273,
      0.00833056343336287};
  if (k <= 9.0) return kTable[static_cast<int>(k)];
  const double kp1 = k + 1.0;
  const double kp1sq = kp1 * kp1;
  return (1.0 / 12 - (1.0 / 360 - 1.0 / 1260 / kp1sq) / kp1sq) / kp1;
}

}  // namespace detail

// Exact Bin(m, p) variate generation.
//
// Inversion by sequential search when m*q <= 30 (q = min(p, 1-p)): expected
// O(1 + m*q) work, which is O(1 + lambda) for every draw of the exploration
// walk. Larger m*q falls back to Hormann's BTRS transformed rejection, an
// exact method valid for m*q >= 10; that path only arises in oracle and test
// code. (1-q)^m is evaluated as exp(m*log1p(-q)) so it survives m ~ 1e6 with
// q ~ 1e-6.
class BinomialSampler {
 public:
  explicit BinomialSampler(double p) : p_(p) {
    if (!(p >= 0.0) || !(p <= 1.0)) throw std::domain_error("binomial: p must lie in [0, 1]");
    flip_ = p > 0.5;
    q_ = flip_ ? 1.0 - p : p;
    log1mq_ = std::log1p(-q_);
    odds_ = q_ / (1.0 - q_);
  }

  std::int64_t operator()(RngStream& rng, std::int64_t m) const {
    if (m < 0) throw std::domain_error("binomial: m must be >= 0");
    if (m == 0 || p_ == 0.0) return 0;
    if (p_ == 1.0) return m;
    const double md = static_cast<double>(m);
    const std::int64_t k = (md * q_ <= 30.0) ? invert(rng, m) : btrs(rng, md);
    return flip_ ? m - k : k;
  }

 private:
  std::int64_t invert(RngStream& rng, std::int64_t m) const {
    const double u = rng.uniform();
    double pmf = std::exp(static_cast<double>(m) * log1mq_);  // (1-q)^m
    double cdf = pmf;
    std::int64_t k = 0;
    while (u > cdf && k < m) {
      ++k;
      pmf *= odds_ * static_cast<double>(m - k + 1) / static_cast<double>(k);
      cdf += pmf;
    }
    return k;
  }

  std::int64_t btrs(RngStream& rng, double m) const {
    const double q = q_;
    const double spq = std::sqrt(m * q * (1.0 - q));
    const double b = 1.15 + 2.53 * spq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * q;
    const double c = m * q + 0.5;
    const double vr = 0.92 - 4.2 / b;
    const double alpha = (2.83 + 5.1 / b) * spq;
    const double mode = std::floor((m + 1.0) * q);
    for (;;) {
      const double u = rng.uniform() - 0.5;
      double v = rng.uniform();
      const double us = 0.5 - std::fabs(u);
      const double k = std::floor((2.0 * a / us + b) * u + c);
      if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
      if (k < 0.0 || k > m) continue;
      v = std::log(v * alpha / (a / (us * us) + b));
      const double bound =
          (mode + 0.5) * std::log((mode + 1.0) / (odds_ * (m - mode + 1.0))) +
          (m + 1.0) * std::log((m - mode + 1.0) / (m - k + 1.0)) +
          (k + 0.5) * std::log(odds_ * (m - k + 1.0) / (k + 1.0)) +
          detail::stirling_tail(mode) + detail::stirling_tail(m - mode) -
          detail::stirling_tail(k) - detail::stirling_tail(m - k);
      if (v <= bound) return static_cast<std::int64_t>(k);
    }
  }

  double p_;
  double q_;       // min(p, 1-p)
  double log1mq_;  // log(1-q)
  double odds_;    // q/(1-q)
  bool flip_;
};

inline std::int64_t binomial(RngStream& rng, std::int64_t m, double p) {
  return BinomialSampler(p)(rng, m);
}

}  // namespace giantwalk
