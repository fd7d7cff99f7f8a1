#pragma once

#include <cstdint>
#include <limits>

namespace dpplab {

/// Counter-based generator: output k of stream (seed, stream) is the
/// SplitMix64 finalizer applied to key + (k + 1) * golden, with the key derived
/// from (seed, stream) by the same finalizer. Any (seed, stream, k) is reachable
/// without generating its predecessors, so replicas can run in any order.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  static constexpr const char* kAlgorithm = "splitmix64-ctr/1";

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

  static std::uint64_t mix(std::uint64_t z) noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Standard normal variate by Box-Muller (consumes two draws).
double standard_normal(CounterRng& rng) noexcept;

}  // namespace dpplab
