#pragma once

#include <cstdint>
#include <limits>

namespace hopflog {

// Counter-based random stream.
//
// A stream is identified by a 64-bit key derived from (master seed, stream
// index); output i is mix64(key + (i + 1) * golden_gamma), i.e. SplitMix64
// evaluated at an explicit counter. Substreams are derived by mixing the
// parent key with the child index, so a run partition is reproducible from
// (seed, run index) alone regardless of thread scheduling.
//
// Satisfies UniformRandomBitGenerator, so it can drive <random> distributions.
class SeededStream {
 public:
  using result_type = std::uint64_t;

  SeededStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  SeededStream substream(std::uint64_t index) const;

  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  explicit SeededStream(std::uint64_t key, std::uint64_t, bool) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace hopflog
