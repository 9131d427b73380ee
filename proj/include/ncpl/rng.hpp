#pragma once

#include <array>
#include <cstdint>

namespace ncpl {

/// Philox4x64-10 block function (Salmon et al., Random123). Pure: the same
/// (counter, key) always yields the same four words on every platform.
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

/// SplitMix64 finalizer. Used to derive per-cell sweep seeds.
std::uint64_t splitmix64(std::uint64_t z);

/// Seed of sweep cell `index` derived from `base`: splitmix64(base ^ splitmix64(index + 1)).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Named call sites. Each site owns an independent stream so that changing the
/// order of oracle calls never shifts the randomness seen by another site.
enum class StreamId : std::uint64_t {
  kXOracle = 1,  ///< x-block oracle call of a minimax step
  kYOracle = 2,  ///< y-block oracle call of a minimax step
  kAscent = 3,   ///< inner gradient ascent (conversions, warm start)
  kInit = 4,     ///< random initial points
  kData = 5,     ///< synthetic datasets
  kSampling = 6  ///< test-box sampling and Monte-Carlo helpers
};

/// Counter-based random stream: key = (seed, stream id), counter = draw index.
///
/// Every scalar draw (uniform, normal, index) consumes exactly one counter
/// value, i.e. one Philox block. normal() uses Box-Muller on two words of
/// the block and discards the sine branch.
class RandomStream {
 public:
  RandomStream() = default;
  RandomStream(std::uint64_t seed, StreamId stream)
      : seed_(seed), stream_(static_cast<std::uint64_t>(stream)), seeded_(true) {}
  RandomStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream), seeded_(true) {}

  bool seeded() const { return seeded_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

  /// Raw 64-bit word (first word of the next block).
  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal.
  double normal();
  /// Uniform integer in [0, n), n > 0.
  std::uint64_t index(std::uint64_t n);

  bool operator==(const RandomStream&) const = default;

 private:
  std::array<std::uint64_t, 4> next_block();

  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t counter_ = 0;
  bool seeded_ = false;
};

}  // namespace ncpl
