#include "ncpl/rng.hpp"

#include <cmath>
#include <numbers>

#include "ncpl/errors.hpp"

namespace ncpl {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

}  // namespace

std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> ctr,
                                        std::array<std::uint64_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ splitmix64(index + 1));
}

std::array<std::uint64_t, 4> RandomStream::next_block() {
  if (!seeded_) throw ConfigError("random stream used before being seeded");
  if (counter_ == ~std::uint64_t{0}) throw ConfigError("random stream exhausted");
  return philox4x64({counter_++, 0, 0, 0}, {seed_, stream_});
}

std::uint64_t RandomStream::next_u64() { return next_block()[0]; }

double RandomStream::uniform() { return static_cast<double>(next_block()[0] >> 11) * kTwoPow53Inv; }

double RandomStream::normal() {
  const auto w = next_block();
  // u1 in (0, 1] keeps the log finite.
  const double u1 = static_cast<double>((w[0] >> 11) + 1) * kTwoPow53Inv;
  const double u2 = static_cast<double>(w[1] >> 11) * kTwoPow53Inv;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomStream::index(std::uint64_t n) {
  if (n == 0) throw ConfigError("RandomStream::index called with n = 0");
  const unsigned __int128 p = static_cast<unsigned __int128>(next_block()[0]) * n;
  return static_cast<std::uint64_t>(p >> 64);
}

}  // namespace ncpl
