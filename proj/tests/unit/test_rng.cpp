#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "ncpl/rng.hpp"

namespace ncpl {
namespace {

// Reference words computed with numpy.random.Philox (which pre-increments its
// counter, so numpy's counter c is our counter c + 1).
TEST(Philox, KnownAnswerZeroKey) {
  const auto out = philox4x64({1, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x02f4ba6408e4d89bULL);
  EXPECT_EQ(out[1], 0x3dd62b0b9ca8c5b2ULL);
  EXPECT_EQ(out[2], 0x1c8667a55d902e79ULL);
  EXPECT_EQ(out[3], 0x907d7a052fd5b4dcULL);
}

TEST(Philox, KnownAnswerNonzeroKey) {
  const auto out = philox4x64({6, 0, 0, 0}, {123, 7});
  EXPECT_EQ(out[0], 0x8984cd260f9a84cbULL);
  EXPECT_EQ(out[1], 0x028b8ef5b82a9003ULL);
  EXPECT_EQ(out[2], 0x0b759905926a3e35ULL);
  EXPECT_EQ(out[3], 0xbe19afab9da60f30ULL);
}

TEST(Philox, KnownAnswerAllZero) {
  const auto out = philox4x64({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x16554d9eca36314cULL);
  EXPECT_EQ(out[1], 0xdb20fe9d672d0fdcULL);
  EXPECT_EQ(out[2], 0xd7e772cee186176bULL);
  EXPECT_EQ(out[3], 0x7e68b68aec7ba23bULL);
}

TEST(SplitMix, ReferenceValue) {
  // First output of the reference splitmix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(DeriveSeed, DistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(42, 3), splitmix64(42 ^ splitmix64(4)));
}

TEST(RandomStream, StreamsAreIndependentAndReproducible) {
  RandomStream a(9, StreamId::kXOracle), b(9, StreamId::kXOracle), c(9, StreamId::kYOracle);
  for (int i = 0; i < 10; ++i) {
    const double va = a.normal();
    EXPECT_EQ(va, b.normal());
    EXPECT_NE(va, c.normal());
  }
  EXPECT_EQ(a.counter(), 10u);
}

TEST(RandomStream, OneBlockPerDraw) {
  RandomStream s(1, StreamId::kSampling);
  s.uniform();
  s.normal();
  s.index(7);
  EXPECT_EQ(s.counter(), 3u);
}

TEST(RandomStream, MomentsOfDraws) {
  RandomStream s(3, StreamId::kSampling);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double g = s.normal();
    sn += g;
    sn2 += g * g;
  }
  EXPECT_NEAR(su / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sn / n, 0.0, 4 / std::sqrt(n));
  EXPECT_NEAR(sn2 / n, 1.0, 4 * std::sqrt(2.0 / n));
}

TEST(RandomStream, IndexIsInRangeAndCoversAll) {
  RandomStream s(5, StreamId::kSampling);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto k = s.index(7);
    ASSERT_LT(k, 7u);
    seen.insert(k);
  }
  EXPECT_EQ(seen.size(), 7u);
}

}  // namespace
}  // namespace ncpl
