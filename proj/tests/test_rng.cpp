// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "monoadv/rng.hpp"
#include "monoadv/stats.hpp"

using monoadv::Rng;

TEST(Philox, KnownAnswerZero) {
  const auto out = monoadv::philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = monoadv::philox4x32(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto out = monoadv::philox4x32(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u32(), b.next_u32());
}

TEST(Rng, StreamsDiffer) {
  Rng a(42, 0), b(42, 1), c(43, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 256; ++i) {
    const auto x = a.next_u32();
    same_ab += x == b.next_u32();
    same_ac += x == c.next_u32();
  }
  EXPECT_LT(same_ab, 3);
  EXPECT_LT(same_ac, 3);
}

TEST(Rng, SplitIgnoresParentConsumption) {
  Rng a(9);
  Rng fresh = a.split(3);
  for (int i = 0; i < 17; ++i) a.next_u32();
  Rng later = a.split(3);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(fresh.next_u32(), later.next_u32());
  Rng other = Rng(9).split(4);
  Rng again = Rng(9).split(3);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += other.next_u32() == again.next_u32();
  EXPECT_LT(same, 3);
}

TEST(Rng, DeriveSeedDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 50; ++a) {
    for (std::uint64_t b = 0; b < 50; ++b) seen.insert(monoadv::derive_seed(7, a, b));
  }
  EXPECT_EQ(seen.size(), 2500u);
  EXPECT_EQ(monoadv::derive_seed(7, 1, 2), monoadv::derive_seed(7, 1, 2));
}

TEST(Rng, UniformBelowInRange) {
  Rng rng(1);
  for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 1000ull, (1ull << 40) + 3}) {
    for (int i = 0; i < 2000; ++i) ASSERT_LT(rng.uniform_below(bound), bound);
  }
  EXPECT_EQ(rng.uniform_below(1), 0u);
}

TEST(Rng, UniformBelowIsUniform) {
  Rng rng(2024);
  const std::size_t bins = 10;
  std::vector<std::uint64_t> counts(bins, 0);
  for (int i = 0; i < 100000; ++i) ++counts[rng.uniform_below(bins)];
  const std::vector<double> probs(bins, 1.0 / bins);
  EXPECT_GT(monoadv::chi_square_pvalue(counts, probs), 0.001);
}

TEST(Rng, Uniform01Range) {
  Rng rng(5);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}
