// Copyright 2026 The dpsco Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpsco/random/rng.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

namespace dpsco {
namespace {

using Block = std::array<uint32_t, 4>;

// Known-answer vectors published with the reference Philox4x32-10.
TEST(Philox, KnownAnswerZero) {
  EXPECT_EQ(Philox4x32({0, 0, 0, 0}, {0, 0}),
            (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerAllOnes) {
  EXPECT_EQ(Philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                       {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPiDigits) {
  EXPECT_EQ(Philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                       {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.NextU64(), b.NextU64());
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.Normal(), b.Normal());
}

TEST(Rng, StreamsAndSeedsDiffer) {
  Rng a(42, 0), b(42, 1), c(43, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 100; ++i) {
    const uint32_t x = a.NextU32();
    same_ab += x == b.NextU32();
    same_ac += x == c.NextU32();
  }
  EXPECT_LT(same_ab, 3);
  EXPECT_LT(same_ac, 3);
}

TEST(Rng, ForkMatchesFreshStream) {
  Rng parent(9, 0);
  parent.NextU64();
  Rng forked = parent.Fork(5);
  Rng fresh(9, 5);
  for (int i = 0; i < 50; ++i) ASSERT_EQ(forked.NextU64(), fresh.NextU64());
}

TEST(Rng, FirstWordsComeFromBlockZero) {
  Rng rng(0x0000000200000001ULL, 0x0000000400000003ULL);
  const Block expected = Philox4x32({0, 0, 3, 4}, {1, 2});
  for (uint32_t want : expected) EXPECT_EQ(rng.NextU32(), want);
}

TEST(Rng, UniformRanges) {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.UniformOpen();
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(Rng, UniformIntIsUnbiasedOverSmallRange) {
  Rng rng(2);
  constexpr int kBins = 7;
  constexpr int kDraws = 700000;
  std::vector<int> counts(kBins, 0);
  for (int i = 0; i < kDraws; ++i) {
    const uint64_t x = rng.UniformInt(kBins);
    ASSERT_LT(x, static_cast<uint64_t>(kBins));
    ++counts[x];
  }
  // Chi-square with 6 degrees of freedom; 22.46 is the 0.999 quantile.
  double chi2 = 0;
  const double expected = static_cast<double>(kDraws) / kBins;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 22.46);
}

TEST(Rng, NormalMoments) {
  Rng rng(3);
  constexpr int kN = 400000;
  double s1 = 0, s2 = 0, s4 = 0;
  for (int i = 0; i < kN; ++i) {
    const double z = rng.Normal();
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  EXPECT_NEAR(s1 / kN, 0.0, 5 * std::sqrt(1.0 / kN));
  EXPECT_NEAR(s2 / kN, 1.0, 5 * std::sqrt(2.0 / kN));
  EXPECT_NEAR(s4 / kN, 3.0, 5 * std::sqrt(96.0 / kN));
}

class GammaMomentTest : public ::testing::TestWithParam<double> {};

TEST_P(GammaMomentTest, MeanAndVarianceEqualShape) {
  const double shape = GetParam();
  Rng rng(4);
  constexpr int kN = 200000;
  double s1 = 0, s2 = 0;
  for (int i = 0; i < kN; ++i) {
    const double g = rng.Gamma(shape);
    ASSERT_GT(g, 0.0);
    s1 += g;
    s2 += g * g;
  }
  const double mean = s1 / kN;
  const double var = s2 / kN - mean * mean;
  EXPECT_NEAR(mean, shape, 5 * std::sqrt(shape / kN));
  // Var of the sample variance is about (mu4 - sigma^4)/n with
  // mu4 = 3 k^2 + 6 k for Gamma(k).
  EXPECT_NEAR(var, shape,
              5 * std::sqrt((2 * shape * shape + 6 * shape) / kN));
}

INSTANTIATE_TEST_SUITE_P(Shapes, GammaMomentTest,
                         ::testing::Values(0.3, 1.0, 1.25, 2.5, 10.0));

}  // namespace
}  // namespace dpsco
