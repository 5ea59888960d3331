// Copyright 2026 The ldpfreq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldp/audit.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "gtest/gtest.h"
#include "ldp/error.h"
#include "ldp/oracles.h"

namespace ldp {
namespace {

constexpr double kTight = 1e-12;
constexpr double kEpsTol = 1e-9;

TEST(SymmetricValueChannelTest, EntriesAndRowSums) {
  const ChannelMatrix m = SymmetricValueChannel(3, 0.6, 0.2);
  ASSERT_EQ(m.rows, 3u);
  ASSERT_EQ(m.cols, 3u);
  for (uint32_t r = 0; r < 3; ++r) {
    double sum = 0.0;
    for (uint32_t c = 0; c < 3; ++c) {
      EXPECT_NEAR(m.At(r, c), r == c ? 0.6 : 0.2, kTight);
      sum += m.At(r, c);
    }
    EXPECT_NEAR(sum, 1.0, kTight);
  }
  EXPECT_LT(MaxRowSumError(m), kTight);
}

TEST(SymmetricValueChannelTest, RealizedEpsilonIsExactBudget) {
  const GrrParams params = MakeGrr(std::log(3.0), 3);
  const ChannelMatrix m = SymmetricValueChannel(params.k, params.p, params.q);
  const RealizedEps realized = RealizedEpsilon(m);
  EXPECT_FALSE(realized.infinite);
  EXPECT_NEAR(realized.eps, std::log(3.0), kTight);
}

TEST(IdentityChannelTest, NoiselessChannelHasInfiniteEpsilon) {
  const RealizedEps realized = RealizedEpsilon(IdentityChannel(4));
  EXPECT_TRUE(realized.infinite);
  EXPECT_TRUE(std::isinf(realized.eps));
}

TEST(RealizedEpsilonTest, ConstantChannelLeaksNothing) {
  const ChannelMatrix m{2, 2, {0.5, 0.5, 0.5, 0.5}};
  const RealizedEps realized = RealizedEpsilon(m);
  EXPECT_FALSE(realized.infinite);
  EXPECT_NEAR(realized.eps, 0.0, kTight);
}

TEST(RealizedEpsilonTest, AllZeroColumnsAreSkipped) {
  const ChannelMatrix m{2, 2, {0.0, 1.0, 0.0, 1.0}};
  const RealizedEps realized = RealizedEpsilon(m);
  EXPECT_FALSE(realized.infinite);
  EXPECT_NEAR(realized.eps, 0.0, kTight);
}

TEST(UnaryChannelTest, BitProductEntries) {
  // k = 2, output column c encodes bit v at position v.
  const double p = 0.7;
  const double q = 0.2;
  const ChannelMatrix m = UnaryChannel(2, p, q);
  ASSERT_EQ(m.rows, 2u);
  ASSERT_EQ(m.cols, 4u);
  EXPECT_NEAR(m.At(0, 0), (1 - p) * (1 - q), kTight);
  EXPECT_NEAR(m.At(0, 1), p * (1 - q), kTight);
  EXPECT_NEAR(m.At(0, 2), (1 - p) * q, kTight);
  EXPECT_NEAR(m.At(0, 3), p * q, kTight);
  EXPECT_NEAR(m.At(1, 1), (1 - p) * q, kTight);
  EXPECT_NEAR(m.At(1, 2), p * (1 - q), kTight);
  EXPECT_LT(MaxRowSumError(m), kTight);
}

TEST(UnaryChannelTest, RealizedEpsilonMatchesUnaryIdentity) {
  for (const UeVariant variant : {UeVariant::kSue, UeVariant::kOue}) {
    const UeParams params = MakeUe(2.0, variant);
    const ChannelMatrix m = UnaryChannel(3, params.p, params.q);
    const RealizedEps realized = RealizedEpsilon(m);
    EXPECT_FALSE(realized.infinite);
    EXPECT_NEAR(realized.eps, 2.0, kEpsTol);
  }
}

TEST(UnaryTransitionChannelTest, RowsAreDistributionsOverBitVectors) {
  const ChannelMatrix m = UnaryTransitionChannel(3, 0.8, 0.3);
  ASSERT_EQ(m.rows, 8u);
  ASSERT_EQ(m.cols, 8u);
  EXPECT_LT(MaxRowSumError(m), kTight);
  // Row 0b101, column 0b100: first bit drops (1-p), second stays off (1-q),
  // third stays on (p).
  EXPECT_NEAR(m.At(5, 4), (1 - 0.8) * (1 - 0.3) * 0.8, kTight);
}

TEST(SubsetChannelTest, RowSumsMembershipAndRealizedEpsilon) {
  const SsParams params = MakeSs(std::log(4.0), 10);
  const ChannelMatrix m = SubsetChannel(params);
  ASSERT_EQ(m.rows, 10u);
  ASSERT_EQ(m.cols, 45u);  // C(10, 2) subsets of size two
  EXPECT_LT(MaxRowSumError(m), 1e-9);
  const std::vector<std::vector<uint32_t>> subsets = EnumerateSubsets(10, 2);
  ASSERT_EQ(subsets.size(), 45u);
  double member_mass = 0.0;
  for (uint32_t c = 0; c < m.cols; ++c) {
    const bool has_zero = subsets[c][0] == 0 || subsets[c][1] == 0;
    if (has_zero) member_mass += m.At(0, c);
  }
  EXPECT_NEAR(member_mass, params.p, 1e-9);
  const RealizedEps realized = RealizedEpsilon(m);
  EXPECT_FALSE(realized.infinite);
  EXPECT_NEAR(realized.eps, std::log(4.0), kEpsTol);
}

TEST(SubsetChannelTest, SingletonSubsetsCoincideWithValueChannel) {
  // At eps = 2 and k = 4 the subset size clamps to one; the channel over
  // singleton subsets is then exactly the symmetric value channel.
  const SsParams ss = MakeSs(2.0, 4);
  ASSERT_EQ(ss.omega, 1u);
  const GrrParams grr = MakeGrr(2.0, 4);
  const ChannelMatrix a = SubsetChannel(ss);
  const ChannelMatrix b = SymmetricValueChannel(grr.k, grr.p, grr.q);
  ASSERT_EQ(a.rows, b.rows);
  ASSERT_EQ(a.cols, b.cols);
  for (uint32_t r = 0; r < a.rows; ++r) {
    for (uint32_t c = 0; c < a.cols; ++c) {
      EXPECT_NEAR(a.At(r, c), b.At(r, c), kTight);
    }
  }
}

TEST(HashedChannelTest, PerSeedRealizedEpsilonIsBudgetOrZero) {
  const LhParams params = MakeLh(1.0, LhVariant::kBlh);
  const uint32_t k = 6;
  double max_realized = 0.0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const ChannelMatrix m = HashedChannel(params, seed, k);
    ASSERT_EQ(m.rows, k);
    ASSERT_EQ(m.cols, params.g);
    EXPECT_LT(MaxRowSumError(m), kTight);
    const RealizedEps realized = RealizedEpsilon(m);
    EXPECT_FALSE(realized.infinite);
    EXPECT_LE(realized.eps, 1.0 + kEpsTol);
    // Hash agreement on the whole domain leaks nothing; otherwise the seed
    // spends the full budget.
    EXPECT_TRUE(realized.eps < kEpsTol ||
                std::abs(realized.eps - 1.0) < kEpsTol);
    max_realized = std::max(max_realized, realized.eps);
  }
  EXPECT_NEAR(max_realized, 1.0, kEpsTol);
}

TEST(SampledBitChannelTest, TwoSampledBucketsSpendFullBudget) {
  const double eps_perm = 2.0;
  const double p = std::exp(eps_perm / 2) / (std::exp(eps_perm / 2) + 1.0);
  const ChannelMatrix m = SampledBitChannel(5, {0, 3}, p);
  ASSERT_EQ(m.rows, 5u);
  ASSERT_EQ(m.cols, 4u);
  EXPECT_LT(MaxRowSumError(m), kTight);
  const RealizedEps realized = RealizedEpsilon(m);
  EXPECT_FALSE(realized.infinite);
  EXPECT_NEAR(realized.eps, eps_perm, kEpsTol);
}

TEST(SampledBitChannelTest, SingleSampledBucketSpendsHalfBudget) {
  const double eps_perm = 2.0;
  const double p = std::exp(eps_perm / 2) / (std::exp(eps_perm / 2) + 1.0);
  const ChannelMatrix m = SampledBitChannel(5, {2}, p);
  const RealizedEps realized = RealizedEpsilon(m);
  EXPECT_NEAR(realized.eps, eps_perm / 2, kEpsTol);
}

TEST(ComposeTest, IdentityIsNeutral) {
  const ChannelMatrix m = SymmetricValueChannel(3, 0.6, 0.2);
  const ChannelMatrix composed = Compose(m, IdentityChannel(3));
  for (uint32_t r = 0; r < 3; ++r) {
    for (uint32_t c = 0; c < 3; ++c) {
      EXPECT_NEAR(composed.At(r, c), m.At(r, c), kTight);
    }
  }
}

TEST(ComposeTest, TwoSymmetricChannelsByHand) {
  const ChannelMatrix a = SymmetricValueChannel(2, 0.8, 0.2);
  const ChannelMatrix b = SymmetricValueChannel(2, 0.7, 0.3);
  const ChannelMatrix composed = Compose(a, b);
  EXPECT_NEAR(composed.At(0, 0), 0.8 * 0.7 + 0.2 * 0.3, kTight);
  EXPECT_NEAR(composed.At(0, 1), 0.8 * 0.3 + 0.2 * 0.7, kTight);
  EXPECT_LT(MaxRowSumError(composed), kTight);
}

TEST(ComposeTest, Associativity) {
  const ChannelMatrix a = SymmetricValueChannel(3, 0.6, 0.2);
  const ChannelMatrix b = SymmetricValueChannel(3, 0.5, 0.25);
  const ChannelMatrix c = SymmetricValueChannel(3, 0.8, 0.1);
  const ChannelMatrix left = Compose(Compose(a, b), c);
  const ChannelMatrix right = Compose(a, Compose(b, c));
  for (uint32_t r = 0; r < 3; ++r) {
    for (uint32_t col = 0; col < 3; ++col) {
      EXPECT_NEAR(left.At(r, col), right.At(r, col), kTight);
    }
  }
}

TEST(ComposeTest, RejectsShapeMismatch) {
  const ChannelMatrix a = SymmetricValueChannel(3, 0.6, 0.2);
  const ChannelMatrix b = SymmetricValueChannel(4, 0.6, 0.4 / 3);
  EXPECT_THROW(Compose(a, b), ShapeMismatch);
}

TEST(OutputSpaceGuardTest, OversizedChannelsAreRejected) {
  EXPECT_THROW(UnaryChannel(11, 0.7, 0.3), OutputSpaceTooLarge);
  EXPECT_THROW(UnaryTransitionChannel(11, 0.7, 0.3), OutputSpaceTooLarge);
  EXPECT_THROW(SymmetricValueChannel(2000, 0.5, 0.5 / 1999),
               OutputSpaceTooLarge);
}

TEST(OracleChannelTest, DispatchShapes) {
  const uint32_t k = 5;
  EXPECT_EQ(OracleChannel(MakeOracle(OracleKind::kGrr, 1.0, k), k).cols, 5u);
  EXPECT_EQ(OracleChannel(MakeOracle(OracleKind::kSue, 1.0, k), k).cols, 32u);
  EXPECT_EQ(OracleChannel(MakeOracle(OracleKind::kBlh, 1.0, k), k, 9).cols,
            2u);
  const SsParams ss = MakeSs(1.0, k);
  EXPECT_EQ(OracleChannel(OracleParams{ss}, k).rows, k);
}

// Exact-channel privacy audit across the whole parameter grid the library
// exposes: deterministic-report oracles spend the budget exactly, sampled
// ones never exceed it.
TEST(RealizedEpsilonGridTest, PureOraclesMeetDeclaredBudgets) {
  const std::vector<double> budgets = {0.5, 1.0, std::log(3.0), 2.0, 4.0};
  for (const double eps : budgets) {
    for (uint32_t k = 2; k <= 6; ++k) {
      for (const OracleKind kind :
           {OracleKind::kGrr, OracleKind::kSue, OracleKind::kOue}) {
        const RealizedEps realized =
            RealizedEpsilon(OracleChannel(MakeOracle(kind, eps, k), k));
        EXPECT_FALSE(realized.infinite);
        EXPECT_NEAR(realized.eps, eps, kEpsTol)
            << "kind=" << static_cast<int>(kind) << " eps=" << eps
            << " k=" << k;
      }
      {
        const RealizedEps realized = RealizedEpsilon(
            OracleChannel(MakeOracle(OracleKind::kSs, eps, k), k));
        EXPECT_FALSE(realized.infinite);
        EXPECT_LE(realized.eps, eps + kEpsTol);
      }
      for (const OracleKind kind : {OracleKind::kBlh, OracleKind::kOlh}) {
        for (uint64_t seed = 1; seed <= 5; ++seed) {
          const RealizedEps realized = RealizedEpsilon(
              OracleChannel(MakeOracle(kind, eps, k), k, seed));
          EXPECT_FALSE(realized.infinite);
          EXPECT_LE(realized.eps, eps + kEpsTol);
        }
      }
    }
  }
}

}  // namespace
}  // namespace ldp
