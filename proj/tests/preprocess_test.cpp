#include "blockpart/preprocess.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "blockpart/error.hpp"
#include "support.hpp"

namespace blockpart {
namespace {

struct NaiveGroups {
  std::vector<Interval> groups;
  std::vector<double> sizes;
  std::size_t merges = 0;
};

// Restarts the scan from the left after every merge. Only used with
// quarter-grid values, where every partial sum is exact.
NaiveGroups naive_grouping(const std::vector<double>& v) {
  NaiveGroups g;
  for (std::size_t i = 0; i < v.size(); ++i) {
    g.groups.push_back({i, i + 1});
    g.sizes.push_back(v[i]);
  }
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i + 1 < g.sizes.size(); ++i) {
      if (g.sizes[i] * g.sizes[i + 1] <= 0.0) {
        g.sizes[i] += g.sizes[i + 1];
        g.groups[i].end = g.groups[i + 1].end;
        g.sizes.erase(g.sizes.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        g.groups.erase(g.groups.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        ++g.merges;
        merged = true;
        break;
      }
    }
  }
  return g;
}

TEST(GroupBlocks, PositiveElementsStaySingletons) {
  const auto g = group_blocks(Sequence::scalars({0.3, 0.5}, BoundKind::upper_bounded));
  EXPECT_EQ(g.groups, (std::vector<Interval>{{0, 1}, {1, 2}}));
  EXPECT_EQ(g.sizes, (std::vector<double>{0.3, 0.5}));
  EXPECT_EQ(g.merges, 0u);
}

TEST(GroupBlocks, SingleMerge) {
  const auto g = group_blocks(Sequence::scalars({1, -0.5, 0.7}, BoundKind::upper_bounded));
  EXPECT_EQ(g.groups, (std::vector<Interval>{{0, 2}, {2, 3}}));
  EXPECT_EQ(g.sizes, (std::vector<double>{0.5, 0.7}));
  EXPECT_EQ(g.merges, 1u);
}

TEST(GroupBlocks, ZeroTotalCollapses) {
  const auto g = group_blocks(Sequence::scalars({1, -1}, BoundKind::upper_bounded));
  EXPECT_EQ(g.groups, (std::vector<Interval>{{0, 2}}));
  EXPECT_EQ(g.sizes, (std::vector<double>{0.0}));
}

TEST(GroupBlocks, RoundingNoiseCollapsesToZero) {
  // 0.1 + 0.2 - 0.3 is slightly positive in binary; -0.3 + 0.2 + 0.1 slightly negative.
  const auto g = group_blocks(Sequence::scalars({-0.3, 0.2, 0.1}, BoundKind::upper_bounded));
  ASSERT_EQ(g.sizes.size(), 1u);
  EXPECT_EQ(g.sizes[0], 0.0);
}

TEST(GroupBlocks, Preconditions) {
  EXPECT_THROW(group_blocks(Sequence::scalars({0.5, -1}, BoundKind::upper_bounded)),
               PreconditionError);
  EXPECT_THROW(Sequence::scalars({1.5, -1}, BoundKind::upper_bounded), BoundError);
}

TEST(ExpandCuts, MapsGroupBoundaries) {
  const auto g = group_blocks(Sequence::scalars({1, -0.5, 0.7}, BoundKind::upper_bounded));
  EXPECT_EQ(expand_cuts(g, CutVector(2, 3, {0, 1})).cuts(), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(expand_cuts(g, CutVector(2, 2, {2})).cuts(), (std::vector<std::size_t>{3}));
  EXPECT_THROW(expand_cuts(g, CutVector(3, 2, {1})), ValidationError);
}

// 10^4 random instances: group sizes in [0, 1], totals preserved, at most
// n - 1 merges, groups form a contiguous cover, and exact agreement with the
// restart-from-the-left construction on quarter-grid values.
TEST(GroupBlocks, RandomProperties) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> len(1, 40);
  for (int trial = 0; trial < 10000; ++trial) {
    const bool quarters = trial % 2 == 0;
    const double lo = trial % 3 == 0 ? -3.0 : -1.0;
    const auto v = testing::signed_values(rng, len(rng), lo, quarters);
    const std::size_t n = v.size();
    const auto g = group_blocks(Sequence::scalars(v, BoundKind::upper_bounded));

    ASSERT_LE(g.merges, n - 1);
    ASSERT_EQ(g.groups.size(), g.sizes.size());
    ASSERT_EQ(g.groups.front().begin, 0u);
    ASSERT_EQ(g.groups.back().end, n);
    double total = 0.0, grouped_total = 0.0;
    for (double x : v) total += x;
    for (std::size_t i = 0; i < g.sizes.size(); ++i) {
      if (i > 0) ASSERT_EQ(g.groups[i].begin, g.groups[i - 1].end);
      ASSERT_GE(g.sizes[i], -1e-12);
      ASSERT_LE(g.sizes[i], 1.0 + 1e-12);
      if (g.sizes.size() > 1) ASSERT_GT(g.sizes[i], 0.0);
      ASSERT_NEAR(g.sizes[i], testing::direct_sum(v, g.groups[i]), 1e-9 * n);
      grouped_total += g.sizes[i];
    }
    ASSERT_NEAR(grouped_total, total, 1e-9 * n);

    if (quarters) {
      const auto naive = naive_grouping(v);
      ASSERT_EQ(g.groups, naive.groups);
      ASSERT_EQ(g.sizes, naive.sizes);
      ASSERT_EQ(g.merges, naive.merges);
    }
  }
}

TEST(BalanceSigned, Examples) {
  const std::vector<double> v{1, -1, 1, -1, 1, 1};
  const auto r = balance_signed(Sequence::scalars(v, BoundKind::upper_bounded), 2);
  EXPECT_LE(r.spread, 1.0 + 1e-9);
  EXPECT_DOUBLE_EQ(r.sizes[0] + r.sizes[1], 2.0);
  EXPECT_EQ(testing::direct_sizes(v, r.cuts), r.sizes);

  const auto r3 = balance_signed(Sequence::scalars({1, -0.5, 0.7}, BoundKind::upper_bounded), 3);
  EXPECT_LE(r3.spread, 1.0 + 1e-9);
}

TEST(BalanceSigned, IdentityOnNonNegativeInput) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = testing::uniform_values(rng, 1 + trial % 30, 0.01, 1.0);
    const std::size_t k = 1 + trial % 6;
    const auto signed_r = balance_signed(Sequence::scalars(v, BoundKind::upper_bounded), k);
    const auto plain = balance(Sequence::scalars(v), k);
    EXPECT_EQ(signed_r.cuts, plain.cuts);
  }
}

TEST(BalanceSigned, RandomAgainstOracle) {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<std::size_t> len(1, 8), kk(1, 5);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto v = testing::signed_values(rng, len(rng), -2.0, true);
    const std::size_t k = kk(rng);
    const auto r = balance_signed(Sequence::scalars(v, BoundKind::upper_bounded), k);
    ASSERT_LE(r.spread, 1.0 + 1e-9);
    ASSERT_GE(r.spread, testing::brute_min_spread(v, k));
    ASSERT_EQ(testing::direct_sizes(v, r.cuts), r.sizes);
  }
}

TEST(BalanceSymmetric, Examples) {
  const auto r = balance_symmetric(Sequence::scalars({-1, -1}, BoundKind::symmetric), 2);
  EXPECT_EQ(r.sizes, (std::vector<double>{-1, -1}));
  EXPECT_EQ(r.spread, 0.0);

  const std::vector<double> v{0.5, -1, -1, 0.5};
  const auto r2 = balance_symmetric(Sequence::scalars(v, BoundKind::symmetric), 3);
  EXPECT_LE(r2.spread, 1.0 + 1e-9);
  EXPECT_EQ(testing::direct_sizes(v, r2.cuts), r2.sizes);

  EXPECT_THROW(balance_symmetric(Sequence::scalars({-1.5}, BoundKind::upper_bounded), 1),
               BoundError);
}

TEST(BalanceSymmetric, RandomIncludingZeroSum) {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<std::size_t> len(1, 30), kk(1, 8);
  std::uniform_int_distribution<int> q(-4, 4);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<double> v(len(rng));
    for (double& x : v) x = q(rng) / 4.0;
    if (trial % 3 == 0) {
      // Mirror the sequence so the total is exactly zero.
      const std::size_t half = v.size();
      for (std::size_t i = 0; i < half; ++i) v.push_back(-v[i]);
    }
    const std::size_t k = kk(rng);
    const auto r = balance_symmetric(Sequence::scalars(v, BoundKind::symmetric), k);
    ASSERT_LE(r.spread, 1.0 + 1e-9);
    if (v.size() <= 8) ASSERT_GE(r.spread, testing::brute_min_spread(v, k));
  }
}

}  // namespace
}  // namespace blockpart
