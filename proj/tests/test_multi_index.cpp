#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "momentkernel/multi_index.hpp"

using namespace momentkernel;

namespace {

// Brute force: every tuple in [0,N]^d with sum <= N, sorted by (degree, tuple).
std::vector<std::vector<int>> brute_force(int d, int n) {
  std::vector<std::vector<int>> all;
  std::vector<int> t(static_cast<std::size_t>(d), 0);
  for (;;) {
    int sum = 0;
    for (int v : t) sum += v;
    if (sum <= n) all.push_back(t);
    std::size_t j = 0;
    while (j < t.size() && ++t[j] > n) t[j++] = 0;
    if (j == t.size()) break;
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    int sa = 0, sb = 0;
    for (int v : a) sa += v;
    for (int v : b) sb += v;
    return std::tie(sa, a) < std::tie(sb, b);
  });
  return all;
}

std::vector<std::vector<int>> as_tuples(const IndexOrder& order) {
  std::vector<std::vector<int>> out;
  for (const auto& a : order) out.emplace_back(a.exponents().begin(), a.exponents().end());
  return out;
}

}  // namespace

TEST(Enumerate, OneVariable) {
  EXPECT_EQ(as_tuples(IndexOrder::enumerate(1, 3)), (std::vector<std::vector<int>>{{0}, {1}, {2}, {3}}));
}

TEST(Enumerate, TwoVariablesDegreeTwo) {
  const auto order = IndexOrder::enumerate(2, 2);
  EXPECT_EQ(as_tuples(order), (std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}}));
  EXPECT_EQ(order.size(), 6u);
}

TEST(Enumerate, ZeroDegree) {
  EXPECT_EQ(as_tuples(IndexOrder::enumerate(3, 0)), (std::vector<std::vector<int>>{{0, 0, 0}}));
}

TEST(Enumerate, RejectsBadArguments) {
  EXPECT_THROW(IndexOrder::enumerate(0, 2), std::invalid_argument);
  EXPECT_THROW(IndexOrder::enumerate(2, -1), std::invalid_argument);
}

TEST(Enumerate, MatchesBruteForce) {
  for (int d = 1; d <= 4; ++d) {
    for (int n = 0; n <= 6; ++n) EXPECT_EQ(as_tuples(IndexOrder::enumerate(d, n)), brute_force(d, n)) << d << "," << n;
  }
}

TEST(Enumerate, SizeIsBinomial) {
  for (int d = 1; d <= 4; ++d) {
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(IndexOrder::enumerate(d, n).size(), binomial(n + d, d));
  }
}

TEST(Enumerate, PrefixStable) {
  for (int d = 1; d <= 4; ++d) {
    for (int n = 0; n < 8; ++n) {
      const auto small = IndexOrder::enumerate(d, n);
      const auto large = IndexOrder::enumerate(d, n + 1);
      ASSERT_EQ(large.prefix_size(n), small.size());
      for (std::size_t k = 0; k < small.size(); ++k) EXPECT_EQ(small[k], large[k]);
    }
  }
}

TEST(Enumerate, GradedAndStrict) {
  for (int d = 1; d <= 4; ++d) {
    const auto order = IndexOrder::enumerate(d, 6);
    EXPECT_EQ(order[0], MultiIndex::zero(d));
    for (std::size_t k = 1; k < order.size(); ++k) {
      EXPECT_LE(order[k - 1].degree(), order[k].degree());
      EXPECT_TRUE(order[k - 1] < order[k]);
    }
  }
}

TEST(Add, Examples) {
  EXPECT_EQ(MultiIndex({1, 0}) + MultiIndex({0, 2}), MultiIndex({1, 2}));
  EXPECT_EQ(MultiIndex({0, 0}) + MultiIndex({3, 1}), MultiIndex({3, 1}));
  EXPECT_EQ(add(MultiIndex({2, 2}), MultiIndex({2, 2})), MultiIndex({4, 4}));
  EXPECT_EQ((MultiIndex({2, 5, 1}) + MultiIndex({1, 0, 3})).degree(), 12);
}

TEST(Add, DimensionMismatch) { EXPECT_THROW(MultiIndex({1}) + MultiIndex({1, 0}), std::invalid_argument); }

TEST(MultiIndexType, RejectsNegativeAndEmpty) {
  EXPECT_THROW(MultiIndex({1, -1}), std::invalid_argument);
  EXPECT_THROW(MultiIndex(std::vector<int>{}), std::invalid_argument);
}

TEST(MultiIndexType, TieBreak) {
  EXPECT_TRUE(MultiIndex({0, 2}) < MultiIndex({1, 1}));
  EXPECT_TRUE(MultiIndex({1, 1}) < MultiIndex({2, 0}));
  EXPECT_TRUE(MultiIndex({3, 0}) < MultiIndex({0, 4}));
  EXPECT_EQ(MultiIndex({1, 0, 2}).to_string(), "(1,0,2)");
}

TEST(Rank, Examples) {
  const auto order = IndexOrder::enumerate(2, 2);
  EXPECT_EQ(order.rank(MultiIndex({0, 0})), 0u);
  EXPECT_EQ(order.rank(MultiIndex({1, 1})), 4u);
  EXPECT_THROW(order.rank(MultiIndex({0, 3})), std::out_of_range);
  EXPECT_FALSE(order.contains(MultiIndex({0, 3})));
}

TEST(Rank, RoundTrip) {
  for (int d = 1; d <= 4; ++d) {
    const auto order = IndexOrder::enumerate(d, 7);
    for (std::size_t k = 0; k < order.size(); ++k) EXPECT_EQ(order.rank(order[k]), k);
  }
}
