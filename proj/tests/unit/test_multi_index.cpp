#include <gtest/gtest.h>

#include <set>

#include "cliffbvp/multi_index.hpp"

using namespace cliffbvp;

TEST(MultiIndex, CountsMatchStarsAndBars) {
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= 5; ++k) {
      const auto list = multi_indices_of_degree(n, k);
      EXPECT_EQ(static_cast<double>(list.size()), binomial(n + k - 1, k));
      std::set<MultiIndex> unique(list.begin(), list.end());
      EXPECT_EQ(unique.size(), list.size());
      for (const auto& a : list) EXPECT_EQ(a.degree(), k);
      for (std::size_t i = 1; i < list.size(); ++i) EXPECT_TRUE(list[i] < list[i - 1]);
    }
}

TEST(MultiIndex, UpToIsGroupedByDegree) {
  const auto list = multi_indices_up_to(3, 3);
  EXPECT_EQ(static_cast<double>(list.size()), binomial(6, 3));
  for (std::size_t i = 1; i < list.size(); ++i) EXPECT_LE(list[i - 1].degree(), list[i].degree());
}

TEST(MultiIndex, Multinomial) {
  EXPECT_EQ(MultiIndex({2, 1}).multinomial(), 3.0);
  EXPECT_EQ(MultiIndex({1, 1, 1}).multinomial(), 6.0);
  EXPECT_EQ(MultiIndex({2, 2}).factorial(), 4.0);
  EXPECT_EQ(MultiIndex({0, 0}).multinomial(), 1.0);
}

TEST(MultiIndex, Binomial) {
  EXPECT_EQ(binomial(5, 2), 10.0);
  EXPECT_EQ(binomial(2, 2), 1.0);
  EXPECT_EQ(binomial(2, 3), 0.0);
  EXPECT_EQ(binomial(4, -1), 0.0);
}
