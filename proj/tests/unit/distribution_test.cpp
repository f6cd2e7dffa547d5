// Copyright 2026 The dttc Authors
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

#include "dttc/distribution.hpp"

#include <gtest/gtest.h>

#include <random>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "dttc/error.hpp"

namespace dttc {
namespace {

Economy grid_economy(std::vector<int> caps, int types) {
  std::vector<SchoolSpec> schools;
  for (std::size_t c = 0; c < caps.size(); ++c) {
    schools.push_back({"c" + std::to_string(c), caps[c], std::nullopt});
  }
  std::vector<std::string> type_ids;
  for (int t = 0; t < types; ++t) type_ids.push_back("t" + std::to_string(t));
  return Economy(std::move(schools), std::move(type_ids), {});
}

TEST(DistributionTest, InducedCountsStudentsPerSchoolAndType) {
  const Economy e({{"a", 2, std::nullopt}, {"b", 1, std::nullopt}}, {"x", "y"},
                  {{"s1", "x", "a"}, {"s2", "y", "a"}, {"s3", "y", "b"}});
  const Distribution xi = induced_distribution(e, Matching{{0, 0, 1}});
  EXPECT_EQ(xi.to_string(), "[(1,1) (0,1)]");
  EXPECT_EQ(xi.total(), 3);
  EXPECT_EQ(xi.school_total(0), 2);
  EXPECT_TRUE(is_feasible(e, xi));
  EXPECT_FALSE(is_feasible(e, Distribution(2, 2, {2, 1, 0, 0})));
  EXPECT_THROW(is_feasible(e, Distribution(1, 2)), Error);
}

TEST(DistributionTest, TwoSchoolsUnitCapacityHaveNineFeasiblePoints) {
  const Economy e = grid_economy({1, 1}, 2);
  EXPECT_EQ(feasible_count(e), 9u);
  EXPECT_EQ(enumerate_feasible(e).size(), 9u);
}

TEST(DistributionTest, EnumerationIsLexicographicAndMatchesBruteForce) {
  dttc::testing::Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Economy e = dttc::testing::random_economy(rng, {});
    const auto members = enumerate_feasible(e);
    const auto grids = oracle::feasible_grids(e);
    ASSERT_EQ(members.size(), grids.size());
    ASSERT_EQ(members.size(), feasible_count(e));
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto c = members[i].counts();
      EXPECT_EQ(std::vector<int>(c.begin(), c.end()), grids[i]);
    }
  }
}

TEST(DistributionTest, EnumerationHonoursBudget) {
  const Economy e = grid_economy({3, 3, 3}, 3);  // 20^3 points
  EXPECT_THROW(enumerate_feasible(e, 100), BudgetExceeded);
  try {
    FeasibleSet(e, 100);
  } catch (const BudgetExceeded& b) {
    EXPECT_EQ(b.required(), 8000u);
    EXPECT_EQ(b.budget(), 100u);
  }
}

TEST(FeasibleSetTest, RanksRoundTrip) {
  const Economy e = grid_economy({2, 1, 3}, 2);
  const FeasibleSet space(e);
  for (std::size_t r = 0; r < space.size(); ++r) {
    EXPECT_EQ(space.rank_of(space[r].counts()), r);
  }
  const std::vector<int> infeasible{2, 1, 0, 0, 0, 0};
  EXPECT_EQ(space.rank_of(infeasible), std::nullopt);
  const std::vector<int> negative{-1, 0, 0, 0, 0, 0};
  EXPECT_EQ(space.rank_of(negative), std::nullopt);
}

}  // namespace
}  // namespace dttc
