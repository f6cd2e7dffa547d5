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

#include "dttc/economy.hpp"

#include <gtest/gtest.h>

#include "dttc/error.hpp"

namespace dttc {
namespace {

Economy two_by_two() {
  return Economy({{"a", 1, std::nullopt}, {"b", 2, std::nullopt}}, {"x", "y"},
                 {{"s1", "x", "a"}, {"s2", "y", std::nullopt}, {"s3", "x", "b"}});
}

TEST(EconomyTest, IndexesIdsAndInitialMatching) {
  const Economy e = two_by_two();
  EXPECT_EQ(e.num_schools(), 2);
  EXPECT_EQ(e.num_types(), 2);
  EXPECT_EQ(e.num_students(), 3);
  EXPECT_FALSE(e.has_districts());
  EXPECT_EQ(e.find_school("b"), 1);
  EXPECT_EQ(e.find_student("s3"), 2);
  EXPECT_EQ(e.find_type("z"), std::nullopt);
  EXPECT_EQ(e.initial_matching().assignment, (std::vector<int>{0, -1, 1}));
  EXPECT_EQ(e.school_name(kUnassigned), "@none");
}

TEST(EconomyTest, RejectsInvalidInput) {
  EXPECT_THROW(Economy({{"a", 1, std::nullopt}, {"a", 1, std::nullopt}}, {"x"}, {}),
               Error);
  EXPECT_THROW(Economy({{"a", -1, std::nullopt}}, {"x"}, {}), Error);
  EXPECT_THROW(Economy({{"a", 1, std::nullopt}}, {"x"}, {{"s", "y", std::nullopt}}),
               Error);
  EXPECT_THROW(Economy({{"a", 1, std::nullopt}}, {"x"},
                       {{"s1", "x", "a"}, {"s2", "x", "a"}}),
               Error);
  EXPECT_THROW(Economy({{"a", 1, "d"}, {"b", 1, std::nullopt}}, {"x"}, {}), Error);
}

TEST(EconomyTest, ValidatesMatchings) {
  const Economy e = two_by_two();
  EXPECT_NO_THROW(validate_matching(e, Matching{{1, 1, -1}}));
  EXPECT_THROW(validate_matching(e, Matching{{0, 0, -1}}), Error);
  EXPECT_THROW(validate_matching(e, Matching{{0, 1}}), Error);
  EXPECT_THROW(validate_matching(e, Matching{{0, 5, -1}}), Error);
}

TEST(PreferenceTest, CompletesPrefixInEconomyOrder) {
  const Preference p = Preference::complete(3, {2, kUnassigned});
  EXPECT_EQ(p.ranking(), (std::vector<int>{2, -1, 0, 1}));
  EXPECT_TRUE(p.prefers(kUnassigned, 0));
  EXPECT_TRUE(p.weakly_prefers(1, 1));
  EXPECT_EQ(Preference::complete(2, {1}).ranking(), (std::vector<int>{1, 0, -1}));
}

TEST(PreferenceTest, RejectsNonPermutations) {
  EXPECT_THROW(Preference(2, {0, 0, -1}), Error);
  EXPECT_THROW(Preference(2, {0, 1}), Error);
  EXPECT_THROW(Preference(2, {0, 1, 2}), Error);
}

TEST(ParetoTest, DominanceNeedsOneStrictGain) {
  const PreferenceProfile p{Preference(1, {0, -1}), Preference(1, {-1, 0})};
  EXPECT_TRUE(pareto_dominates(p, Matching{{0, -1}}, Matching{{-1, -1}}));
  EXPECT_FALSE(pareto_dominates(p, Matching{{0, -1}}, Matching{{0, -1}}));
  EXPECT_FALSE(pareto_dominates(p, Matching{{0, 0}}, Matching{{-1, -1}}));
}

}  // namespace
}  // namespace dttc
