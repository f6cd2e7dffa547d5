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

#include "dttc/convexity.hpp"

#include <gtest/gtest.h>

#include "../support/fixtures.hpp"
#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "dttc/error.hpp"

namespace dttc {
namespace {

using dttc::testing::Rng;
using dttc::testing::uniform;

PointSet random_points(Rng& rng, int dim, int top) {
  std::vector<Point> pts;
  const int n = uniform(rng, 1, 8);
  for (int i = 0; i < n; ++i) {
    Point p(dim);
    for (int& x : p) x = uniform(rng, 0, top);
    pts.push_back(p);
  }
  return PointSet(pts);
}

oracle::PointSet as_oracle(const PointSet& s) {
  return oracle::PointSet(s.points().begin(), s.points().end());
}

TEST(ConvexityTest, IntervalIsMNaturalButNotM) {
  const PointSet line({{0}, {1}, {2}});
  EXPECT_TRUE(is_mnat_convex(line).holds);
  const ConvexityResult m = is_m_convex(line);
  EXPECT_FALSE(m.holds);
  ASSERT_TRUE(m.witness);
  EXPECT_TRUE(confirms_violation(line, ExchangeKind::kM, *m.witness));
}

TEST(ConvexityTest, ConstantSumSegmentIsM) {
  const PointSet seg({{2, 0}, {1, 1}, {0, 2}});
  EXPECT_TRUE(is_m_convex(seg).holds);
  EXPECT_TRUE(is_mnat_convex(seg).holds);
  EXPECT_EQ(is_m_convex(seg).pairs_checked, 9u);
}

TEST(ConvexityTest, GapBreaksMNatural) {
  const PointSet gap({{0, 0}, {2, 0}});
  const ConvexityResult r = is_mnat_convex(gap);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->xi, (Point{2, 0}));
  EXPECT_EQ(r.witness->xi2, (Point{0, 0}));
  EXPECT_EQ(r.witness->pivot, 0);
  // Violating pair is (index 1, index 0): 1 * 2 + 0 + 1 pairs scanned.
  EXPECT_EQ(r.pairs_checked, 3u);
}

TEST(ConvexityTest, EmptyAndSingletonSetsAreConvex) {
  EXPECT_TRUE(is_mnat_convex(PointSet()).holds);
  EXPECT_TRUE(is_m_convex(PointSet({{3, 1}})).holds);
}

TEST(ConvexityTest, AgreesWithNaiveDefinitionOnRandomSets) {
  Rng rng(21);
  int mnat = 0, m = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const PointSet s = random_points(rng, uniform(rng, 1, 3), 2);
    const auto naive = as_oracle(s);
    const ConvexityResult a = is_mnat_convex(s);
    const ConvexityResult b = is_m_convex(s);
    ASSERT_EQ(a.holds, oracle::mnat_convex(naive));
    ASSERT_EQ(b.holds, oracle::m_convex(naive));
    if (!a.holds) {
      EXPECT_TRUE(confirms_violation(s, ExchangeKind::kMNatural, *a.witness));
    }
    if (!b.holds) {
      EXPECT_TRUE(confirms_violation(s, ExchangeKind::kM, *b.witness));
    }
    mnat += a.holds;
    m += b.holds;
  }
  // Both verdicts occur, so the comparison is not vacuous.
  EXPECT_GT(mnat, 20);
  EXPECT_LT(mnat, 380);
  EXPECT_GT(m, 10);
}

TEST(ConvexityTest, WitnessIsFirstViolatingPairInOrder) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const PointSet s = random_points(rng, 2, 2);
    const ConvexityResult r = is_mnat_convex(s);
    if (r.holds) continue;
    const auto x = s.find(r.witness->xi);
    const auto y = s.find(r.witness->xi2);
    ASSERT_TRUE(x && y);
    EXPECT_EQ(r.pairs_checked, *x * s.size() + *y + 1);
    // No earlier pair violates.
    for (std::size_t i = 0; i <= *x; ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (i == *x && j >= *y) break;
        for (int p = 0; p < s.dim(); ++p) {
          if (s[i][p] <= s[j][p]) continue;
          EXPECT_FALSE(confirms_violation(
              s, ExchangeKind::kMNatural, ConvexityWitness{s[i], s[j], p}));
        }
      }
    }
  }
}

TEST(PseudoConcavityTest, AgreesWithNaiveDefinitionOnRandomObjectives) {
  Rng rng(8);
  int holds = 0;
  dttc::testing::EconomyShape shape;
  shape.max_cells = 4;
  for (int trial = 0; trial < 200; ++trial) {
    const Economy e = dttc::testing::random_economy(rng, shape);
    const auto space = make_feasible_set(e);
    const Objective f = dttc::testing::random_tabulated(rng, space, uniform(rng, 1, 2));
    const auto table = dttc::testing::table_of(f);
    const ConvexityResult a = is_pseudo_mnat_concave(f);
    const ConvexityResult b = is_pseudo_m_concave(f);
    ASSERT_EQ(a.holds, oracle::pseudo_mnat_concave(table));
    ASSERT_EQ(b.holds, oracle::pseudo_m_concave(table));
    if (!a.holds) {
      EXPECT_TRUE(confirms_violation(f, ExchangeKind::kMNatural, *a.witness));
    }
    holds += a.holds;
  }
  EXPECT_GT(holds, 10);
  EXPECT_LT(holds, 190);
}

TEST(PseudoConcavityTest, ManhattanToConvexGoalCanFail) {
  const auto doc = dttc::testing::load_fixture("appendix_b");
  const Objective f = build_objective(doc);
  EXPECT_TRUE(is_mnat_convex(*f.goal()).holds);
  const ConvexityResult r = is_pseudo_mnat_concave(f);
  EXPECT_FALSE(r.holds);
  EXPECT_TRUE(confirms_violation(f, ExchangeKind::kMNatural, *r.witness));
  // The pair (3,1), (2,0) with pivot t1 is a violation as well.
  EXPECT_TRUE(confirms_violation(f, ExchangeKind::kMNatural,
                                 ConvexityWitness{{3, 1}, {2, 0}, 0}));
  // A non-violation is not confirmed.
  EXPECT_FALSE(confirms_violation(f, ExchangeKind::kMNatural,
                                  ConvexityWitness{{2, 1}, {1, 1}, 0}));
}

TEST(ContourTest, UpperContourSetsAndCharacterization) {
  const Objective f = build_objective(dttc::testing::load_fixture("appendix_b"));
  EXPECT_EQ(upper_contour_set(f, ExtendedRational(1)), std::nullopt);
  const auto top = upper_contour_set(f, ExtendedRational(0));
  ASSERT_TRUE(top);
  EXPECT_EQ(*top, *f.goal());
  const auto values = attained_values(f);
  EXPECT_EQ(values.front(), ExtendedRational(-4));
  EXPECT_EQ(values.back(), ExtendedRational(0));
  const auto c = check_contour_characterization(f);
  EXPECT_TRUE(c.agrees());
  EXPECT_FALSE(c.all_contours_mnat_convex);
  EXPECT_EQ(c.contours.size(), values.size());
}

TEST(LiftTest, AddsUnassignedCoordinate) {
  const auto doc = dttc::testing::load_fixture("appendix_b");
  const auto space = make_feasible_set(doc.economy);
  const PolicyGoal single(space, {Distribution(1, 2, {1, 1})});
  EXPECT_EQ(lift_add_unassigned(single, 4), PointSet({{1, 1, 2}}));
  EXPECT_THROW(lift_add_unassigned(PolicyGoal(space, {Distribution(1, 2, {4, 0})}), 3),
               Error);
}

TEST(LiftTest, IntervalLiftsToConstantSumSegment) {
  const Economy e({{"c", 2, std::nullopt}}, {"t"}, {});
  const auto space = make_feasible_set(e);
  const PolicyGoal all = PolicyGoal::filter(space, [](const Distribution&) { return true; });
  const PointSet lifted = lift_add_unassigned(all, 2);
  EXPECT_EQ(lifted, PointSet({{0, 2}, {1, 1}, {2, 0}}));
  EXPECT_TRUE(is_m_convex(lifted).holds);
}

TEST(DescribeTest, NamesPivotCell) {
  EXPECT_EQ(describe_witness(ConvexityWitness{{1, 0, 2}, {0, 0, 3}, 0}, 3),
            "xi=(1,0,2) xi2=(0,0,3) pivot=(school 0, type 0)");
}

}  // namespace
}  // namespace dttc
