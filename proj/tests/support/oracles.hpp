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

// Deliberately naive reference implementations. They share no code with the
// library beyond the plain data types, and favour obviousness over speed.

#ifndef DTTC_TESTS_SUPPORT_ORACLES_HPP_
#define DTTC_TESTS_SUPPORT_ORACLES_HPP_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dttc/economy.hpp"
#include "dttc/rational.hpp"

namespace dttc::oracle {

using Vec = std::vector<int>;
using PointSet = std::set<Vec>;
// Missing keys mean -inf.
using Table = std::map<Vec, Rational>;

// Every grid (school-major, |C|·|T| cells) with per-school sums within
// capacity, by brute force over [0, max capacity]^cells.
std::vector<Vec> feasible_grids(const Economy& e);

Vec grid_of(const Economy& e, const Matching& m);

// Exchange properties straight from their definitions.
bool mnat_convex(const PointSet& s);
bool m_convex(const PointSet& s);
bool pseudo_mnat_concave(const Table& f);
bool pseudo_m_concave(const Table& f);

// -min distance to the goal, and the membership indicator.
Rational chebyshev_value(const PointSet& goal, const Vec& x);
Rational manhattan_value(const PointSet& goal, const Vec& x);
Rational discrete_value(const PointSet& goal, const Vec& x);

// All capacity-respecting matchings via an odometer over (|C|+1)^|S|.
std::vector<Matching> all_matchings(const Economy& e);

bool dominates(const PreferenceProfile& p, const Matching& a, const Matching& b);

// Matchings with f >= f(initial) that are individually rational and not
// Pareto-dominated by another matching with f >= f(initial).
std::vector<Matching> efficient_ir(const Economy& e, const Table& f,
                                   const PreferenceProfile& p);

// Straightforward TTC on the hypothetical market, following the textual
// description step by step. `school_priority` selects whether everyone
// initially at school c (true) or only initial holders of (c,t) (false) form
// the top class at (c,t).
struct NaiveTtcResult {
  Matching outcome;
  int steps = 0;
};
NaiveTtcResult ttc(const Economy& e, const Table& f,
                   const PreferenceProfile& p, const std::vector<int>& master,
                   bool school_priority);

}  // namespace dttc::oracle

#endif  // DTTC_TESTS_SUPPORT_ORACLES_HPP_
