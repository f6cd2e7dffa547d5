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

#ifndef DTTC_OBJECTIVES_HPP_
#define DTTC_OBJECTIVES_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "dttc/distribution.hpp"
#include "dttc/economy.hpp"
#include "dttc/rational.hpp"

namespace dttc {

// A non-empty set of feasible distributions, materialized as a sorted subset
// of its economy's feasible set.
class PolicyGoal {
 public:
  // Deduplicates `members`. Throws Error(kEmptyGoal) if empty and
  // Error(kInvalidArgument) if a member is infeasible.
  PolicyGoal(FeasibleSetPtr space, const std::vector<Distribution>& members);
  // Members given as ranks into `space`; same validation.
  static PolicyGoal from_ranks(FeasibleSetPtr space,
                               std::vector<std::size_t> ranks);
  // Keeps every feasible distribution accepted by `predicate`.
  static PolicyGoal filter(FeasibleSetPtr space,
                           const std::function<bool(const Distribution&)>& predicate);

  const FeasibleSetPtr& space() const { return space_; }
  std::size_t size() const { return ranks_.size(); }
  // Ranks into space(), ascending (= lexicographic member order).
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  const Distribution& operator[](std::size_t i) const {
    return (*space_)[ranks_[i]];
  }
  std::vector<Distribution> members() const;

  bool contains(const Distribution& xi) const;
  bool contains_rank(std::size_t rank) const { return mask_[rank]; }

  friend bool operator==(const PolicyGoal& a, const PolicyGoal& b) {
    return a.ranks_ == b.ranks_ && a.space_->same_shape(*b.space_);
  }

 private:
  PolicyGoal(FeasibleSetPtr space, std::vector<std::size_t> ranks, bool);

  FeasibleSetPtr space_;
  std::vector<std::size_t> ranks_;
  std::vector<bool> mask_;
};

// Chebyshev (L∞) and Manhattan (L1) distances between equally shaped grids.
// Throw Error(kDimensionMismatch) otherwise.
int chebyshev_distance(const Distribution& a, const Distribution& b);
int manhattan_distance(const Distribution& a, const Distribution& b);

enum class ObjectiveKind { kTabulated, kChebyshev, kDiscrete, kManhattan };

const char* objective_kind_name(ObjectiveKind kind);

// Distributional objective over the feasible set of one economy. Values are
// computed once for every feasible distribution; anything outside the feasible
// set evaluates to negative infinity.
class Objective {
 public:
  // `values[r]` is the value at rank r of `space`; must be total and finite.
  static Objective tabulated(FeasibleSetPtr space,
                             std::vector<ExtendedRational> values);
  static Objective tabulated(
      FeasibleSetPtr space,
      const std::function<ExtendedRational(const Distribution&)>& fn);
  // −min over the goal of the Chebyshev distance.
  static Objective chebyshev_to(PolicyGoal goal);
  // 1 on the goal, 0 elsewhere.
  static Objective discrete_to(PolicyGoal goal);
  // −min over the goal of the Manhattan distance.
  static Objective manhattan_to(PolicyGoal goal);

  ObjectiveKind kind() const { return kind_; }
  const FeasibleSetPtr& space() const { return space_; }
  // Set for the goal-based variants.
  const std::optional<PolicyGoal>& goal() const { return goal_; }

  ExtendedRational operator()(const Distribution& xi) const;
  ExtendedRational operator()(std::span<const int> counts) const;
  const ExtendedRational& at_rank(std::size_t rank) const {
    return values_[rank];
  }
  const std::vector<ExtendedRational>& values() const { return values_; }

  // Strictly increasing transforms keep the ordinal content; used by
  // property tests and by callers that rescale tabulated objectives.
  Objective transformed(
      const std::function<Rational(const Rational&)>& increasing) const;

 private:
  Objective(ObjectiveKind kind, FeasibleSetPtr space,
            std::optional<PolicyGoal> goal,
            std::vector<ExtendedRational> values);

  ObjectiveKind kind_;
  FeasibleSetPtr space_;
  std::optional<PolicyGoal> goal_;
  std::vector<ExtendedRational> values_;
};

inline ExtendedRational evaluate(const Objective& f, const Distribution& xi) {
  return f(xi);
}

// f(ξ(μ)) >= f(ξ(μ_0)).
bool weakly_improves(const Objective& f, const Matching& mu,
                     const Economy& economy);

// --- Policy-goal builders -------------------------------------------------
//
// Each builder returns exactly the feasible distributions meeting its
// constraint system. Parameter vectors are indexed by school, district and
// type positions of the economy. Invalid parameters throw
// Error(kInvalidArgument) naming the offending entry; an empty result throws
// Error(kEmptyGoal).

struct QuotaParams {
  std::vector<int> floors;    // l_c
  std::vector<int> ceilings;  // u_c
};

// floors[c][t] = p_c^t, ceilings[c][t] = q_c^t.
struct DiversityParams {
  std::vector<std::vector<int>> floors;
  std::vector<std::vector<int>> ceilings;
};

// k_d per district.
struct DistrictParams {
  std::vector<int> targets;
};

// floors[d][t] = p_d^t, ceilings[d][t] = q_d^t.
struct DistrictDiversityParams {
  std::vector<std::vector<int>> floors;
  std::vector<std::vector<int>> ceilings;
};

enum class DistrictMode { kExchangeFeasibility, kBalanced };

// Trivial parameters: floors 0, ceilings at capacity, k_d = 0.
QuotaParams trivial_quota(const Economy& economy);
DiversityParams trivial_diversity(const Economy& economy);
// k_d = n_d(ξ(μ_0)).
DistrictParams initial_district_targets(const Economy& economy);
DistrictDiversityParams trivial_district_diversity(const Economy& economy);

PolicyGoal build_quota_goal(const FeasibleSetPtr& space, const Economy& economy,
                            const QuotaParams& params);
PolicyGoal build_diversity_goal(const FeasibleSetPtr& space,
                                const Economy& economy,
                                const DiversityParams& params);
PolicyGoal build_exchange_feasibility_goal(const FeasibleSetPtr& space,
                                           const Economy& economy,
                                           const DistrictParams& params);
PolicyGoal build_balanced_exchange_goal(const FeasibleSetPtr& space,
                                        const Economy& economy,
                                        const DistrictParams& params);
PolicyGoal build_combined_goal(const FeasibleSetPtr& space,
                               const Economy& economy,
                               const DiversityParams& diversity,
                               const DistrictParams& districts,
                               DistrictMode mode);
PolicyGoal build_district_diversity_goal(const FeasibleSetPtr& space,
                                         const Economy& economy,
                                         const DistrictDiversityParams& params);

}  // namespace dttc

#endif  // DTTC_OBJECTIVES_HPP_
