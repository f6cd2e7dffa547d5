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

#include "dttc/objectives.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace dttc {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

void check_same_shape(const Distribution& a, const Distribution& b) {
  if (a.num_schools() != b.num_schools() || a.num_types() != b.num_types()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "distance between differently shaped distributions");
  }
}

void require_space_matches(const FeasibleSetPtr& space, const Economy& economy) {
  if (!space || space->num_schools() != economy.num_schools() ||
      space->num_types() != economy.num_types() ||
      !std::equal(space->capacities().begin(), space->capacities().end(),
                  economy.capacities().begin(), economy.capacities().end())) {
    invalid("feasible set does not belong to this economy");
  }
}

void require_size(std::size_t got, int want, const std::string& what) {
  if (static_cast<int>(got) != want) {
    invalid(what + " has " + std::to_string(got) + " entries, expected " +
            std::to_string(want));
  }
}

void validate_diversity(const Economy& economy, const DiversityParams& p) {
  require_size(p.floors.size(), economy.num_schools(), "diversity floors");
  require_size(p.ceilings.size(), economy.num_schools(), "diversity ceilings");
  for (SchoolIndex c = 0; c < economy.num_schools(); ++c) {
    const std::string& school = economy.school_ids()[c];
    require_size(p.floors[c].size(), economy.num_types(),
                 "diversity floors of school '" + school + "'");
    require_size(p.ceilings[c].size(), economy.num_types(),
                 "diversity ceilings of school '" + school + "'");
    int floor_sum = 0;
    for (int t = 0; t < economy.num_types(); ++t) {
      const std::string& type = economy.type_ids()[t];
      if (p.floors[c][t] < 0) {
        invalid("negative floor at school '" + school + "', type '" + type + "'");
      }
      if (p.ceilings[c][t] < p.floors[c][t]) {
        invalid("ceiling below floor at school '" + school + "', type '" +
                type + "'");
      }
      floor_sum += p.floors[c][t];
    }
    if (floor_sum > economy.capacity(c)) {
      invalid("floors at school '" + school + "' exceed its capacity");
    }
  }
}

void validate_districts(const Economy& economy, const DistrictParams& p) {
  if (!economy.has_districts()) invalid("economy has no districts");
  require_size(p.targets.size(), economy.num_districts(), "district targets");
}

bool diversity_holds(const DiversityParams& p, const Distribution& xi) {
  for (SchoolIndex c = 0; c < xi.num_schools(); ++c) {
    for (int t = 0; t < xi.num_types(); ++t) {
      if (xi(c, t) < p.floors[c][t] || xi(c, t) > p.ceilings[c][t]) return false;
    }
  }
  return true;
}

bool districts_hold(const Economy& economy, const DistrictParams& p,
                    DistrictMode mode, const Distribution& xi) {
  std::vector<int> totals(economy.num_districts(), 0);
  for (SchoolIndex c = 0; c < economy.num_schools(); ++c) {
    totals[economy.district_of(c)] += xi.school_total(c);
  }
  for (int d = 0; d < economy.num_districts(); ++d) {
    if (mode == DistrictMode::kBalanced ? totals[d] != p.targets[d]
                                        : totals[d] < p.targets[d]) {
      return false;
    }
  }
  return true;
}

template <typename Distance>
std::vector<ExtendedRational> distance_table(const PolicyGoal& goal,
                                             Distance distance) {
  const FeasibleSet& space = *goal.space();
  std::vector<ExtendedRational> values(space.size());
  for (std::size_t r = 0; r < space.size(); ++r) {
    int best = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < goal.size() && best > 0; ++i) {
      best = std::min(best, distance(space[r], goal[i]));
    }
    values[r] = ExtendedRational(-static_cast<std::int64_t>(best));
  }
  return values;
}

}  // namespace

// --- PolicyGoal -----------------------------------------------------------

PolicyGoal::PolicyGoal(FeasibleSetPtr space, std::vector<std::size_t> ranks,
                       bool)
    : space_(std::move(space)), mask_(space_->size(), false) {
  for (std::size_t r : ranks) {
    if (r >= space_->size()) invalid("goal member rank out of range");
    mask_[r] = true;
  }
  for (std::size_t r = 0; r < mask_.size(); ++r) {
    if (mask_[r]) ranks_.push_back(r);
  }
  if (ranks_.empty()) throw Error(ErrorCode::kEmptyGoal, "policy goal is empty");
}

PolicyGoal::PolicyGoal(FeasibleSetPtr space,
                       const std::vector<Distribution>& members)
    : space_(std::move(space)) {
  std::vector<std::size_t> ranks;
  for (const auto& xi : members) {
    auto r = space_->rank_of(xi);
    if (!r) invalid("goal member " + xi.to_string() + " is not feasible");
    ranks.push_back(*r);
  }
  *this = PolicyGoal(space_, std::move(ranks), true);
}

PolicyGoal PolicyGoal::from_ranks(FeasibleSetPtr space,
                                  std::vector<std::size_t> ranks) {
  return PolicyGoal(std::move(space), std::move(ranks), true);
}

PolicyGoal PolicyGoal::filter(
    FeasibleSetPtr space,
    const std::function<bool(const Distribution&)>& predicate) {
  std::vector<std::size_t> ranks;
  for (std::size_t r = 0; r < space->size(); ++r) {
    if (predicate((*space)[r])) ranks.push_back(r);
  }
  return PolicyGoal(std::move(space), std::move(ranks), true);
}

std::vector<Distribution> PolicyGoal::members() const {
  std::vector<Distribution> out;
  out.reserve(ranks_.size());
  for (std::size_t r : ranks_) out.push_back((*space_)[r]);
  return out;
}

bool PolicyGoal::contains(const Distribution& xi) const {
  auto r = space_->rank_of(xi);
  return r && mask_[*r];
}

// --- distances ------------------------------------------------------------

int chebyshev_distance(const Distribution& a, const Distribution& b) {
  check_same_shape(a, b);
  int d = 0;
  for (int i = 0; i < a.dim(); ++i) {
    d = std::max(d, std::abs(a.counts()[i] - b.counts()[i]));
  }
  return d;
}

int manhattan_distance(const Distribution& a, const Distribution& b) {
  check_same_shape(a, b);
  int d = 0;
  for (int i = 0; i < a.dim(); ++i) d += std::abs(a.counts()[i] - b.counts()[i]);
  return d;
}

// --- Objective ------------------------------------------------------------

const char* objective_kind_name(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kTabulated: return "tabulated";
    case ObjectiveKind::kChebyshev: return "chebyshev";
    case ObjectiveKind::kDiscrete: return "discrete";
    case ObjectiveKind::kManhattan: return "manhattan";
  }
  return "unknown";
}

Objective::Objective(ObjectiveKind kind, FeasibleSetPtr space,
                     std::optional<PolicyGoal> goal,
                     std::vector<ExtendedRational> values)
    : kind_(kind),
      space_(std::move(space)),
      goal_(std::move(goal)),
      values_(std::move(values)) {}

Objective Objective::tabulated(FeasibleSetPtr space,
                               std::vector<ExtendedRational> values) {
  if (values.size() != space->size()) {
    invalid("tabulated objective has " + std::to_string(values.size()) +
            " values for " + std::to_string(space->size()) +
            " feasible distributions");
  }
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (!values[r].is_finite()) {
      invalid("tabulated objective is -inf at feasible " +
              (*space)[r].to_string());
    }
  }
  return Objective(ObjectiveKind::kTabulated, std::move(space), std::nullopt,
                   std::move(values));
}

Objective Objective::tabulated(
    FeasibleSetPtr space,
    const std::function<ExtendedRational(const Distribution&)>& fn) {
  std::vector<ExtendedRational> values;
  values.reserve(space->size());
  for (const auto& xi : space->members()) values.push_back(fn(xi));
  return tabulated(std::move(space), std::move(values));
}

Objective Objective::chebyshev_to(PolicyGoal goal) {
  auto values = distance_table(goal, chebyshev_distance);
  FeasibleSetPtr space = goal.space();
  return Objective(ObjectiveKind::kChebyshev, std::move(space), std::move(goal),
                   std::move(values));
}

Objective Objective::manhattan_to(PolicyGoal goal) {
  auto values = distance_table(goal, manhattan_distance);
  FeasibleSetPtr space = goal.space();
  return Objective(ObjectiveKind::kManhattan, std::move(space), std::move(goal),
                   std::move(values));
}

Objective Objective::discrete_to(PolicyGoal goal) {
  std::vector<ExtendedRational> values(goal.space()->size(), ExtendedRational(0));
  for (std::size_t r : goal.ranks()) values[r] = ExtendedRational(1);
  FeasibleSetPtr space = goal.space();
  return Objective(ObjectiveKind::kDiscrete, std::move(space), std::move(goal),
                   std::move(values));
}

ExtendedRational Objective::operator()(const Distribution& xi) const {
  auto r = space_->rank_of(xi);
  return r ? values_[*r] : ExtendedRational::negative_infinity();
}

ExtendedRational Objective::operator()(std::span<const int> counts) const {
  auto r = space_->rank_of(counts);
  return r ? values_[*r] : ExtendedRational::negative_infinity();
}

Objective Objective::transformed(
    const std::function<Rational(const Rational&)>& increasing) const {
  std::vector<ExtendedRational> values;
  values.reserve(values_.size());
  for (const auto& v : values_) values.emplace_back(increasing(v.value()));
  return tabulated(space_, std::move(values));
}

bool weakly_improves(const Objective& f, const Matching& mu,
                     const Economy& economy) {
  return f(induced_distribution(economy, mu)) >=
         f(induced_distribution(economy, economy.initial_matching()));
}

// --- builders -------------------------------------------------------------

QuotaParams trivial_quota(const Economy& economy) {
  return {std::vector<int>(economy.num_schools(), 0),
          std::vector<int>(economy.capacities().begin(),
                           economy.capacities().end())};
}

DiversityParams trivial_diversity(const Economy& economy) {
  DiversityParams p;
  for (SchoolIndex c = 0; c < economy.num_schools(); ++c) {
    p.floors.emplace_back(economy.num_types(), 0);
    p.ceilings.emplace_back(economy.num_types(), economy.capacity(c));
  }
  return p;
}

DistrictParams initial_district_targets(const Economy& economy) {
  if (!economy.has_districts()) invalid("economy has no districts");
  const Distribution xi0 =
      induced_distribution(economy, economy.initial_matching());
  DistrictParams p;
  for (int d = 0; d < economy.num_districts(); ++d) {
    p.targets.push_back(district_total(economy, xi0, d));
  }
  return p;
}

DistrictDiversityParams trivial_district_diversity(const Economy& economy) {
  DistrictDiversityParams p;
  for (int d = 0; d < economy.num_districts(); ++d) {
    p.floors.emplace_back(economy.num_types(), 0);
    p.ceilings.emplace_back(economy.num_types(), economy.num_students());
  }
  return p;
}

PolicyGoal build_quota_goal(const FeasibleSetPtr& space, const Economy& economy,
                            const QuotaParams& params) {
  require_space_matches(space, economy);
  require_size(params.floors.size(), economy.num_schools(), "quota floors");
  require_size(params.ceilings.size(), economy.num_schools(), "quota ceilings");
  for (SchoolIndex c = 0; c < economy.num_schools(); ++c) {
    if (params.floors[c] < 0) {
      invalid("negative floor at school '" + economy.school_ids()[c] + "'");
    }
    if (params.ceilings[c] < params.floors[c]) {
      invalid("ceiling below floor at school '" + economy.school_ids()[c] + "'");
    }
  }
  return PolicyGoal::filter(space, [&](const Distribution& xi) {
    for (SchoolIndex c = 0; c < xi.num_schools(); ++c) {
      const int n = xi.school_total(c);
      if (n < params.floors[c] || n > params.ceilings[c]) return false;
    }
    return true;
  });
}

PolicyGoal build_diversity_goal(const FeasibleSetPtr& space,
                                const Economy& economy,
                                const DiversityParams& params) {
  require_space_matches(space, economy);
  validate_diversity(economy, params);
  return PolicyGoal::filter(space, [&](const Distribution& xi) {
    return diversity_holds(params, xi);
  });
}

PolicyGoal build_exchange_feasibility_goal(const FeasibleSetPtr& space,
                                           const Economy& economy,
                                           const DistrictParams& params) {
  require_space_matches(space, economy);
  validate_districts(economy, params);
  return PolicyGoal::filter(space, [&](const Distribution& xi) {
    return districts_hold(economy, params, DistrictMode::kExchangeFeasibility,
                          xi);
  });
}

PolicyGoal build_balanced_exchange_goal(const FeasibleSetPtr& space,
                                        const Economy& economy,
                                        const DistrictParams& params) {
  require_space_matches(space, economy);
  validate_districts(economy, params);
  return PolicyGoal::filter(space, [&](const Distribution& xi) {
    return districts_hold(economy, params, DistrictMode::kBalanced, xi);
  });
}

PolicyGoal build_combined_goal(const FeasibleSetPtr& space,
                               const Economy& economy,
                               const DiversityParams& diversity,
                               const DistrictParams& districts,
                               DistrictMode mode) {
  require_space_matches(space, economy);
  validate_diversity(economy, diversity);
  validate_districts(economy, districts);
  return PolicyGoal::filter(space, [&](const Distribution& xi) {
    return diversity_holds(diversity, xi) &&
           districts_hold(economy, districts, mode, xi);
  });
}

PolicyGoal build_district_diversity_goal(const FeasibleSetPtr& space,
                                         const Economy& economy,
                                         const DistrictDiversityParams& params) {
  require_space_matches(space, economy);
  if (!economy.has_districts()) invalid("economy has no districts");
  require_size(params.floors.size(), economy.num_districts(),
               "district floors");
  require_size(params.ceilings.size(), economy.num_districts(),
               "district ceilings");
  for (int d = 0; d < economy.num_districts(); ++d) {
    const std::string& district = economy.district_ids()[d];
    require_size(params.floors[d].size(), economy.num_types(),
                 "floors of district '" + district + "'");
    require_size(params.ceilings[d].size(), economy.num_types(),
                 "ceilings of district '" + district + "'");
    for (int t = 0; t < economy.num_types(); ++t) {
      if (params.floors[d][t] < 0 || params.ceilings[d][t] < params.floors[d][t]) {
        invalid("invalid bounds at district '" + district + "', type '" +
                economy.type_ids()[t] + "'");
      }
    }
  }
  return PolicyGoal::filter(space, [&](const Distribution& xi) {
    for (int d = 0; d < economy.num_districts(); ++d) {
      for (int t = 0; t < economy.num_types(); ++t) {
        int sum = 0;
        for (SchoolIndex c = 0; c < economy.num_schools(); ++c) {
          if (economy.district_of(c) == d) sum += xi(c, t);
        }
        if (sum < params.floors[d][t] || sum > params.ceilings[d][t]) {
          return false;
        }
      }
    }
    return true;
  });
}

}  // namespace dttc
