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

#ifndef DTTC_DISTRIBUTION_HPP_
#define DTTC_DISTRIBUTION_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dttc/economy.hpp"
#include "dttc/error.hpp"

namespace dttc {

// Schools × types grid of student counts, stored school-major. Ordering is
// lexicographic over that flattened grid.
class Distribution {
 public:
  Distribution() = default;
  Distribution(int num_schools, int num_types)
      : num_schools_(num_schools),
        num_types_(num_types),
        counts_(static_cast<std::size_t>(num_schools) * num_types, 0) {}
  // `counts` is school-major and must have num_schools * num_types entries.
  Distribution(int num_schools, int num_types, std::vector<int> counts);

  int num_schools() const { return num_schools_; }
  int num_types() const { return num_types_; }
  int dim() const { return static_cast<int>(counts_.size()); }

  int operator()(SchoolIndex c, int t) const {
    return counts_[static_cast<std::size_t>(c) * num_types_ + t];
  }
  int& operator()(SchoolIndex c, int t) {
    return counts_[static_cast<std::size_t>(c) * num_types_ + t];
  }
  std::span<const int> counts() const { return counts_; }
  std::span<int> counts() { return counts_; }

  // n(ξ), n_c(ξ).
  int total() const;
  int school_total(SchoolIndex c) const;

  std::string to_string() const;

  friend auto operator<=>(const Distribution&, const Distribution&) = default;

 private:
  int num_schools_ = 0;
  int num_types_ = 0;
  std::vector<int> counts_;
};

// χ_c^t.
Distribution unit_distribution(int num_schools, int num_types, SchoolIndex c,
                               int t);

// n_d(ξ). Precondition: economy.has_districts().
int district_total(const Economy& economy, const Distribution& xi, int district);

Distribution induced_distribution(const Economy& economy, const Matching& mu);

// Throws Error(kDimensionMismatch) if the grid shape differs from the economy.
bool is_feasible(const Economy& economy, const Distribution& xi);

// Product over schools of C(q_c + |T|, |T|), saturating at UINT64_MAX.
std::uint64_t feasible_count(const Economy& economy);

// Every feasible distribution in lexicographic order. Throws BudgetExceeded
// when feasible_count(economy) > budget.
std::vector<Distribution> enumerate_feasible(
    const Economy& economy, std::uint64_t budget = kDefaultEnumerationBudget);

// Materialized feasible set with O(1) rank lookup. Ranks follow the
// lexicographic order of enumerate_feasible. Immutable; share it freely.
class FeasibleSet {
 public:
  explicit FeasibleSet(const Economy& economy,
                       std::uint64_t budget = kDefaultEnumerationBudget);

  int num_schools() const { return num_schools_; }
  int num_types() const { return num_types_; }
  int dim() const { return num_schools_ * num_types_; }
  std::span<const int> capacities() const { return capacities_; }

  std::size_t size() const { return members_.size(); }
  const Distribution& operator[](std::size_t rank) const {
    return members_[rank];
  }
  const std::vector<Distribution>& members() const { return members_; }

  // nullopt when the grid is infeasible or has the wrong shape.
  std::optional<std::size_t> rank_of(std::span<const int> counts) const;
  std::optional<std::size_t> rank_of(const Distribution& xi) const;

  bool same_shape(const FeasibleSet& other) const {
    return num_schools_ == other.num_schools_ &&
           num_types_ == other.num_types_ && capacities_ == other.capacities_;
  }

 private:
  std::optional<std::uint64_t> code_of(std::span<const int> counts) const;

  int num_schools_;
  int num_types_;
  std::vector<int> capacities_;
  std::vector<Distribution> members_;
  // Mixed-radix code (radix q_c + 1 per coordinate) to rank. Dense when the
  // code space is small, hashed otherwise.
  std::vector<std::uint64_t> strides_;
  std::vector<std::int32_t> dense_;
  std::unordered_map<std::uint64_t, std::size_t> sparse_;
};

using FeasibleSetPtr = std::shared_ptr<const FeasibleSet>;

inline FeasibleSetPtr make_feasible_set(
    const Economy& economy, std::uint64_t budget = kDefaultEnumerationBudget) {
  return std::make_shared<const FeasibleSet>(economy, budget);
}

}  // namespace dttc

#endif  // DTTC_DISTRIBUTION_HPP_
