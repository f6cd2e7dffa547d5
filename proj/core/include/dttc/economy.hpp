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

// Market primitives: schools, types, students, districts, matchings and
// preferences. Identifiers are opaque strings; everything downstream works on
// their positions in the economy's ordered lists.

#ifndef DTTC_ECONOMY_HPP_
#define DTTC_ECONOMY_HPP_

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dttc {

// School position, or kUnassigned for the outside option.
using SchoolIndex = int;
inline constexpr SchoolIndex kUnassigned = -1;

// Token used for the outside option in every textual format.
inline constexpr std::string_view kOutsideToken = "@none";

struct Matching {
  // assignment[s] is the school of student s, or kUnassigned.
  std::vector<SchoolIndex> assignment;

  SchoolIndex operator[](int student) const { return assignment[student]; }
  std::size_t size() const { return assignment.size(); }

  friend auto operator<=>(const Matching&, const Matching&) = default;
};

struct SchoolSpec {
  std::string id;
  int capacity = 0;
  std::optional<std::string> district;
};

struct StudentSpec {
  std::string id;
  std::string type;
  // School id, or nullopt when initially unmatched.
  std::optional<std::string> initial_school;
};

class Economy {
 public:
  // Validates all invariants: unique ids, known types, nonnegative
  // capacities, districts either on every school or on none, and an initial
  // matching that respects capacities. Throws Error(kInvalidArgument).
  Economy(std::vector<SchoolSpec> schools, std::vector<std::string> types,
          std::vector<StudentSpec> students);

  int num_schools() const { return static_cast<int>(school_ids_.size()); }
  int num_types() const { return static_cast<int>(type_ids_.size()); }
  int num_students() const { return static_cast<int>(student_ids_.size()); }
  int num_districts() const { return static_cast<int>(district_ids_.size()); }
  bool has_districts() const { return !district_ids_.empty(); }

  const std::vector<std::string>& school_ids() const { return school_ids_; }
  const std::vector<std::string>& type_ids() const { return type_ids_; }
  const std::vector<std::string>& student_ids() const { return student_ids_; }
  const std::vector<std::string>& district_ids() const { return district_ids_; }

  int capacity(SchoolIndex c) const { return capacities_[c]; }
  std::span<const int> capacities() const { return capacities_; }
  int type_of(int student) const { return student_types_[student]; }
  // Precondition: has_districts().
  int district_of(SchoolIndex c) const { return school_districts_[c]; }
  const Matching& initial_matching() const { return initial_; }

  std::optional<SchoolIndex> find_school(std::string_view id) const;
  std::optional<int> find_type(std::string_view id) const;
  std::optional<int> find_student(std::string_view id) const;
  std::optional<int> find_district(std::string_view id) const;

  // "@none" for kUnassigned.
  std::string school_name(SchoolIndex c) const;

  // The specs this economy was built from, in canonical order.
  std::vector<SchoolSpec> school_specs() const;
  std::vector<StudentSpec> student_specs() const;

  friend bool operator==(const Economy&, const Economy&) = default;

 private:
  std::vector<std::string> school_ids_;
  std::vector<int> capacities_;
  std::vector<std::string> type_ids_;
  std::vector<std::string> student_ids_;
  std::vector<int> student_types_;
  std::vector<std::string> district_ids_;
  std::vector<int> school_districts_;
  Matching initial_;
};

// Throws Error(kInvalidArgument) unless `m` assigns every student of
// `economy` to a known school or kUnassigned within capacities.
void validate_matching(const Economy& economy, const Matching& m);

// Strict ranking over schools and the outside option.
class Preference {
 public:
  // `ranking` must be a permutation of {0..num_schools-1} ∪ {kUnassigned}.
  Preference(int num_schools, std::vector<SchoolIndex> ranking);

  const std::vector<SchoolIndex>& ranking() const { return ranking_; }
  // 0 is the most preferred position.
  int position(SchoolIndex c) const { return positions_[c + 1]; }
  bool prefers(SchoolIndex a, SchoolIndex b) const {
    return position(a) < position(b);
  }
  bool weakly_prefers(SchoolIndex a, SchoolIndex b) const {
    return position(a) <= position(b);
  }

  // Completes a partial ranking: listed entries first, then the remaining
  // schools in economy order, then the outside option if still missing.
  static Preference complete(int num_schools,
                             const std::vector<SchoolIndex>& prefix);

  friend bool operator==(const Preference& a, const Preference& b) {
    return a.ranking_ == b.ranking_;
  }

 private:
  std::vector<SchoolIndex> ranking_;
  std::vector<int> positions_;
};

using PreferenceProfile = std::vector<Preference>;

bool pareto_dominates(const PreferenceProfile& prefs, const Matching& mu,
                      const Matching& nu);

bool is_individually_rational(const Economy& economy,
                              const PreferenceProfile& prefs,
                              const Matching& mu);

}  // namespace dttc

#endif  // DTTC_ECONOMY_HPP_
