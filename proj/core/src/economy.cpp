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

#include <algorithm>
#include <set>

#include "dttc/error.hpp"

namespace dttc {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

std::optional<int> find_in(const std::vector<std::string>& ids,
                           std::string_view id) {
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) return std::nullopt;
  return static_cast<int>(it - ids.begin());
}

void require_unique(const std::vector<std::string>& ids, const char* what) {
  std::set<std::string_view> seen;
  for (const auto& id : ids) {
    if (id.empty()) invalid(std::string("empty ") + what + " id");
    if (id == kOutsideToken) {
      invalid(std::string(what) + " id '" + id + "' is reserved");
    }
    if (!seen.insert(id).second) {
      invalid(std::string("duplicate ") + what + " id '" + id + "'");
    }
  }
}

}  // namespace

Economy::Economy(std::vector<SchoolSpec> schools,
                 std::vector<std::string> types,
                 std::vector<StudentSpec> students) {
  type_ids_ = std::move(types);
  require_unique(type_ids_, "type");

  const bool any_district = std::any_of(
      schools.begin(), schools.end(),
      [](const SchoolSpec& s) { return s.district.has_value(); });
  for (auto& school : schools) {
    if (school.capacity < 0) {
      invalid("school '" + school.id + "' has negative capacity");
    }
    school_ids_.push_back(school.id);
    capacities_.push_back(school.capacity);
    if (!any_district) continue;
    if (!school.district) {
      invalid("school '" + school.id +
              "' has no district while other schools do");
    }
    auto d = find_in(district_ids_, *school.district);
    if (!d) {
      district_ids_.push_back(*school.district);
      d = static_cast<int>(district_ids_.size()) - 1;
    }
    school_districts_.push_back(*d);
  }
  require_unique(school_ids_, "school");

  std::vector<int> load(school_ids_.size(), 0);
  for (const auto& student : students) {
    student_ids_.push_back(student.id);
    auto t = find_in(type_ids_, student.type);
    if (!t) {
      invalid("student '" + student.id + "' has unknown type '" +
              student.type + "'");
    }
    student_types_.push_back(*t);
    SchoolIndex home = kUnassigned;
    if (student.initial_school && *student.initial_school != kOutsideToken) {
      auto c = find_in(school_ids_, *student.initial_school);
      if (!c) {
        invalid("student '" + student.id + "' starts at unknown school '" +
                *student.initial_school + "'");
      }
      home = *c;
      if (++load[home] > capacities_[home]) {
        invalid("initial matching exceeds the capacity of school '" +
                school_ids_[home] + "'");
      }
    }
    initial_.assignment.push_back(home);
  }
  require_unique(student_ids_, "student");
}

std::optional<SchoolIndex> Economy::find_school(std::string_view id) const {
  return find_in(school_ids_, id);
}
std::optional<int> Economy::find_type(std::string_view id) const {
  return find_in(type_ids_, id);
}
std::optional<int> Economy::find_student(std::string_view id) const {
  return find_in(student_ids_, id);
}
std::optional<int> Economy::find_district(std::string_view id) const {
  return find_in(district_ids_, id);
}

std::string Economy::school_name(SchoolIndex c) const {
  return c == kUnassigned ? std::string(kOutsideToken) : school_ids_[c];
}

std::vector<SchoolSpec> Economy::school_specs() const {
  std::vector<SchoolSpec> out;
  for (int c = 0; c < num_schools(); ++c) {
    SchoolSpec spec{school_ids_[c], capacities_[c], std::nullopt};
    if (has_districts()) spec.district = district_ids_[school_districts_[c]];
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<StudentSpec> Economy::student_specs() const {
  std::vector<StudentSpec> out;
  for (int s = 0; s < num_students(); ++s) {
    StudentSpec spec{student_ids_[s], type_ids_[student_types_[s]],
                     std::nullopt};
    if (initial_[s] != kUnassigned) spec.initial_school = school_ids_[initial_[s]];
    out.push_back(std::move(spec));
  }
  return out;
}

void validate_matching(const Economy& economy, const Matching& m) {
  if (static_cast<int>(m.size()) != economy.num_students()) {
    invalid("matching covers " + std::to_string(m.size()) + " students, expected " +
            std::to_string(economy.num_students()));
  }
  std::vector<int> load(economy.num_schools(), 0);
  for (std::size_t s = 0; s < m.size(); ++s) {
    const SchoolIndex c = m[static_cast<int>(s)];
    if (c == kUnassigned) continue;
    if (c < 0 || c >= economy.num_schools()) {
      invalid("matching assigns student '" + economy.student_ids()[s] +
              "' to an unknown school");
    }
    if (++load[c] > economy.capacity(c)) {
      invalid("matching exceeds the capacity of school '" +
              economy.school_ids()[c] + "'");
    }
  }
}

Preference::Preference(int num_schools, std::vector<SchoolIndex> ranking)
    : ranking_(std::move(ranking)), positions_(num_schools + 1, -1) {
  if (static_cast<int>(ranking_.size()) != num_schools + 1) {
    invalid("ranking must list every school and the outside option exactly once");
  }
  for (std::size_t i = 0; i < ranking_.size(); ++i) {
    const SchoolIndex c = ranking_[i];
    if (c < kUnassigned || c >= num_schools) invalid("ranking names an unknown school");
    if (positions_[c + 1] != -1) invalid("ranking repeats an entry");
    positions_[c + 1] = static_cast<int>(i);
  }
}

Preference Preference::complete(int num_schools,
                                const std::vector<SchoolIndex>& prefix) {
  std::vector<SchoolIndex> ranking = prefix;
  auto listed = [&](SchoolIndex c) {
    return std::find(ranking.begin(), ranking.end(), c) != ranking.end();
  };
  for (SchoolIndex c = 0; c < num_schools; ++c) {
    if (!listed(c)) ranking.push_back(c);
  }
  if (!listed(kUnassigned)) ranking.push_back(kUnassigned);
  return Preference(num_schools, std::move(ranking));
}

bool pareto_dominates(const PreferenceProfile& prefs, const Matching& mu,
                      const Matching& nu) {
  bool strict = false;
  for (std::size_t s = 0; s < prefs.size(); ++s) {
    const int i = static_cast<int>(s);
    if (!prefs[s].weakly_prefers(mu[i], nu[i])) return false;
    strict = strict || prefs[s].prefers(mu[i], nu[i]);
  }
  return strict;
}

bool is_individually_rational(const Economy& economy,
                              const PreferenceProfile& prefs,
                              const Matching& mu) {
  const Matching& home = economy.initial_matching();
  for (int s = 0; s < economy.num_students(); ++s) {
    if (!prefs[s].weakly_prefers(mu[s], home[s])) return false;
  }
  return true;
}

}  // namespace dttc
