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

// Top Trading Cycles on the hypothetical market of school-type pairs.
//
// One side holds every (school, type) pair plus the outside pair; the other
// holds the students. Each step, every remaining pair points to its
// highest-priority permissible remaining student (or leaves the market), every
// remaining student points to her best remaining pair under her lifted
// preference, and all cycles of the resulting functional graph are executed
// at once.

#ifndef DTTC_TTC_HPP_
#define DTTC_TTC_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dttc/economy.hpp"
#include "dttc/objectives.hpp"

namespace dttc {

// A pair of the hypothetical market. The outside pair has
// school == kUnassigned and type == -1.
struct Option {
  SchoolIndex school = kUnassigned;
  int type = -1;

  bool is_outside() const { return school == kUnassigned; }
  friend auto operator<=>(const Option&, const Option&) = default;
};

// Dense numbering of options: (c, t) -> c * |T| + t, outside -> |C| * |T|.
// This is also the pointing iteration order.
class OptionSpace {
 public:
  OptionSpace(int num_schools, int num_types)
      : num_schools_(num_schools), num_types_(num_types) {}
  explicit OptionSpace(const Economy& e)
      : OptionSpace(e.num_schools(), e.num_types()) {}

  int size() const { return num_schools_ * num_types_ + 1; }
  int outside() const { return num_schools_ * num_types_; }
  int index(Option o) const {
    return o.is_outside() ? outside() : o.school * num_types_ + o.type;
  }
  Option option(int index) const {
    if (index == outside()) return Option{};
    return Option{index / num_types_, index % num_types_};
  }

 private:
  int num_schools_;
  int num_types_;
};

// The option a student holds at the initial matching.
Option initial_option(const Economy& economy, int student);

std::string option_name(const Economy& economy, Option o);

// Strict order over all options (indices into OptionSpace), best first.
struct LiftedPreference {
  int owner = 0;
  std::vector<int> ranking;
};

// Own-type pairs and the outside pair in the order of the original
// preference, then every other-type pair in one block in (school, type)
// order.
LiftedPreference lift_preference(const Economy& economy, int student,
                                 const Preference& pref);

// Who forms the top priority class at an option.
enum class PriorityRule {
  // Students whose initial school is the option's school, whatever their
  // type (for the outside pair: the initially unmatched). Reproduces the
  // pointing graphs of the worked seven-student example.
  kInitialSchool,
  // Only students initially holding exactly this (school, type) pair.
  kInitialPair,
};

const char* priority_rule_name(PriorityRule rule);

// Validates a master list (a permutation of students). Throws
// Error(kInvalidArgument).
void validate_master_list(const Economy& economy,
                          const std::vector<int>& master_list);

// Students ordered for `option`: the top class first, then everyone else;
// ties broken by the master list.
std::vector<int> priority_order(const Economy& economy,
                                const std::vector<int>& master_list,
                                Option option,
                                PriorityRule rule = PriorityRule::kInitialSchool);

// Distribution of a hypothetical-market assignment (option index per student;
// the outside pair contributes nothing).
Distribution option_distribution(const Economy& economy,
                                 const std::vector<int>& options);

// Whether `student`, still sitting in her initial slot of `current`, may be
// pointed to by `option`: moving her there keeps the distribution feasible
// and f at least f(ξ(μ_0)).
bool is_permissible(const Objective& f, const Economy& economy,
                    const Distribution& current, int student, Option option);

struct TtcCycle {
  // students[k] points to options[k], which points to students[k + 1]
  // (wrapping). Starts at the lowest-indexed student.
  std::vector<int> students;
  std::vector<int> options;
};

struct TtcStep {
  // μ^n as option indices per student, and f(ξ(μ^n)) on the hypothetical
  // distribution.
  std::vector<int> working;
  ExtendedRational working_value;
  // Options that left the market at this step.
  std::vector<int> removed;
  // Per option: the student it points to, or -1 when out of the market.
  std::vector<int> option_points_to;
  // Per student: the option she points to, or -1 once processed.
  std::vector<int> student_points_to;
  std::vector<TtcCycle> cycles;
};

struct TtcTrace {
  std::vector<TtcStep> steps;
};

struct TtcOptions {
  // Defaults to the economy's student order.
  std::optional<std::vector<int>> master_list;
  PriorityRule priority_rule = PriorityRule::kInitialSchool;
  // Record a warning whenever f(ξ(μ^n)) drops below f(ξ(μ_0)). That can only
  // happen for objectives that are not pseudo M♮-concave.
  bool check_objective_floor = true;
};

struct TtcResult {
  Matching outcome;
  // Final option per student in the hypothetical market.
  std::vector<int> assigned_options;
  TtcTrace trace;
  ExtendedRational initial_value;
  ExtendedRational outcome_value;
  std::vector<std::string> warnings;
};

// Throws Error(kPrecondition) when f(ξ(μ_0)) is not finite or inputs do not
// fit the economy, and Error(kInternalInvariant) if a remaining student has no
// remaining option to point to.
TtcResult run_ttc(const Economy& economy, const Objective& f,
                  const PreferenceProfile& prefs,
                  const TtcOptions& options = {});

// Re-executes the trace's cycles from μ_0 and maps the result back to
// schools. Equals run_ttc(...).outcome for a trace produced by run_ttc.
Matching replay_trace(const Economy& economy, const TtcTrace& trace);

}  // namespace dttc

#endif  // DTTC_TTC_HPP_
