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

#include "dttc/ttc.hpp"

#include <algorithm>
#include <numeric>

namespace dttc {

Option initial_option(const Economy& economy, int student) {
  const SchoolIndex home = economy.initial_matching()[student];
  if (home == kUnassigned) return Option{};
  return Option{home, economy.type_of(student)};
}

std::string option_name(const Economy& economy, Option o) {
  if (o.is_outside()) {
    return "(" + std::string(kOutsideToken) + "," + std::string(kOutsideToken) +
           ")";
  }
  return "(" + economy.school_ids()[o.school] + "," + economy.type_ids()[o.type] +
         ")";
}

LiftedPreference lift_preference(const Economy& economy, int student,
                                 const Preference& pref) {
  const OptionSpace options(economy);
  const int own = economy.type_of(student);
  LiftedPreference lifted{student, {}};
  lifted.ranking.reserve(options.size());
  for (SchoolIndex c : pref.ranking()) {
    lifted.ranking.push_back(
        options.index(c == kUnassigned ? Option{} : Option{c, own}));
  }
  for (SchoolIndex c = 0; c < economy.num_schools(); ++c) {
    for (int t = 0; t < economy.num_types(); ++t) {
      if (t != own) lifted.ranking.push_back(options.index(Option{c, t}));
    }
  }
  return lifted;
}

const char* priority_rule_name(PriorityRule rule) {
  switch (rule) {
    case PriorityRule::kInitialSchool: return "school";
    case PriorityRule::kInitialPair: return "pair";
  }
  return "unknown";
}

void validate_master_list(const Economy& economy,
                          const std::vector<int>& master_list) {
  std::vector<bool> seen(economy.num_students(), false);
  if (static_cast<int>(master_list.size()) != economy.num_students()) {
    throw Error(ErrorCode::kInvalidArgument,
                "master list must rank every student exactly once");
  }
  for (int s : master_list) {
    if (s < 0 || s >= economy.num_students() || seen[s]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "master list must rank every student exactly once");
    }
    seen[s] = true;
  }
}

namespace {

bool in_top_class(const Economy& economy, int student, Option option,
                  PriorityRule rule) {
  const SchoolIndex home = economy.initial_matching()[student];
  if (option.is_outside()) return home == kUnassigned;
  if (home != option.school) return false;
  return rule == PriorityRule::kInitialSchool ||
         economy.type_of(student) == option.type;
}

}  // namespace

std::vector<int> priority_order(const Economy& economy,
                                const std::vector<int>& master_list,
                                Option option, PriorityRule rule) {
  validate_master_list(economy, master_list);
  std::vector<int> order;
  order.reserve(master_list.size());
  for (int s : master_list) {
    if (in_top_class(economy, s, option, rule)) order.push_back(s);
  }
  for (int s : master_list) {
    if (!in_top_class(economy, s, option, rule)) order.push_back(s);
  }
  return order;
}

Distribution option_distribution(const Economy& economy,
                                 const std::vector<int>& options) {
  const OptionSpace space(economy);
  Distribution xi(economy.num_schools(), economy.num_types());
  for (int o : options) {
    const Option opt = space.option(o);
    if (!opt.is_outside()) ++xi(opt.school, opt.type);
  }
  return xi;
}

namespace {

// f at `current` with `student` moved from her initial slot to `option`.
ExtendedRational value_after_move(const Objective& f, const Economy& economy,
                                  Distribution& current, int student,
                                  Option option) {
  const Option home = initial_option(economy, student);
  if (!home.is_outside()) {
    if (current(home.school, home.type) == 0) {
      return ExtendedRational::negative_infinity();
    }
    --current(home.school, home.type);
  }
  if (!option.is_outside()) ++current(option.school, option.type);
  ExtendedRational value = f(current);
  if (!option.is_outside()) --current(option.school, option.type);
  if (!home.is_outside()) ++current(home.school, home.type);
  return value;
}

}  // namespace

bool is_permissible(const Objective& f, const Economy& economy,
                    const Distribution& current, int student, Option option) {
  const ExtendedRational floor =
      f(induced_distribution(economy, economy.initial_matching()));
  Distribution scratch = current;
  const ExtendedRational value =
      value_after_move(f, economy, scratch, student, option);
  return value.is_finite() && value >= floor;
}

TtcResult run_ttc(const Economy& economy, const Objective& f,
                  const PreferenceProfile& prefs, const TtcOptions& opts) {
  const int num_students = economy.num_students();
  const OptionSpace space(economy);
  const int num_options = space.size();

  if (static_cast<int>(prefs.size()) != num_students) {
    throw Error(ErrorCode::kPrecondition,
                "preference profile does not cover every student");
  }
  for (const auto& p : prefs) {
    if (static_cast<int>(p.ranking().size()) != economy.num_schools() + 1) {
      throw Error(ErrorCode::kPrecondition,
                  "preference does not rank every school of the economy");
    }
  }
  std::vector<int> master(num_students);
  if (opts.master_list) {
    validate_master_list(economy, *opts.master_list);
    master = *opts.master_list;
  } else {
    std::iota(master.begin(), master.end(), 0);
  }

  TtcResult result;
  result.initial_value =
      f(induced_distribution(economy, economy.initial_matching()));
  if (!result.initial_value.is_finite()) {
    throw Error(ErrorCode::kPrecondition,
                "objective is -inf at the initial distribution");
  }
  const ExtendedRational& floor = result.initial_value;

  std::vector<std::vector<int>> lifted(num_students);
  for (int s = 0; s < num_students; ++s) {
    lifted[s] = lift_preference(economy, s, prefs[s]).ranking;
  }
  std::vector<std::vector<int>> priorities(num_options);
  for (int o = 0; o < num_options; ++o) {
    priorities[o] =
        priority_order(economy, master, space.option(o), opts.priority_rule);
  }

  std::vector<int> working(num_students);
  for (int s = 0; s < num_students; ++s) {
    working[s] = space.index(initial_option(economy, s));
  }
  std::vector<bool> remaining(num_students, true);
  std::vector<bool> in_market(num_options, true);
  int unprocessed = num_students;

  while (unprocessed > 0) {
    TtcStep step;
    step.working = working;
    Distribution current = option_distribution(economy, working);
    step.working_value = f(current);

    step.option_points_to.assign(num_options, -1);
    for (int o = 0; o < num_options; ++o) {
      if (!in_market[o]) continue;
      const Option option = space.option(o);
      for (int s : priorities[o]) {
        if (!remaining[s]) continue;
        const ExtendedRational v =
            value_after_move(f, economy, current, s, option);
        if (v.is_finite() && v >= floor) {
          step.option_points_to[o] = s;
          break;
        }
      }
      if (step.option_points_to[o] == -1) {
        in_market[o] = false;
        step.removed.push_back(o);
      }
    }

    step.student_points_to.assign(num_students, -1);
    for (int s = 0; s < num_students; ++s) {
      if (!remaining[s]) continue;
      for (int o : lifted[s]) {
        if (in_market[o]) {
          step.student_points_to[s] = o;
          break;
        }
      }
      if (step.student_points_to[s] == -1) {
        throw Error(ErrorCode::kInternalInvariant,
                    "student '" + economy.student_ids()[s] +
                        "' has no remaining option to point to");
      }
    }

    // Out-degree is one everywhere, so walking from each unvisited student
    // either closes a new cycle or runs into an already explored path.
    std::vector<int> mark(num_students, 0);  // 0 new, 1 on path, 2 done
    std::vector<bool> on_cycle(num_students, false);
    for (int start = 0; start < num_students; ++start) {
      if (!remaining[start] || mark[start]) continue;
      std::vector<int> path;
      int s = start;
      while (mark[s] == 0) {
        mark[s] = 1;
        path.push_back(s);
        s = step.option_points_to[step.student_points_to[s]];
      }
      if (mark[s] == 1) {
        TtcCycle cycle;
        auto it = std::find(path.begin(), path.end(), s);
        std::vector<int> members(it, path.end());
        std::rotate(members.begin(),
                    std::min_element(members.begin(), members.end()),
                    members.end());
        for (int m : members) {
          on_cycle[m] = true;
          cycle.students.push_back(m);
          cycle.options.push_back(step.student_points_to[m]);
        }
        step.cycles.push_back(std::move(cycle));
      }
      for (int p : path) mark[p] = 2;
    }
    if (step.cycles.empty()) {
      throw Error(ErrorCode::kInternalInvariant, "pointing graph has no cycle");
    }
    std::sort(step.cycles.begin(), step.cycles.end(),
              [](const TtcCycle& a, const TtcCycle& b) {
                return a.students.front() < b.students.front();
              });

    for (int s = 0; s < num_students; ++s) {
      if (!on_cycle[s]) continue;
      working[s] = step.student_points_to[s];
      remaining[s] = false;
      --unprocessed;
    }
    result.trace.steps.push_back(std::move(step));

    if (opts.check_objective_floor) {
      const ExtendedRational now = f(option_distribution(economy, working));
      if (now < floor) {
        result.warnings.push_back(
            "step " + std::to_string(result.trace.steps.size()) +
            ": objective fell to " + now.to_string() + " below its initial " +
            floor.to_string() + "; the objective is not pseudo M-natural-concave");
      }
    }
  }

  result.assigned_options = working;
  result.outcome.assignment.resize(num_students);
  for (int s = 0; s < num_students; ++s) {
    result.outcome.assignment[s] = space.option(working[s]).school;
  }
  result.outcome_value = f(induced_distribution(economy, result.outcome));
  return result;
}

Matching replay_trace(const Economy& economy, const TtcTrace& trace) {
  const OptionSpace space(economy);
  Matching m = economy.initial_matching();
  for (const auto& step : trace.steps) {
    for (const auto& cycle : step.cycles) {
      for (std::size_t k = 0; k < cycle.students.size(); ++k) {
        m.assignment[cycle.students[k]] = space.option(cycle.options[k]).school;
      }
    }
  }
  return m;
}

}  // namespace dttc
