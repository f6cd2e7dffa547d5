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

// JSON instance documents: economy, preferences, objective, master list.
// The schema is documented in README.md.

#ifndef DTTC_INSTANCE_HPP_
#define DTTC_INSTANCE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dttc/distribution.hpp"
#include "dttc/economy.hpp"
#include "dttc/error.hpp"
#include "dttc/objectives.hpp"
#include "dttc/rational.hpp"

namespace dttc {

enum class Diagnostic {
  kIo,
  kSyntax,
  kMissingField,
  kUnknownField,
  kWrongType,
  kMalformedNumber,
  kDuplicateId,
  kUnknownSchool,
  kUnknownStudent,
  kUnknownType,
  kUnknownDistrict,
  kDuplicateRanking,
  kIncompleteRanking,
  kCapacityViolation,
  kShapeMismatch,
  kDuplicateEntry,
  kUnknownVariant,
  kInvalidValue,
};

// Stable kebab-case code, e.g. "unknown-school".
const char* diagnostic_name(Diagnostic d);

// what() reads "<location>: <code>: <message>". The location is a JSON
// pointer into the document, or "line L, column C" for syntax errors.
class InstanceError : public Error {
 public:
  InstanceError(Diagnostic diagnostic, std::string location,
                const std::string& message);

  Diagnostic diagnostic() const noexcept { return diagnostic_; }
  const std::string& location() const noexcept { return location_; }

 private:
  Diagnostic diagnostic_;
  std::string location_;
};

enum class GoalBuilder {
  kQuota,
  kDiversity,
  kExchange,
  kBalanced,
  kDiversityExchange,
  kDiversityBalanced,
  kDistrictDiversity,
  kExplicit,
};

const char* goal_builder_name(GoalBuilder b);
std::optional<GoalBuilder> parse_goal_builder(std::string_view name);

// Builder parameters. Only the fields used by `builder` are meaningful; the
// parser fills every unspecified bound with its trivial value.
struct GoalSpec {
  GoalBuilder builder = GoalBuilder::kExplicit;
  QuotaParams quota;
  DiversityParams diversity;
  DistrictParams districts;
  // k_d given as "initial" rather than as numbers.
  bool districts_from_initial = false;
  DistrictDiversityParams district_diversity;
  // Sorted, deduplicated.
  std::vector<Distribution> members;
};

struct TabulatedEntry {
  Distribution distribution;
  Rational value;
};

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::kDiscrete;
  // Tabulated: entries sorted by distribution; `default_value` covers every
  // feasible distribution without an entry.
  std::vector<TabulatedEntry> entries;
  std::optional<Rational> default_value;
  // Chebyshev, discrete, Manhattan.
  std::optional<GoalSpec> goal;
};

struct InstanceDocument {
  Economy economy;
  PreferenceProfile preferences;
  ObjectiveSpec objective;
  std::optional<std::vector<int>> master_list;
};

// Throws InstanceError on the first problem found.
InstanceDocument parse_instance(std::string_view text);
InstanceDocument load_instance(const std::filesystem::path& path);

// Canonical form: fixed key order, two-space indentation, every bound
// spelled out, trailing newline.
std::string serialize_instance(const InstanceDocument& doc);

// {"<student>": "<school>" | "@none", ...} covering every student.
Matching parse_matching(const Economy& economy, std::string_view text);
Matching load_matching(const Economy& economy,
                       const std::filesystem::path& path);
std::string serialize_matching(const Economy& economy, const Matching& m);

PolicyGoal build_goal(const FeasibleSetPtr& space, const Economy& economy,
                      const GoalSpec& spec);

// Enumerates the feasible set (subject to `budget`) and builds the objective.
Objective build_objective(const InstanceDocument& doc,
                          std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace dttc

#endif  // DTTC_INSTANCE_HPP_
