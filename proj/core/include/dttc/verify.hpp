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

// Brute-force oracles for the mechanism's guarantees. Everything here
// enumerates its whole search space and is meant for desk-scale instances.

#ifndef DTTC_VERIFY_HPP_
#define DTTC_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "dttc/economy.hpp"
#include "dttc/objectives.hpp"
#include "dttc/ttc.hpp"

namespace dttc {

// (|C| + 1)^|S|, saturating.
std::uint64_t assignment_count(const Economy& economy);

// Calls `visit` for every capacity-respecting matching in lexicographic order
// of the assignment vector (unassigned before school 0). Stops early when
// `visit` returns false. Throws BudgetExceeded when assignment_count exceeds
// `budget`. Returns the number of matchings visited.
std::uint64_t for_each_matching(
    const Economy& economy, const std::function<bool(const Matching&)>& visit,
    std::uint64_t budget = kDefaultEnumerationBudget);

std::vector<Matching> enumerate_matchings(
    const Economy& economy, std::uint64_t budget = kDefaultEnumerationBudget);

enum class Property {
  kWeakImprovement,
  kIndividualRationality,
  kConstrainedEfficiency,
  kStrategyProofness,
};

const char* property_name(Property p);

// Witness shapes, one per property.
struct ObjectiveShortfall {
  ExtendedRational initial_value;
  ExtendedRational value;
};
struct RationalityBreach {
  int student;
};
struct DominatingMatching {
  Matching matching;
};
struct ProfitableMisreport {
  int student;
  Preference misreport;
  Matching truthful_outcome;
  Matching deviation_outcome;
};

using Witness = std::variant<ObjectiveShortfall, RationalityBreach,
                             DominatingMatching, ProfitableMisreport>;

struct VerificationReport {
  Property property;
  bool passed = true;
  std::optional<Witness> witness;
  std::uint64_t search_size = 0;
  // Set for sampled strategy-proofness checks.
  std::optional<std::uint64_t> seed;

  explicit operator bool() const { return passed; }
};

VerificationReport check_weak_improvement(const Economy& economy,
                                          const Objective& f,
                                          const Matching& mu);

VerificationReport check_individual_rationality(const Economy& economy,
                                                const PreferenceProfile& prefs,
                                                const Matching& mu);

// Fails with the first (lexicographic) matching that weakly improves f and
// Pareto-dominates `mu`. Throws Error(kPrecondition) when `mu` itself does not
// weakly improve f.
VerificationReport is_constrained_efficient(
    const Economy& economy, const Objective& f, const PreferenceProfile& prefs,
    const Matching& mu, std::uint64_t budget = kDefaultEnumerationBudget);

// Matchings that weakly improve f, are individually rational and are
// constrained efficient; lexicographic order.
std::vector<Matching> enumerate_constrained_efficient_ir(
    const Economy& economy, const Objective& f, const PreferenceProfile& prefs,
    std::uint64_t budget = kDefaultEnumerationBudget);

// Maps a full preference profile to a matching.
using Mechanism = std::function<Matching(const PreferenceProfile&)>;

Mechanism ttc_mechanism(const Economy& economy, const Objective& f,
                        TtcOptions options = {});

struct ExhaustiveMode {};
struct SampledMode {
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
};
using StrategyProofnessMode = std::variant<ExhaustiveMode, SampledMode>;

// (|C| + 1)! · |S|, saturating.
std::uint64_t exhaustive_misreport_count(const Economy& economy);

// Exhaustive mode tries every ranking for every student (students in order,
// rankings in lexicographic order with the outside option first) and reports
// the first profitable one. Sampled mode draws `samples` (student, ranking)
// pairs from a seeded generator. Throws BudgetExceeded when exhaustive mode
// needs more than `run_budget` mechanism runs.
VerificationReport verify_strategy_proofness(
    const Economy& economy, const Mechanism& mechanism,
    const PreferenceProfile& prefs, const StrategyProofnessMode& mode,
    std::uint64_t run_budget = kDefaultMechanismRunBudget);

// Replays a failing report through the defining predicate.
bool confirms_failure(const Economy& economy, const Objective& f,
                      const PreferenceProfile& prefs, const Matching& mu,
                      const VerificationReport& report,
                      const Mechanism* mechanism = nullptr);

}  // namespace dttc

#endif  // DTTC_VERIFY_HPP_
