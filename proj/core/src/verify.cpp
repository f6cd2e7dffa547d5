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

#include "dttc/verify.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "parallel.hpp"

namespace dttc {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

ExtendedRational initial_value(const Economy& economy, const Objective& f) {
  return f(induced_distribution(economy, economy.initial_matching()));
}

VerificationReport make_report(Property property) {
  VerificationReport report;
  report.property = property;
  return report;
}

std::vector<SchoolIndex> sorted_entries(int num_schools) {
  std::vector<SchoolIndex> entries(num_schools + 1);
  std::iota(entries.begin(), entries.end(), kUnassigned);
  return entries;
}

}  // namespace

std::uint64_t assignment_count(const Economy& economy) {
  std::uint64_t total = 1;
  for (int s = 0; s < economy.num_students(); ++s) {
    total = saturating_mul(total, economy.num_schools() + 1);
  }
  return total;
}

std::uint64_t for_each_matching(
    const Economy& economy, const std::function<bool(const Matching&)>& visit,
    std::uint64_t budget) {
  const std::uint64_t bound = assignment_count(economy);
  if (bound > budget) {
    throw BudgetExceeded("matching enumeration needs up to " +
                             std::to_string(bound) +
                             " assignments, enumeration budget is " +
                             std::to_string(budget),
                         bound, budget);
  }
  const int num_students = economy.num_students();
  Matching m;
  m.assignment.assign(num_students, kUnassigned);
  std::vector<int> load(economy.num_schools(), 0);
  std::uint64_t visited = 0;
  bool stopped = false;
  auto rec = [&](auto&& self, int s) -> void {
    if (stopped) return;
    if (s == num_students) {
      ++visited;
      if (!visit(m)) stopped = true;
      return;
    }
    for (SchoolIndex c = kUnassigned; c < economy.num_schools() && !stopped; ++c) {
      if (c != kUnassigned && load[c] == economy.capacity(c)) continue;
      m.assignment[s] = c;
      if (c != kUnassigned) ++load[c];
      self(self, s + 1);
      if (c != kUnassigned) --load[c];
    }
    m.assignment[s] = kUnassigned;
  };
  rec(rec, 0);
  return visited;
}

std::vector<Matching> enumerate_matchings(const Economy& economy,
                                          std::uint64_t budget) {
  std::vector<Matching> out;
  for_each_matching(
      economy,
      [&](const Matching& m) {
        out.push_back(m);
        return true;
      },
      budget);
  return out;
}

const char* property_name(Property p) {
  switch (p) {
    case Property::kWeakImprovement: return "improve";
    case Property::kIndividualRationality: return "ir";
    case Property::kConstrainedEfficiency: return "efficient";
    case Property::kStrategyProofness: return "strategyproof";
  }
  return "unknown";
}

VerificationReport check_weak_improvement(const Economy& economy,
                                          const Objective& f,
                                          const Matching& mu) {
  validate_matching(economy, mu);
  VerificationReport report = make_report(Property::kWeakImprovement);
  report.search_size = 1;
  const ExtendedRational before = initial_value(economy, f);
  const ExtendedRational after = f(induced_distribution(economy, mu));
  if (after < before) {
    report.passed = false;
    report.witness = ObjectiveShortfall{before, after};
  }
  return report;
}

VerificationReport check_individual_rationality(const Economy& economy,
                                                const PreferenceProfile& prefs,
                                                const Matching& mu) {
  validate_matching(economy, mu);
  VerificationReport report = make_report(Property::kIndividualRationality);
  const Matching& home = economy.initial_matching();
  for (int s = 0; s < economy.num_students(); ++s) {
    ++report.search_size;
    if (!prefs[s].weakly_prefers(mu[s], home[s])) {
      report.passed = false;
      report.witness = RationalityBreach{s};
      break;
    }
  }
  return report;
}

VerificationReport is_constrained_efficient(const Economy& economy,
                                            const Objective& f,
                                            const PreferenceProfile& prefs,
                                            const Matching& mu,
                                            std::uint64_t budget) {
  validate_matching(economy, mu);
  const ExtendedRational floor = initial_value(economy, f);
  if (f(induced_distribution(economy, mu)) < floor) {
    throw Error(ErrorCode::kPrecondition,
                "constrained efficiency applies only to matchings that weakly "
                "improve the objective");
  }
  VerificationReport report = make_report(Property::kConstrainedEfficiency);
  report.search_size = for_each_matching(
      economy,
      [&](const Matching& nu) {
        if (!pareto_dominates(prefs, nu, mu)) return true;
        if (f(induced_distribution(economy, nu)) < floor) return true;
        report.passed = false;
        report.witness = DominatingMatching{nu};
        return false;
      },
      budget);
  return report;
}

std::vector<Matching> enumerate_constrained_efficient_ir(
    const Economy& economy, const Objective& f, const PreferenceProfile& prefs,
    std::uint64_t budget) {
  const ExtendedRational floor = initial_value(economy, f);
  std::vector<Matching> improving;
  for_each_matching(
      economy,
      [&](const Matching& m) {
        if (f(induced_distribution(economy, m)) >= floor) improving.push_back(m);
        return true;
      },
      budget);
  std::vector<Matching> out;
  for (const auto& mu : improving) {
    if (!is_individually_rational(economy, prefs, mu)) continue;
    const bool dominated =
        std::any_of(improving.begin(), improving.end(), [&](const Matching& nu) {
          return pareto_dominates(prefs, nu, mu);
        });
    if (!dominated) out.push_back(mu);
  }
  return out;
}

Mechanism ttc_mechanism(const Economy& economy, const Objective& f,
                        TtcOptions options) {
  return [&economy, &f, options = std::move(options)](
             const PreferenceProfile& prefs) {
    TtcOptions quiet = options;
    quiet.check_objective_floor = false;
    return run_ttc(economy, f, prefs, quiet).outcome;
  };
}

std::uint64_t exhaustive_misreport_count(const Economy& economy) {
  std::uint64_t perms = 1;
  for (int k = 2; k <= economy.num_schools() + 1; ++k) {
    perms = saturating_mul(perms, k);
  }
  return saturating_mul(perms, economy.num_students());
}

VerificationReport verify_strategy_proofness(const Economy& economy,
                                             const Mechanism& mechanism,
                                             const PreferenceProfile& prefs,
                                             const StrategyProofnessMode& mode,
                                             std::uint64_t run_budget) {
  const int num_schools = economy.num_schools();
  const int num_students = economy.num_students();
  VerificationReport report = make_report(Property::kStrategyProofness);
  const Matching truthful = mechanism(prefs);

  auto try_report = [&](int s, const std::vector<SchoolIndex>& ranking,
                        PreferenceProfile& scratch)
      -> std::optional<ProfitableMisreport> {
    Preference misreport(num_schools, ranking);
    scratch[s] = misreport;
    Matching outcome = mechanism(scratch);
    scratch[s] = prefs[s];
    if (prefs[s].prefers(outcome[s], truthful[s])) {
      return ProfitableMisreport{s, std::move(misreport), truthful,
                                 std::move(outcome)};
    }
    return std::nullopt;
  };

  if (const auto* sampled = std::get_if<SampledMode>(&mode)) {
    report.seed = sampled->seed;
    if (num_students == 0) return report;
    std::mt19937_64 rng(sampled->seed);
    std::uniform_int_distribution<int> pick(0, num_students - 1);
    PreferenceProfile scratch = prefs;
    std::vector<SchoolIndex> ranking = sorted_entries(num_schools);
    for (std::uint64_t i = 0; i < sampled->samples; ++i) {
      const int s = pick(rng);
      std::shuffle(ranking.begin(), ranking.end(), rng);
      ++report.search_size;
      if (auto hit = try_report(s, ranking, scratch)) {
        report.passed = false;
        report.witness = std::move(*hit);
        break;
      }
    }
    return report;
  }

  const std::uint64_t runs = exhaustive_misreport_count(economy);
  if (runs > run_budget) {
    throw BudgetExceeded("exhaustive strategy-proofness check needs " +
                             std::to_string(runs) +
                             " mechanism runs, run budget is " +
                             std::to_string(run_budget) +
                             "; use sampled mode instead",
                         runs, run_budget);
  }
  const std::uint64_t per_student = num_students ? runs / num_students : 0;

  struct Hit {
    ProfitableMisreport misreport;
    std::uint64_t position;
  };
  auto hit = internal::first_hit<Hit>(
      static_cast<std::size_t>(num_students), per_student * 64,
      [&](std::size_t begin, std::size_t end, auto stop) -> std::optional<Hit> {
        PreferenceProfile scratch = prefs;
        for (std::size_t s = begin; s < end; ++s) {
          if (stop(begin)) return std::nullopt;
          std::vector<SchoolIndex> ranking = sorted_entries(num_schools);
          std::uint64_t k = 0;
          do {
            ++k;
            if (auto found = try_report(static_cast<int>(s), ranking, scratch)) {
              return Hit{std::move(*found), s * per_student + k};
            }
          } while (std::next_permutation(ranking.begin(), ranking.end()));
        }
        return std::nullopt;
      });
  if (hit) {
    report.passed = false;
    report.search_size = hit->position;
    report.witness = std::move(hit->misreport);
  } else {
    report.search_size = runs;
  }
  return report;
}

bool confirms_failure(const Economy& economy, const Objective& f,
                      const PreferenceProfile& prefs, const Matching& mu,
                      const VerificationReport& report,
                      const Mechanism* mechanism) {
  if (report.passed || !report.witness) return false;
  const ExtendedRational floor = initial_value(economy, f);
  return std::visit(
      [&](const auto& w) -> bool {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, ObjectiveShortfall>) {
          return f(induced_distribution(economy, mu)) < floor;
        } else if constexpr (std::is_same_v<W, RationalityBreach>) {
          return !prefs[w.student].weakly_prefers(
              mu[w.student], economy.initial_matching()[w.student]);
        } else if constexpr (std::is_same_v<W, DominatingMatching>) {
          try {
            validate_matching(economy, w.matching);
          } catch (const Error&) {
            return false;
          }
          return pareto_dominates(prefs, w.matching, mu) &&
                 f(induced_distribution(economy, w.matching)) >= floor;
        } else {
          Matching truthful = w.truthful_outcome;
          Matching deviation = w.deviation_outcome;
          if (mechanism) {
            truthful = (*mechanism)(prefs);
            PreferenceProfile changed = prefs;
            changed[w.student] = w.misreport;
            deviation = (*mechanism)(changed);
          }
          return prefs[w.student].prefers(deviation[w.student],
                                          truthful[w.student]);
        }
      },
      *report.witness);
}

}  // namespace dttc
