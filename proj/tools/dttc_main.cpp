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

// dttc: batch front end for running and auditing TTC on school-choice
// instances.
//
// Exit codes: 0 ok / pass, 1 property failure, 2 invalid input, 3 internal
// invariant violation, 4 budget exceeded.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dttc/convexity.hpp"
#include "dttc/instance.hpp"
#include "dttc/trace_export.hpp"
#include "dttc/ttc.hpp"
#include "dttc/verify.hpp"

namespace {

using namespace dttc;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitBudget = 4;

struct Budgets {
  std::uint64_t enumeration = kDefaultEnumerationBudget;
  std::uint64_t runs = kDefaultMechanismRunBudget;
};

std::uint64_t budget_from_env(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(raw).size() || raw[0] == '-') {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must be a nonnegative integer");
  }
  return v;
}

Budgets read_budgets() {
  return {budget_from_env("DTTC_ENUMERATION_BUDGET", kDefaultEnumerationBudget),
          budget_from_env("DTTC_RUN_BUDGET", kDefaultMechanismRunBudget)};
}

std::string format_matching(const Economy& e, const Matching& m) {
  std::string out;
  for (int s = 0; s < e.num_students(); ++s) {
    if (s) out += ' ';
    out += e.student_ids()[s] + "=" + e.school_name(m[s]);
  }
  return out;
}

std::string format_options(const Economy& e, const std::vector<int>& options) {
  if (options.empty()) return "none";
  const OptionSpace space(e);
  std::string out;
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (i) out += ',';
    out += option_name(e, space.option(options[i]));
  }
  return out;
}

std::string format_cycle(const Economy& e, const TtcCycle& cycle) {
  const OptionSpace space(e);
  std::string out;
  for (std::size_t k = 0; k < cycle.students.size(); ++k) {
    out += e.student_ids()[cycle.students[k]] + "->" +
           option_name(e, space.option(cycle.options[k])) + "->";
  }
  return out + e.student_ids()[cycle.students.front()];
}

std::string format_point(const std::vector<int>& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out + ")";
}

// Coordinate names: (school,type) pairs, plus "unassigned" for lifted points.
std::string coordinate_name(const Economy& e, int index) {
  const int t = e.num_types();
  if (index >= e.num_schools() * t) return "unassigned";
  return option_name(e, Option{index / t, index % t});
}

void print_convexity(const Economy& e, const std::string& label,
                     const ConvexityResult& r) {
  std::cout << label << ": " << (r.holds ? "PASS" : "FAIL") << "\n";
  std::cout << "pairs_checked: " << r.pairs_checked << "\n";
  if (r.witness) {
    std::cout << "witness: xi=" << format_point(r.witness->xi)
              << " xi2=" << format_point(r.witness->xi2)
              << " pivot=" << coordinate_name(e, r.witness->pivot) << "\n";
  }
}

std::optional<std::vector<int>> parse_master_flag(const Economy& e,
                                                  const std::string& flag) {
  if (flag.empty()) return std::nullopt;
  std::vector<int> order;
  std::stringstream ss(flag);
  std::string id;
  while (std::getline(ss, id, ',')) {
    auto s = e.find_student(id);
    if (!s) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--master names unknown student '" + id + "'");
    }
    order.push_back(*s);
  }
  validate_master_list(e, order);
  return order;
}

PriorityRule parse_priority(const std::string& name) {
  if (name == "school") return PriorityRule::kInitialSchool;
  if (name == "pair") return PriorityRule::kInitialPair;
  throw Error(ErrorCode::kInvalidArgument,
              "--priority must be 'school' or 'pair'");
}

TtcOptions ttc_options(const InstanceDocument& doc, const std::string& priority,
                       const std::string& master) {
  TtcOptions opts;
  opts.priority_rule = parse_priority(priority);
  opts.master_list = doc.master_list;
  if (auto m = parse_master_flag(doc.economy, master)) opts.master_list = m;
  return opts;
}

void print_witness(const Economy& e, const Witness& w) {
  std::visit(
      [&](const auto& x) {
        using W = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<W, ObjectiveShortfall>) {
          std::cout << "witness: f_initial=" << x.initial_value.to_string()
                    << " f_outcome=" << x.value.to_string() << "\n";
        } else if constexpr (std::is_same_v<W, RationalityBreach>) {
          std::cout << "witness: student=" << e.student_ids()[x.student]
                    << " prefers initial school "
                    << e.school_name(e.initial_matching()[x.student]) << "\n";
        } else if constexpr (std::is_same_v<W, DominatingMatching>) {
          std::cout << "witness: dominating " << format_matching(e, x.matching)
                    << "\n";
        } else {
          std::string ranking;
          for (SchoolIndex c : x.misreport.ranking()) {
            ranking += (ranking.empty() ? "" : ",") + e.school_name(c);
          }
          std::cout << "witness: student=" << e.student_ids()[x.student]
                    << " misreport=" << ranking << "\n";
          std::cout << "witness_truthful: "
                    << format_matching(e, x.truthful_outcome) << "\n";
          std::cout << "witness_deviation: "
                    << format_matching(e, x.deviation_outcome) << "\n";
        }
      },
      w);
}

bool print_report(const Economy& e, const VerificationReport& r) {
  std::cout << property_name(r.property) << ": "
            << (r.passed ? "PASS" : "FAIL") << " search=" << r.search_size;
  if (r.seed) std::cout << " seed=" << *r.seed;
  std::cout << "\n";
  if (r.witness) print_witness(e, *r.witness);
  return r.passed;
}

int cmd_run(const std::string& path, const std::string& trace_dir,
            const std::string& priority, const std::string& master) {
  const Budgets budgets = read_budgets();
  const InstanceDocument doc = load_instance(path);
  const Economy& e = doc.economy;
  const Objective f = build_objective(doc, budgets.enumeration);
  const TtcResult r =
      run_ttc(e, f, doc.preferences, ttc_options(doc, priority, master));
  std::cout << "priority: " << priority << "\n";
  std::cout << "steps: " << r.trace.steps.size() << "\n";
  for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
    const TtcStep& step = r.trace.steps[i];
    std::cout << "step " << i + 1 << ": removed=" << format_options(e, step.removed)
              << " cycles=";
    for (std::size_t k = 0; k < step.cycles.size(); ++k) {
      std::cout << (k ? "; " : "") << format_cycle(e, step.cycles[k]);
    }
    std::cout << "\n";
  }
  std::cout << "outcome: " << format_matching(e, r.outcome) << "\n";
  std::cout << "f_initial: " << r.initial_value.to_string() << "\n";
  std::cout << "f_outcome: " << r.outcome_value.to_string() << "\n";
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  if (!trace_dir.empty()) {
    for (const auto& p : write_trace_dot(e, r.trace, trace_dir)) {
      std::cout << "trace: " << p.generic_string() << "\n";
    }
  }
  return kExitOk;
}

int cmd_verify(const std::string& path, const std::string& which,
               const std::string& matching_path, std::uint64_t sampled,
               std::uint64_t seed, const std::string& priority,
               const std::string& master) {
  const Budgets budgets = read_budgets();
  const InstanceDocument doc = load_instance(path);
  const Economy& e = doc.economy;
  const Objective f = build_objective(doc, budgets.enumeration);
  const TtcOptions opts = ttc_options(doc, priority, master);

  Matching mu;
  if (!matching_path.empty()) {
    mu = load_matching(e, matching_path);
    std::cout << "matching: " << format_matching(e, mu) << "\n";
  } else {
    mu = run_ttc(e, f, doc.preferences, opts).outcome;
    std::cout << "outcome: " << format_matching(e, mu) << "\n";
  }

  const bool all = which == "all";
  bool passed = true;
  if (all || which == "improve") {
    passed &= print_report(e, check_weak_improvement(e, f, mu));
  }
  if (all || which == "ir") {
    passed &= print_report(e, check_individual_rationality(e, doc.preferences, mu));
  }
  if (all || which == "efficient") {
    if (f(induced_distribution(e, mu)) < f(induced_distribution(e, e.initial_matching()))) {
      std::cout << "efficient: SKIP matching does not weakly improve the objective\n";
      passed = false;
    } else {
      passed &= print_report(e, is_constrained_efficient(e, f, doc.preferences, mu,
                                                         budgets.enumeration));
    }
  }
  if (all || which == "strategyproof") {
    const Mechanism mech = ttc_mechanism(e, f, opts);
    StrategyProofnessMode mode = ExhaustiveMode{};
    if (sampled > 0) mode = SampledMode{sampled, seed};
    passed &= print_report(
        e, verify_strategy_proofness(e, mech, doc.preferences, mode, budgets.runs));
  }
  return passed ? kExitOk : kExitFail;
}

int cmd_check(const std::string& path, const std::string& which, bool lifted) {
  const Budgets budgets = read_budgets();
  const InstanceDocument doc = load_instance(path);
  const Economy& e = doc.economy;
  const Objective f = build_objective(doc, budgets.enumeration);

  if (which == "pseudo-mnat" || which == "pseudo-m") {
    const ConvexityResult r = which == "pseudo-mnat" ? is_pseudo_mnat_concave(f)
                                                     : is_pseudo_m_concave(f);
    print_convexity(e, which, r);
    return r.holds ? kExitOk : kExitFail;
  }
  if (which == "contours") {
    const ContourCharacterization c = check_contour_characterization(f);
    for (const auto& contour : c.contours) {
      std::cout << "contour: lambda=" << contour.lambda.to_string()
                << " size=" << contour.size
                << " mnat=" << (contour.verdict.holds ? "PASS" : "FAIL") << "\n";
    }
    std::cout << "all_contours_mnat: "
              << (c.all_contours_mnat_convex ? "PASS" : "FAIL") << "\n";
    print_convexity(e, "pseudo-mnat", c.pseudo_mnat);
    std::cout << "agree: " << (c.agrees() ? "yes" : "no") << "\n";
    return c.agrees() ? kExitOk : kExitFail;
  }
  if (!f.goal()) {
    throw Error(ErrorCode::kInvalidArgument,
                "'" + which + "' checks a policy goal; the tabulated objective "
                "has none (use pseudo-mnat, pseudo-m or contours)");
  }
  const ExchangeKind kind =
      which == "mnat" ? ExchangeKind::kMNatural : ExchangeKind::kM;
  ConvexityResult r;
  if (lifted) {
    r = check_exchange(lift_add_unassigned(*f.goal(), e.num_students()), kind);
  } else {
    r = kind == ExchangeKind::kMNatural ? is_mnat_convex(*f.goal())
                                        : is_m_convex(*f.goal());
  }
  std::cout << "goal_size: " << f.goal()->size() << "\n";
  print_convexity(e, lifted ? which + " (lifted)" : which, r);
  return r.holds ? kExitOk : kExitFail;
}

int cmd_goal(const std::string& path, bool contains_initial) {
  const Budgets budgets = read_budgets();
  const InstanceDocument doc = load_instance(path);
  const Economy& e = doc.economy;
  const Objective f = build_objective(doc, budgets.enumeration);
  if (!f.goal()) {
    throw Error(ErrorCode::kInvalidArgument,
                "the tabulated objective has no policy goal");
  }
  const PolicyGoal& goal = *f.goal();
  std::cout << "feasible: " << goal.space()->size() << "\n";
  std::cout << "goal_size: " << goal.size() << "\n";
  const bool has_initial =
      goal.contains(induced_distribution(e, e.initial_matching()));
  std::cout << "contains_initial: " << (has_initial ? "yes" : "no") << "\n";
  for (std::size_t i = 0; i < goal.size(); ++i) {
    std::cout << "member: " << goal[i].to_string() << "\n";
  }
  return contains_initial && !has_initial ? kExitFail : kExitOk;
}

int cmd_format(const std::string& path) {
  std::cout << serialize_instance(load_instance(path));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top Trading Cycles under distributional objectives"};
  app.require_subcommand(1);

  std::string instance, trace_dir, priority = "school", master;
  std::string which, matching_path;
  std::uint64_t sampled = 0, seed = 0;
  bool lifted = false, contains_initial = false;

  auto add_mechanism_flags = [&](CLI::App* sub) {
    sub->add_option("--priority", priority,
                    "top priority class: 'school' (initial school) or 'pair' "
                    "(initial school-type pair)")
        ->check(CLI::IsMember({"school", "pair"}));
    sub->add_option("--master", master,
                    "comma-separated student ids overriding the master list");
  };

  auto* run = app.add_subcommand("run", "run TTC and print the outcome");
  run->add_option("instance", instance)->required();
  run->add_option("--trace", trace_dir, "write one DOT graph per step here");
  add_mechanism_flags(run);

  auto* verify = app.add_subcommand("verify", "check properties of the outcome");
  verify->add_option("instance", instance)->required();
  verify->add_option("property", which)
      ->required()
      ->check(CLI::IsMember({"improve", "ir", "efficient", "strategyproof", "all"}));
  verify->add_option("--matching", matching_path,
                     "verify this matching instead of the TTC outcome "
                     "(strategy-proofness always audits the mechanism)");
  verify->add_option("--sampled", sampled,
                     "sample this many misreports instead of trying all");
  verify->add_option("--seed", seed, "seed for --sampled");
  add_mechanism_flags(verify);

  auto* check = app.add_subcommand("check", "convexity of the goal or objective");
  check->add_option("instance", instance)->required();
  check->add_option("which", which)
      ->required()
      ->check(CLI::IsMember({"mnat", "m", "pseudo-mnat", "pseudo-m", "contours"}));
  check->add_flag("--lifted", lifted,
                  "for mnat/m: check the goal with an unassigned-count coordinate");

  auto* goal = app.add_subcommand("goal", "enumerate the policy goal");
  goal->add_option("instance", instance)->required();
  goal->add_flag("--require-initial", contains_initial,
                 "exit 1 unless the initial distribution is a member");

  auto* format = app.add_subcommand("format", "print the canonical instance");
  format->add_option("instance", instance)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*run) return cmd_run(instance, trace_dir, priority, master);
    if (*verify) {
      return cmd_verify(instance, which, matching_path, sampled, seed, priority,
                        master);
    }
    if (*check) return cmd_check(instance, which, lifted);
    if (*goal) return cmd_goal(instance, contains_initial);
    if (*format) return cmd_format(instance);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: budget-exceeded: " << e.what() << "\n";
    std::cerr << "required: " << e.required() << "\n";
    std::cerr << "budget: " << e.budget() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInternalInvariant) {
      std::cerr << "error: internal-invariant: " << e.what() << "\n";
      return kExitInternal;
    }
    std::cerr << "error: " << error_code_name(e.code()) << ": " << e.what()
              << "\n";
    return kExitInput;
  }
  return kExitInput;
}
