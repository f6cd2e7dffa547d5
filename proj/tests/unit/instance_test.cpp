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

#include "dttc/instance.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "../support/fixtures.hpp"
#include "dttc/distribution.hpp"
#include "json.hpp"

namespace dttc {
namespace {

using Json = nlohmann::ordered_json;
using dttc::testing::fixture_path;
using dttc::testing::load_fixture;

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json fixture_json(const std::string& name) {
  return Json::parse(read_file(fixture_path(name + ".json")));
}

struct Expected {
  Diagnostic code;
  std::string location;
};

Expected diagnose(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InstanceError& e) {
    const std::string what = e.what();
    EXPECT_EQ(what.rfind(e.location() + ": " + diagnostic_name(e.diagnostic()) + ": ", 0), 0u)
        << what;
    return {e.diagnostic(), e.location()};
  }
  ADD_FAILURE() << "parsed without error";
  return {Diagnostic::kIo, ""};
}

Expected diagnose_edit(const std::string& fixture, const std::function<void(Json&)>& edit) {
  Json j = fixture_json(fixture);
  edit(j);
  return diagnose(j.dump());
}

#define EXPECT_DIAGNOSTIC(result, expected_code, expected_location) \
  do {                                                              \
    const Expected r_ = (result);                                   \
    EXPECT_EQ(r_.code, expected_code);                              \
    EXPECT_EQ(r_.location, expected_location);                      \
  } while (0)

TEST(InstanceParseTest, FixturesLoad) {
  for (const char* name : {"appendix_a", "example_1", "appendix_b", "all_prefer_home",
                           "quota_school"}) {
    SCOPED_TRACE(name);
    const auto doc = load_fixture(name);
    EXPECT_EQ(doc.preferences.size(), static_cast<std::size_t>(doc.economy.num_students()));
    EXPECT_NO_THROW(build_objective(doc));
  }
  const auto doc = load_fixture("quota_school");
  EXPECT_EQ(doc.economy.num_schools(), 3);
  EXPECT_EQ(doc.economy.initial_matching()[4], kUnassigned);
  ASSERT_TRUE(doc.master_list);
  EXPECT_EQ(*doc.master_list, (std::vector<int>{4, 3, 2, 1, 0}));
  EXPECT_EQ(doc.objective.kind, ObjectiveKind::kChebyshev);
  ASSERT_TRUE(doc.objective.goal);
  EXPECT_EQ(doc.objective.goal->quota.ceilings, (std::vector<int>{2, 1, 1}));
}

TEST(InstanceParseTest, CanonicalRoundTrip) {
  for (const char* name : {"appendix_a", "example_1", "appendix_b", "all_prefer_home",
                           "quota_school"}) {
    SCOPED_TRACE(name);
    const auto doc = load_fixture(name);
    const std::string once = serialize_instance(doc);
    const auto again = parse_instance(once);
    EXPECT_EQ(serialize_instance(again), once);
    EXPECT_EQ(again.economy, doc.economy);
    EXPECT_EQ(again.preferences, doc.preferences);
    const Objective f = build_objective(doc);
    const Objective g = build_objective(again);
    for (std::size_t r = 0; r < f.space()->size(); ++r) ASSERT_EQ(f.at_rank(r), g.at_rank(r));
  }
}

TEST(InstanceParseTest, TabulatedWithDefault) {
  Json j = fixture_json("quota_school");
  j["objective"] = Json::parse(R"({"variant": "tabulated",
      "entries": [{"distribution": [[1, 1], [1, 0], [0, 1]], "value": "3/2"}],
      "default": -1})");
  const auto doc = parse_instance(j.dump());
  const Objective f = build_objective(doc);
  const Distribution xi0 = induced_distribution(doc.economy, doc.economy.initial_matching());
  EXPECT_EQ(f(xi0), ExtendedRational(Rational(3, 2)));
  EXPECT_EQ(f(Distribution(3, 2)), ExtendedRational(Rational(-1)));

  // Without a default every feasible distribution needs an entry.
  j["objective"].erase("default");
  EXPECT_THROW(build_objective(parse_instance(j.dump())), Error);
  EXPECT_EQ(serialize_instance(parse_instance(serialize_instance(doc))),
            serialize_instance(doc));
}

TEST(InstanceParseTest, MatchingRoundTrip) {
  const auto doc = load_fixture("example_1");
  const Matching mu = load_matching(doc.economy, fixture_path("example_1_mu.json"));
  EXPECT_EQ(mu.assignment, (std::vector<int>{5, 1, 3, 2, 4, 0}));
  EXPECT_EQ(parse_matching(doc.economy, serialize_matching(doc.economy, mu)), mu);
  EXPECT_THROW(parse_matching(doc.economy, R"({"s1": "c1"})"), InstanceError);
  EXPECT_THROW(parse_matching(doc.economy,
                              R"({"s1":"c1","s2":"c1","s3":"c3","s4":"c4","s5":"c5","s6":"c6"})"),
               InstanceError);
}

TEST(InstanceDiagnosticsTest, Io) {
  try {
    load_instance(fixture_path("does_not_exist.json"));
    FAIL();
  } catch (const InstanceError& e) {
    EXPECT_EQ(e.diagnostic(), Diagnostic::kIo);
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

TEST(InstanceDiagnosticsTest, Syntax) {
  const std::string text = read_file(fixture_path("quota_school.json"));
  const auto r = diagnose(text.substr(0, text.size() / 2));
  EXPECT_EQ(r.code, Diagnostic::kSyntax);
  EXPECT_EQ(r.location.rfind("line ", 0), 0u) << r.location;
}

TEST(InstanceDiagnosticsTest, StructuralProblems) {
  EXPECT_DIAGNOSTIC(diagnose_edit("quota_school", [](Json& j) { j.erase("preferences"); }),
                    Diagnostic::kMissingField, "/preferences");
  EXPECT_DIAGNOSTIC(diagnose_edit("quota_school", [](Json& j) { j["extra"] = 1; }),
                    Diagnostic::kUnknownField, "/extra");
  EXPECT_DIAGNOSTIC(
      diagnose_edit("quota_school",
                    [](Json& j) { j["economy"]["schools"][0]["capacity"] = true; }),
      Diagnostic::kWrongType, "/economy/schools/0/capacity");
  EXPECT_DIAGNOSTIC(
      diagnose_edit("quota_school",
                    [](Json& j) { j["economy"]["schools"][0]["capacity"] = 1.5; }),
      Diagnostic::kMalformedNumber, "/economy/schools/0/capacity");
  EXPECT_DIAGNOSTIC(
      diagnose_edit("quota_school",
                    [](Json& j) { j["economy"]["schools"][0]["capacity"] = -1; }),
      Diagnostic::kInvalidValue, "/economy/schools/0/capacity");
  EXPECT_DIAGNOSTIC(
      diagnose_edit("quota_school", [](Json& j) { j["economy"]["schools"][1]["id"] = "c1"; }),
      Diagnostic::kDuplicateId, "/economy/schools/1/id");
}

TEST(InstanceDiagnosticsTest, UnknownReferences) {
  EXPECT_DIAGNOSTIC(diagnose_edit("quota_school",
                                  [](Json& j) { j["economy"]["initial_matching"]["s1"] = "c9"; }),
                    Diagnostic::kUnknownSchool, "/economy/initial_matching/s1");
  EXPECT_DIAGNOSTIC(diagnose_edit("quota_school",
                                  [](Json& j) { j["economy"]["initial_matching"]["s9"] = "c1"; }),
                    Diagnostic::kUnknownStudent, "/economy/initial_matching/s9");
  EXPECT_DIAGNOSTIC(
      diagnose_edit("quota_school", [](Json& j) { j["economy"]["students"][0]["type"] = "t9"; }),
      Diagnostic::kUnknownType, "/economy/students/0/type");
  EXPECT_DIAGNOSTIC(diagnose_edit("example_1",
                                  [](Json& j) {
                                    auto& floors = j["objective"]["goal"]["floors"];
                                    floors["d9"] = floors["d1"];
                                  }),
                    Diagnostic::kUnknownDistrict, "/objective/goal/floors/d9");
}

TEST(InstanceDiagnosticsTest, Rankings) {
  EXPECT_DIAGNOSTIC(
      diagnose_edit("quota_school",
                    [](Json& j) { j["preferences"]["s1"] = {"c2", "c2", "c3", "@none"}; }),
      Diagnostic::kDuplicateRanking, "/preferences/s1/1");
  EXPECT_DIAGNOSTIC(diagnose_edit("quota_school",
                                  [](Json& j) { j["preferences"]["s1"] = {"c2", "c1", "@none"}; }),
                    Diagnostic::kIncompleteRanking, "/preferences/s1");
  EXPECT_DIAGNOSTIC(diagnose_edit("quota_school",
                                  [](Json& j) { j["economy"]["initial_matching"]["s3"] = "c3"; }),
                    Diagnostic::kCapacityViolation, "/economy/initial_matching/s4");
}

TEST(InstanceDiagnosticsTest, Objectives) {
  EXPECT_DIAGNOSTIC(diagnose_edit("quota_school",
                                  [](Json& j) { j["objective"]["variant"] = "euclid"; }),
                    Diagnostic::kUnknownVariant, "/objective/variant");
  EXPECT_DIAGNOSTIC(diagnose_edit("quota_school",
                                  [](Json& j) {
                                    j["objective"] = Json::parse(R"({"variant": "tabulated",
                                        "entries": [{"distribution": [[1, 1]], "value": 1}]})");
                                  }),
                    Diagnostic::kShapeMismatch, "/objective/entries/0/distribution");
  EXPECT_DIAGNOSTIC(diagnose_edit("quota_school",
                                  [](Json& j) {
                                    j["objective"] = Json::parse(R"({"variant": "tabulated",
                                        "entries": [
                                          {"distribution": [[1, 0], [0, 0], [0, 0]], "value": 1},
                                          {"distribution": [[1, 0], [0, 0], [0, 0]], "value": 2}]})");
                                  }),
                    Diagnostic::kDuplicateEntry, "/objective/entries/1/distribution");
  EXPECT_DIAGNOSTIC(diagnose_edit("quota_school",
                                  [](Json& j) {
                                    j["objective"] = Json::parse(R"({"variant": "tabulated",
                                        "entries": [{"distribution": [[1, 0], [0, 0], [0, 0]],
                                                     "value": "1/x"}]})");
                                  }),
                    Diagnostic::kMalformedNumber, "/objective/entries/0/value");
}

TEST(InstanceDiagnosticsTest, NamesAreStable) {
  EXPECT_STREQ(diagnostic_name(Diagnostic::kUnknownSchool), "unknown-school");
  EXPECT_STREQ(diagnostic_name(Diagnostic::kIncompleteRanking), "incomplete-ranking");
  for (GoalBuilder b : {GoalBuilder::kQuota, GoalBuilder::kDiversity, GoalBuilder::kExchange,
                        GoalBuilder::kBalanced, GoalBuilder::kDiversityExchange,
                        GoalBuilder::kDiversityBalanced, GoalBuilder::kDistrictDiversity,
                        GoalBuilder::kExplicit}) {
    EXPECT_EQ(parse_goal_builder(goal_builder_name(b)), b);
  }
  EXPECT_FALSE(parse_goal_builder("nope"));
}

}  // namespace
}  // namespace dttc
