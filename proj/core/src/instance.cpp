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

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dttc {

namespace {

using Json = nlohmann::ordered_json;

// JSON pointer with escaping of '~' and '/'.
std::string child(const std::string& path, std::string_view key) {
  std::string out = path + "/";
  for (char ch : key) {
    if (ch == '~') {
      out += "~0";
    } else if (ch == '/') {
      out += "~1";
    } else {
      out += ch;
    }
  }
  return out;
}

std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

[[noreturn]] void fail(Diagnostic d, const std::string& path,
                       const std::string& message) {
  throw InstanceError(d, path.empty() ? "/" : path, message);
}

const char* json_kind(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return "null";
    case Json::value_t::object: return "object";
    case Json::value_t::array: return "array";
    case Json::value_t::string: return "string";
    case Json::value_t::boolean: return "boolean";
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned: return "integer";
    case Json::value_t::number_float: return "number";
    default: return "value";
  }
}

void expect(bool ok, const Json& j, const std::string& path,
            const char* wanted) {
  if (!ok) {
    fail(Diagnostic::kWrongType, path,
         std::string("expected ") + wanted + ", found " + json_kind(j));
  }
}

const Json& object_at(const Json& j, const std::string& path) {
  expect(j.is_object(), j, path, "object");
  return j;
}

const Json& array_at(const Json& j, const std::string& path) {
  expect(j.is_array(), j, path, "array");
  return j;
}

std::string string_at(const Json& j, const std::string& path) {
  expect(j.is_string(), j, path, "string");
  return j.get<std::string>();
}

int int_at(const Json& j, const std::string& path) {
  if (j.is_number_float()) {
    fail(Diagnostic::kMalformedNumber, path,
         "expected an integer, found " + j.dump());
  }
  if (j.is_string()) {
    fail(Diagnostic::kMalformedNumber, path,
         "expected an integer, found the string " + j.dump());
  }
  expect(j.is_number_integer(), j, path, "integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    fail(Diagnostic::kMalformedNumber, path, "integer out of range");
  }
  return static_cast<int>(v);
}

int nonnegative_at(const Json& j, const std::string& path) {
  const int v = int_at(j, path);
  if (v < 0) fail(Diagnostic::kInvalidValue, path, "must be nonnegative");
  return v;
}

Rational rational_at(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) {
    fail(Diagnostic::kMalformedNumber, path,
         "binary floating point is not exact; write the value as a string "
         "such as \"1/3\" or \"0.25\"");
  }
  expect(j.is_string(), j, path, "rational string or integer");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(Diagnostic::kMalformedNumber, path, e.what());
  }
}

const Json& required(const Json& obj, const std::string& path,
                     const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(Diagnostic::kMissingField, child(path, key),
         std::string("missing field '") + key + "'");
  }
  return *it;
}

const Json* optional_field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void only_keys(const Json& obj, const std::string& path,
               std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) {
      fail(Diagnostic::kUnknownField, child(path, key),
           "unknown field '" + key + "'");
    }
  }
}

void check_id(const std::string& id, const std::string& path) {
  if (id.empty()) fail(Diagnostic::kInvalidValue, path, "empty id");
  if (id == kOutsideToken) {
    fail(Diagnostic::kInvalidValue, path,
         "'" + std::string(kOutsideToken) + "' is reserved for the outside option");
  }
}

// Id lookups against a parsed economy skeleton.
struct Names {
  std::vector<std::string> schools;
  std::vector<std::string> types;
  std::vector<std::string> students;
  std::vector<std::string> districts;

  static std::optional<int> find(const std::vector<std::string>& ids,
                                 std::string_view id) {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) return std::nullopt;
    return static_cast<int>(it - ids.begin());
  }

  SchoolIndex school(const std::string& id, const std::string& path,
                     bool allow_outside) const {
    if (allow_outside && id == kOutsideToken) return kUnassigned;
    if (auto c = find(schools, id)) return *c;
    fail(Diagnostic::kUnknownSchool, path, "unknown school '" + id + "'");
  }
  int type(const std::string& id, const std::string& path) const {
    if (auto t = find(types, id)) return *t;
    fail(Diagnostic::kUnknownType, path, "unknown type '" + id + "'");
  }
  int student(const std::string& id, const std::string& path) const {
    if (auto s = find(students, id)) return *s;
    fail(Diagnostic::kUnknownStudent, path, "unknown student '" + id + "'");
  }
  int district(const std::string& id, const std::string& path) const {
    if (auto d = find(districts, id)) return *d;
    fail(Diagnostic::kUnknownDistrict, path, "unknown district '" + id + "'");
  }
};

Names names_of(const Economy& e) {
  return Names{e.school_ids(), e.type_ids(), e.student_ids(), e.district_ids()};
}

Economy parse_economy(const Json& root, const std::string& path) {
  object_at(root, path);
  only_keys(root, path, {"schools", "types", "students", "initial_matching"});

  Names names;
  std::vector<SchoolSpec> schools;
  std::vector<int> capacities;
  const std::string schools_path = child(path, "schools");
  const Json& js = array_at(required(root, path, "schools"), schools_path);
  int with_district = 0;
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string p = child(schools_path, i);
    object_at(js[i], p);
    only_keys(js[i], p, {"id", "capacity", "district"});
    SchoolSpec spec;
    spec.id = string_at(required(js[i], p, "id"), child(p, "id"));
    check_id(spec.id, child(p, "id"));
    if (Names::find(names.schools, spec.id)) {
      fail(Diagnostic::kDuplicateId, child(p, "id"),
           "duplicate school id '" + spec.id + "'");
    }
    spec.capacity =
        nonnegative_at(required(js[i], p, "capacity"), child(p, "capacity"));
    if (const Json* d = optional_field(js[i], "district")) {
      spec.district = string_at(*d, child(p, "district"));
      check_id(*spec.district, child(p, "district"));
      ++with_district;
    }
    names.schools.push_back(spec.id);
    capacities.push_back(spec.capacity);
    schools.push_back(std::move(spec));
  }
  if (with_district != 0 && with_district != static_cast<int>(schools.size())) {
    fail(Diagnostic::kInvalidValue, schools_path,
         "either every school names a district or none does");
  }

  const std::string types_path = child(path, "types");
  const Json& jt = array_at(required(root, path, "types"), types_path);
  for (std::size_t i = 0; i < jt.size(); ++i) {
    std::string id = string_at(jt[i], child(types_path, i));
    check_id(id, child(types_path, i));
    if (Names::find(names.types, id)) {
      fail(Diagnostic::kDuplicateId, child(types_path, i),
           "duplicate type id '" + id + "'");
    }
    names.types.push_back(std::move(id));
  }

  std::vector<StudentSpec> students;
  const std::string students_path = child(path, "students");
  const Json& jst = array_at(required(root, path, "students"), students_path);
  for (std::size_t i = 0; i < jst.size(); ++i) {
    const std::string p = child(students_path, i);
    object_at(jst[i], p);
    only_keys(jst[i], p, {"id", "type"});
    StudentSpec spec;
    spec.id = string_at(required(jst[i], p, "id"), child(p, "id"));
    check_id(spec.id, child(p, "id"));
    if (Names::find(names.students, spec.id)) {
      fail(Diagnostic::kDuplicateId, child(p, "id"),
           "duplicate student id '" + spec.id + "'");
    }
    spec.type = string_at(required(jst[i], p, "type"), child(p, "type"));
    names.type(spec.type, child(p, "type"));
    names.students.push_back(spec.id);
    students.push_back(std::move(spec));
  }

  // Students missing from the initial matching start unmatched.
  std::vector<int> load(schools.size(), 0);
  if (const Json* jm = optional_field(root, "initial_matching")) {
    const std::string mp = child(path, "initial_matching");
    object_at(*jm, mp);
    for (const auto& [sid, jc] : jm->items()) {
      const std::string p = child(mp, sid);
      const int s = names.student(sid, p);
      const SchoolIndex c = names.school(string_at(jc, p), p, true);
      if (c == kUnassigned) continue;
      students[s].initial_school = schools[c].id;
      if (++load[c] > capacities[c]) {
        fail(Diagnostic::kCapacityViolation, p,
             "initial matching places " + std::to_string(load[c]) +
                 " students at school '" + schools[c].id + "' of capacity " +
                 std::to_string(capacities[c]));
      }
    }
  }

  try {
    return Economy(std::move(schools), names.types, std::move(students));
  } catch (const Error& e) {
    fail(Diagnostic::kInvalidValue, path, e.what());
  }
}

PreferenceProfile parse_preferences(const Json& root, const std::string& path,
                                    const Economy& economy) {
  const Names names = names_of(economy);
  object_at(root, path);
  for (const auto& [sid, _] : root.items()) names.student(sid, child(path, sid));
  PreferenceProfile prefs;
  for (int s = 0; s < economy.num_students(); ++s) {
    const std::string& sid = economy.student_ids()[s];
    const std::string p = child(path, sid);
    auto it = root.find(sid);
    if (it == root.end()) {
      fail(Diagnostic::kMissingField, p,
           "no preference for student '" + sid + "'");
    }
    array_at(*it, p);
    std::vector<SchoolIndex> ranking;
    std::vector<bool> seen(economy.num_schools() + 1, false);
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string ep = child(p, i);
      const SchoolIndex c = names.school(string_at((*it)[i], ep), ep, true);
      if (seen[c + 1]) {
        fail(Diagnostic::kDuplicateRanking, ep,
             "'" + economy.school_name(c) + "' ranked twice");
      }
      seen[c + 1] = true;
      ranking.push_back(c);
    }
    if (static_cast<int>(ranking.size()) != economy.num_schools() + 1) {
      auto missing = std::find(seen.begin(), seen.end(), false);
      fail(Diagnostic::kIncompleteRanking, p,
           "ranking omits '" +
               economy.school_name(static_cast<int>(missing - seen.begin()) - 1) +
               "'; list every school and '" + std::string(kOutsideToken) + "'");
    }
    prefs.emplace_back(economy.num_schools(), std::move(ranking));
  }
  return prefs;
}

Distribution grid_at(const Json& j, const std::string& path,
                     const Economy& economy) {
  array_at(j, path);
  if (static_cast<int>(j.size()) != economy.num_schools()) {
    fail(Diagnostic::kShapeMismatch, path,
         "expected " + std::to_string(economy.num_schools()) +
             " rows (one per school), found " + std::to_string(j.size()));
  }
  Distribution xi(economy.num_schools(), economy.num_types());
  for (SchoolIndex c = 0; c < economy.num_schools(); ++c) {
    const std::string rp = child(path, static_cast<std::size_t>(c));
    array_at(j[c], rp);
    if (static_cast<int>(j[c].size()) != economy.num_types()) {
      fail(Diagnostic::kShapeMismatch, rp,
           "expected " + std::to_string(economy.num_types()) +
               " entries (one per type), found " + std::to_string(j[c].size()));
    }
    for (int t = 0; t < economy.num_types(); ++t) {
      xi(c, t) = nonnegative_at(j[c][t], child(rp, static_cast<std::size_t>(t)));
    }
  }
  return xi;
}

std::vector<int> school_map(const Json& j, const std::string& path,
                            const Names& names, std::vector<int> defaults) {
  object_at(j, path);
  for (const auto& [id, v] : j.items()) {
    const std::string p = child(path, id);
    defaults[names.school(id, p, false)] = nonnegative_at(v, p);
  }
  return defaults;
}

// {"<row id>": {"<type>": n}} over schools or districts.
std::vector<std::vector<int>> row_type_map(
    const Json& j, const std::string& path, const Names& names,
    bool districts, std::vector<std::vector<int>> defaults) {
  object_at(j, path);
  for (const auto& [id, row] : j.items()) {
    const std::string p = child(path, id);
    const int r = districts ? names.district(id, p) : names.school(id, p, false);
    object_at(row, p);
    for (const auto& [tid, v] : row.items()) {
      const std::string tp = child(p, tid);
      defaults[r][names.type(tid, tp)] = nonnegative_at(v, tp);
    }
  }
  return defaults;
}

void require_districts(const Economy& economy, const std::string& path) {
  if (!economy.has_districts()) {
    fail(Diagnostic::kInvalidValue, path,
         "this goal builder needs schools with districts");
  }
}

GoalSpec parse_goal(const Json& j, const std::string& path,
                    const Economy& economy) {
  const Names names = names_of(economy);
  object_at(j, path);
  GoalSpec spec;
  const std::string bp = child(path, "builder");
  const std::string name = string_at(required(j, path, "builder"), bp);
  auto builder = parse_goal_builder(name);
  if (!builder) {
    fail(Diagnostic::kUnknownVariant, bp, "unknown goal builder '" + name + "'");
  }
  spec.builder = *builder;

  auto read_diversity = [&] {
    spec.diversity = trivial_diversity(economy);
    if (const Json* f = optional_field(j, "floors")) {
      spec.diversity.floors = row_type_map(*f, child(path, "floors"), names,
                                           false, spec.diversity.floors);
    }
    if (const Json* c = optional_field(j, "ceilings")) {
      spec.diversity.ceilings = row_type_map(*c, child(path, "ceilings"),
                                             names, false, spec.diversity.ceilings);
    }
  };
  auto read_k = [&] {
    require_districts(economy, bp);
    spec.districts = initial_district_targets(economy);
    spec.districts_from_initial = true;
    const Json* k = optional_field(j, "k");
    if (!k) return;
    const std::string kp = child(path, "k");
    if (k->is_string()) {
      if (k->get<std::string>() != "initial") {
        fail(Diagnostic::kInvalidValue, kp,
             "k must be an object of district targets or \"initial\"");
      }
      return;
    }
    object_at(*k, kp);
    spec.districts_from_initial = false;
    for (const auto& [id, v] : k->items()) {
      const std::string p = child(kp, id);
      spec.districts.targets[names.district(id, p)] = nonnegative_at(v, p);
    }
  };

  switch (spec.builder) {
    case GoalBuilder::kQuota:
      only_keys(j, path, {"builder", "floors", "ceilings"});
      spec.quota = trivial_quota(economy);
      if (const Json* f = optional_field(j, "floors")) {
        spec.quota.floors =
            school_map(*f, child(path, "floors"), names, spec.quota.floors);
      }
      if (const Json* c = optional_field(j, "ceilings")) {
        spec.quota.ceilings =
            school_map(*c, child(path, "ceilings"), names, spec.quota.ceilings);
      }
      break;
    case GoalBuilder::kDiversity:
      only_keys(j, path, {"builder", "floors", "ceilings"});
      read_diversity();
      break;
    case GoalBuilder::kExchange:
    case GoalBuilder::kBalanced:
      only_keys(j, path, {"builder", "k"});
      read_k();
      break;
    case GoalBuilder::kDiversityExchange:
    case GoalBuilder::kDiversityBalanced:
      only_keys(j, path, {"builder", "floors", "ceilings", "k"});
      read_diversity();
      read_k();
      break;
    case GoalBuilder::kDistrictDiversity:
      only_keys(j, path, {"builder", "floors", "ceilings"});
      require_districts(economy, bp);
      spec.district_diversity = trivial_district_diversity(economy);
      if (const Json* f = optional_field(j, "floors")) {
        spec.district_diversity.floors =
            row_type_map(*f, child(path, "floors"), names, true,
                         spec.district_diversity.floors);
      }
      if (const Json* c = optional_field(j, "ceilings")) {
        spec.district_diversity.ceilings =
            row_type_map(*c, child(path, "ceilings"), names, true,
                         spec.district_diversity.ceilings);
      }
      break;
    case GoalBuilder::kExplicit: {
      only_keys(j, path, {"builder", "members"});
      const std::string mp = child(path, "members");
      const Json& jm = array_at(required(j, path, "members"), mp);
      for (std::size_t i = 0; i < jm.size(); ++i) {
        spec.members.push_back(grid_at(jm[i], child(mp, i), economy));
      }
      std::sort(spec.members.begin(), spec.members.end());
      auto dup = std::adjacent_find(spec.members.begin(), spec.members.end());
      if (dup != spec.members.end()) {
        fail(Diagnostic::kDuplicateEntry, mp,
             "member " + dup->to_string() + " listed twice");
      }
      if (spec.members.empty()) {
        fail(Diagnostic::kInvalidValue, mp, "an explicit goal needs a member");
      }
      break;
    }
  }
  return spec;
}

std::optional<ObjectiveKind> parse_kind(std::string_view name) {
  for (auto k : {ObjectiveKind::kTabulated, ObjectiveKind::kChebyshev,
                 ObjectiveKind::kDiscrete, ObjectiveKind::kManhattan}) {
    if (name == objective_kind_name(k)) return k;
  }
  return std::nullopt;
}

ObjectiveSpec parse_objective(const Json& j, const std::string& path,
                              const Economy& economy) {
  object_at(j, path);
  ObjectiveSpec spec;
  const std::string vp = child(path, "variant");
  const std::string name = string_at(required(j, path, "variant"), vp);
  auto kind = parse_kind(name);
  if (!kind) {
    fail(Diagnostic::kUnknownVariant, vp,
         "unknown objective variant '" + name + "'");
  }
  spec.kind = *kind;
  if (spec.kind != ObjectiveKind::kTabulated) {
    only_keys(j, path, {"variant", "goal"});
    spec.goal = parse_goal(required(j, path, "goal"), child(path, "goal"), economy);
    return spec;
  }
  only_keys(j, path, {"variant", "entries", "default"});
  const std::string ep = child(path, "entries");
  const Json& je = array_at(required(j, path, "entries"), ep);
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string p = child(ep, i);
    object_at(je[i], p);
    only_keys(je[i], p, {"distribution", "value"});
    spec.entries.push_back(TabulatedEntry{
        grid_at(required(je[i], p, "distribution"), child(p, "distribution"),
                economy),
        rational_at(required(je[i], p, "value"), child(p, "value"))});
  }
  std::map<Distribution, std::size_t> seen;
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    const auto [it, fresh] = seen.emplace(spec.entries[i].distribution, i);
    if (!fresh) {
      fail(Diagnostic::kDuplicateEntry, child(child(ep, i), "distribution"),
           "distribution " + spec.entries[i].distribution.to_string() +
               " already tabulated at entry " + std::to_string(it->second));
    }
  }
  std::sort(spec.entries.begin(), spec.entries.end(),
            [](const TabulatedEntry& a, const TabulatedEntry& b) {
              return a.distribution < b.distribution;
            });
  if (const Json* d = optional_field(j, "default")) {
    spec.default_value = rational_at(*d, child(path, "default"));
  }
  return spec;
}

std::vector<int> parse_master_list(const Json& j, const std::string& path,
                                   const Economy& economy) {
  const Names names = names_of(economy);
  array_at(j, path);
  std::vector<int> order;
  std::vector<bool> seen(economy.num_students(), false);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = child(path, i);
    const int s = names.student(string_at(j[i], p), p);
    if (seen[s]) {
      fail(Diagnostic::kDuplicateRanking, p,
           "student '" + economy.student_ids()[s] + "' listed twice");
    }
    seen[s] = true;
    order.push_back(s);
  }
  if (static_cast<int>(order.size()) != economy.num_students()) {
    fail(Diagnostic::kIncompleteRanking, path,
         "master list must rank every student");
  }
  return order;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    if (auto pos = message.find("syntax error"); pos != std::string::npos) {
      message = message.substr(pos);
    }
    fail(Diagnostic::kSyntax,
         "line " + std::to_string(line) + ", column " + std::to_string(column),
         message);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Diagnostic::kIo, path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json grid_json(const Distribution& xi) {
  Json rows = Json::array();
  for (SchoolIndex c = 0; c < xi.num_schools(); ++c) {
    Json row = Json::array();
    for (int t = 0; t < xi.num_types(); ++t) row.push_back(xi(c, t));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json school_map_json(const Economy& e, const std::vector<int>& v) {
  Json out = Json::object();
  for (SchoolIndex c = 0; c < e.num_schools(); ++c) out[e.school_ids()[c]] = v[c];
  return out;
}

Json row_type_json(const Economy& e, const std::vector<std::string>& rows,
                   const std::vector<std::vector<int>>& v) {
  Json out = Json::object();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Json row = Json::object();
    for (int t = 0; t < e.num_types(); ++t) row[e.type_ids()[t]] = v[r][t];
    out[rows[r]] = std::move(row);
  }
  return out;
}

Json goal_json(const Economy& e, const GoalSpec& g) {
  Json out = Json::object();
  out["builder"] = goal_builder_name(g.builder);
  auto diversity = [&] {
    out["floors"] = row_type_json(e, e.school_ids(), g.diversity.floors);
    out["ceilings"] = row_type_json(e, e.school_ids(), g.diversity.ceilings);
  };
  auto k = [&] {
    if (g.districts_from_initial) {
      out["k"] = "initial";
      return;
    }
    Json m = Json::object();
    for (int d = 0; d < e.num_districts(); ++d) {
      m[e.district_ids()[d]] = g.districts.targets[d];
    }
    out["k"] = std::move(m);
  };
  switch (g.builder) {
    case GoalBuilder::kQuota:
      out["floors"] = school_map_json(e, g.quota.floors);
      out["ceilings"] = school_map_json(e, g.quota.ceilings);
      break;
    case GoalBuilder::kDiversity:
      diversity();
      break;
    case GoalBuilder::kExchange:
    case GoalBuilder::kBalanced:
      k();
      break;
    case GoalBuilder::kDiversityExchange:
    case GoalBuilder::kDiversityBalanced:
      diversity();
      k();
      break;
    case GoalBuilder::kDistrictDiversity:
      out["floors"] =
          row_type_json(e, e.district_ids(), g.district_diversity.floors);
      out["ceilings"] =
          row_type_json(e, e.district_ids(), g.district_diversity.ceilings);
      break;
    case GoalBuilder::kExplicit: {
      Json members = Json::array();
      for (const auto& xi : g.members) members.push_back(grid_json(xi));
      out["members"] = std::move(members);
      break;
    }
  }
  return out;
}

}  // namespace

const char* diagnostic_name(Diagnostic d) {
  switch (d) {
    case Diagnostic::kIo: return "io";
    case Diagnostic::kSyntax: return "syntax";
    case Diagnostic::kMissingField: return "missing-field";
    case Diagnostic::kUnknownField: return "unknown-field";
    case Diagnostic::kWrongType: return "wrong-type";
    case Diagnostic::kMalformedNumber: return "malformed-number";
    case Diagnostic::kDuplicateId: return "duplicate-id";
    case Diagnostic::kUnknownSchool: return "unknown-school";
    case Diagnostic::kUnknownStudent: return "unknown-student";
    case Diagnostic::kUnknownType: return "unknown-type";
    case Diagnostic::kUnknownDistrict: return "unknown-district";
    case Diagnostic::kDuplicateRanking: return "duplicate-ranking";
    case Diagnostic::kIncompleteRanking: return "incomplete-ranking";
    case Diagnostic::kCapacityViolation: return "capacity-violation";
    case Diagnostic::kShapeMismatch: return "shape-mismatch";
    case Diagnostic::kDuplicateEntry: return "duplicate-entry";
    case Diagnostic::kUnknownVariant: return "unknown-variant";
    case Diagnostic::kInvalidValue: return "invalid-value";
  }
  return "unknown";
}

InstanceError::InstanceError(Diagnostic diagnostic, std::string location,
                             const std::string& message)
    : Error(ErrorCode::kParse,
            location + ": " + diagnostic_name(diagnostic) + ": " + message),
      diagnostic_(diagnostic),
      location_(std::move(location)) {}

const char* goal_builder_name(GoalBuilder b) {
  switch (b) {
    case GoalBuilder::kQuota: return "quota";
    case GoalBuilder::kDiversity: return "diversity";
    case GoalBuilder::kExchange: return "exchange";
    case GoalBuilder::kBalanced: return "balanced";
    case GoalBuilder::kDiversityExchange: return "diversity+exchange";
    case GoalBuilder::kDiversityBalanced: return "diversity+balanced";
    case GoalBuilder::kDistrictDiversity: return "district-diversity";
    case GoalBuilder::kExplicit: return "explicit";
  }
  return "unknown";
}

std::optional<GoalBuilder> parse_goal_builder(std::string_view name) {
  for (auto b : {GoalBuilder::kQuota, GoalBuilder::kDiversity,
                 GoalBuilder::kExchange, GoalBuilder::kBalanced,
                 GoalBuilder::kDiversityExchange, GoalBuilder::kDiversityBalanced,
                 GoalBuilder::kDistrictDiversity, GoalBuilder::kExplicit}) {
    if (name == goal_builder_name(b)) return b;
  }
  return std::nullopt;
}

InstanceDocument parse_instance(std::string_view text) {
  const Json root = parse_json(text);
  object_at(root, "");
  only_keys(root, "", {"economy", "preferences", "objective", "master_list"});
  Economy economy = parse_economy(required(root, "", "economy"), "/economy");
  PreferenceProfile prefs = parse_preferences(
      required(root, "", "preferences"), "/preferences", economy);
  ObjectiveSpec objective =
      parse_objective(required(root, "", "objective"), "/objective", economy);
  std::optional<std::vector<int>> master;
  if (const Json* m = optional_field(root, "master_list")) {
    master = parse_master_list(*m, "/master_list", economy);
  }
  return InstanceDocument{std::move(economy), std::move(prefs),
                          std::move(objective), std::move(master)};
}

InstanceDocument load_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path));
}

std::string serialize_instance(const InstanceDocument& doc) {
  const Economy& e = doc.economy;
  Json root = Json::object();

  Json economy = Json::object();
  Json schools = Json::array();
  for (const auto& s : e.school_specs()) {
    Json js = Json::object();
    js["id"] = s.id;
    js["capacity"] = s.capacity;
    if (s.district) js["district"] = *s.district;
    schools.push_back(std::move(js));
  }
  economy["schools"] = std::move(schools);
  economy["types"] = e.type_ids();
  Json students = Json::array();
  Json initial = Json::object();
  for (int s = 0; s < e.num_students(); ++s) {
    Json js = Json::object();
    js["id"] = e.student_ids()[s];
    js["type"] = e.type_ids()[e.type_of(s)];
    students.push_back(std::move(js));
    initial[e.student_ids()[s]] = e.school_name(e.initial_matching()[s]);
  }
  economy["students"] = std::move(students);
  economy["initial_matching"] = std::move(initial);
  root["economy"] = std::move(economy);

  Json prefs = Json::object();
  for (int s = 0; s < e.num_students(); ++s) {
    Json ranking = Json::array();
    for (SchoolIndex c : doc.preferences[s].ranking()) {
      ranking.push_back(e.school_name(c));
    }
    prefs[e.student_ids()[s]] = std::move(ranking);
  }
  root["preferences"] = std::move(prefs);

  Json objective = Json::object();
  objective["variant"] = objective_kind_name(doc.objective.kind);
  if (doc.objective.kind == ObjectiveKind::kTabulated) {
    Json entries = Json::array();
    for (const auto& entry : doc.objective.entries) {
      Json je = Json::object();
      je["distribution"] = grid_json(entry.distribution);
      je["value"] = entry.value.to_string();
      entries.push_back(std::move(je));
    }
    objective["entries"] = std::move(entries);
    if (doc.objective.default_value) {
      objective["default"] = doc.objective.default_value->to_string();
    }
  } else if (doc.objective.goal) {
    objective["goal"] = goal_json(e, *doc.objective.goal);
  }
  root["objective"] = std::move(objective);

  if (doc.master_list) {
    Json master = Json::array();
    for (int s : *doc.master_list) master.push_back(e.student_ids()[s]);
    root["master_list"] = std::move(master);
  }
  return root.dump(2) + "\n";
}

Matching parse_matching(const Economy& economy, std::string_view text) {
  const Json root = parse_json(text);
  const Names names = names_of(economy);
  object_at(root, "");
  Matching m;
  m.assignment.assign(economy.num_students(), kUnassigned);
  std::vector<bool> seen(economy.num_students(), false);
  std::vector<int> load(economy.num_schools(), 0);
  for (const auto& [sid, jc] : root.items()) {
    const std::string p = child("", sid);
    const int s = names.student(sid, p);
    seen[s] = true;
    const SchoolIndex c = names.school(string_at(jc, p), p, true);
    m.assignment[s] = c;
    if (c != kUnassigned && ++load[c] > economy.capacity(c)) {
      fail(Diagnostic::kCapacityViolation, p,
           "matching exceeds the capacity of school '" +
               economy.school_ids()[c] + "'");
    }
  }
  for (int s = 0; s < economy.num_students(); ++s) {
    if (!seen[s]) {
      fail(Diagnostic::kMissingField, child("", economy.student_ids()[s]),
           "matching omits student '" + economy.student_ids()[s] + "'");
    }
  }
  return m;
}

Matching load_matching(const Economy& economy,
                       const std::filesystem::path& path) {
  return parse_matching(economy, read_file(path));
}

std::string serialize_matching(const Economy& economy, const Matching& m) {
  Json root = Json::object();
  for (int s = 0; s < economy.num_students(); ++s) {
    root[economy.student_ids()[s]] = economy.school_name(m[s]);
  }
  return root.dump(2) + "\n";
}

PolicyGoal build_goal(const FeasibleSetPtr& space, const Economy& economy,
                      const GoalSpec& spec) {
  switch (spec.builder) {
    case GoalBuilder::kQuota:
      return build_quota_goal(space, economy, spec.quota);
    case GoalBuilder::kDiversity:
      return build_diversity_goal(space, economy, spec.diversity);
    case GoalBuilder::kExchange:
      return build_exchange_feasibility_goal(space, economy, spec.districts);
    case GoalBuilder::kBalanced:
      return build_balanced_exchange_goal(space, economy, spec.districts);
    case GoalBuilder::kDiversityExchange:
      return build_combined_goal(space, economy, spec.diversity, spec.districts,
                                 DistrictMode::kExchangeFeasibility);
    case GoalBuilder::kDiversityBalanced:
      return build_combined_goal(space, economy, spec.diversity, spec.districts,
                                 DistrictMode::kBalanced);
    case GoalBuilder::kDistrictDiversity:
      return build_district_diversity_goal(space, economy,
                                           spec.district_diversity);
    case GoalBuilder::kExplicit:
      return PolicyGoal(space, spec.members);
  }
  throw Error(ErrorCode::kInternalInvariant, "unhandled goal builder");
}

Objective build_objective(const InstanceDocument& doc, std::uint64_t budget) {
  const FeasibleSetPtr space = make_feasible_set(doc.economy, budget);
  const ObjectiveSpec& spec = doc.objective;
  if (spec.kind == ObjectiveKind::kTabulated) {
    std::vector<std::optional<Rational>> table(space->size());
    for (const auto& entry : spec.entries) {
      auto rank = space->rank_of(entry.distribution.counts());
      if (!rank) {
        throw Error(ErrorCode::kInvalidArgument,
                    "tabulated distribution " + entry.distribution.to_string() +
                        " is not feasible");
      }
      table[*rank] = entry.value;
    }
    std::vector<ExtendedRational> values;
    values.reserve(table.size());
    for (std::size_t r = 0; r < table.size(); ++r) {
      if (table[r]) {
        values.emplace_back(*table[r]);
      } else if (spec.default_value) {
        values.emplace_back(*spec.default_value);
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "tabulated objective has no value for " +
                        (*space)[r].to_string() + " and no default");
      }
    }
    return Objective::tabulated(space, std::move(values));
  }
  if (!spec.goal) {
    throw Error(ErrorCode::kInvalidArgument, "objective needs a goal");
  }
  PolicyGoal goal = build_goal(space, doc.economy, *spec.goal);
  switch (spec.kind) {
    case ObjectiveKind::kChebyshev: return Objective::chebyshev_to(std::move(goal));
    case ObjectiveKind::kDiscrete: return Objective::discrete_to(std::move(goal));
    case ObjectiveKind::kManhattan: return Objective::manhattan_to(std::move(goal));
    case ObjectiveKind::kTabulated: break;
  }
  throw Error(ErrorCode::kInternalInvariant, "unhandled objective variant");
}

}  // namespace dttc
