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

#include "dttc/trace_export.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "dttc/error.hpp"

namespace dttc {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

constexpr const char* kCycleStyle = " [style=bold, penwidth=2.5, color=red]";

}  // namespace

std::string step_to_dot(const Economy& economy, const TtcStep& step,
                        int number) {
  const OptionSpace space(economy);
  // (from, to) node names of edges on executed cycles.
  std::set<std::pair<std::string, std::string>> on_cycle;
  for (const auto& cycle : step.cycles) {
    const std::size_t n = cycle.students.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::string s = "s" + std::to_string(cycle.students[k]);
      const std::string o = "o" + std::to_string(cycle.options[k]);
      const std::string next = "s" + std::to_string(cycle.students[(k + 1) % n]);
      on_cycle.emplace(s, o);
      on_cycle.emplace(o, next);
    }
  }
  auto edge = [&](std::ostringstream& os, const std::string& from,
                  const std::string& to) {
    os << "  " << from << " -> " << to
       << (on_cycle.count({from, to}) ? kCycleStyle : "") << ";\n";
  };

  std::ostringstream os;
  os << "digraph step_" << number << " {\n";
  os << "  label=" << quoted("Step " + std::to_string(number)) << ";\n";
  os << "  labelloc=t;\n  rankdir=LR;\n";
  for (int s = 0; s < economy.num_students(); ++s) {
    if (step.student_points_to[s] < 0) continue;
    os << "  s" << s << " [shape=circle, label="
       << quoted(economy.student_ids()[s]) << "];\n";
  }
  for (int o = 0; o < space.size(); ++o) {
    const bool removed =
        std::find(step.removed.begin(), step.removed.end(), o) != step.removed.end();
    if (step.option_points_to[o] < 0 && !removed) continue;
    os << "  o" << o << " [shape=box, label="
       << quoted(option_name(economy, space.option(o)))
       << (removed ? ", style=dashed, color=gray, fontcolor=gray" : "")
       << "];\n";
  }
  for (int s = 0; s < economy.num_students(); ++s) {
    if (step.student_points_to[s] < 0) continue;
    edge(os, "s" + std::to_string(s), "o" + std::to_string(step.student_points_to[s]));
  }
  for (int o = 0; o < space.size(); ++o) {
    if (step.option_points_to[o] < 0) continue;
    edge(os, "o" + std::to_string(o), "s" + std::to_string(step.option_points_to[o]));
  }
  os << "}\n";
  return os.str();
}

std::vector<std::filesystem::path> write_trace_dot(
    const Economy& economy, const TtcTrace& trace,
    const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot create trace directory '" + dir.string() +
                    "': " + ec.message());
  }
  std::vector<std::filesystem::path> paths;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    auto path = dir / ("step_" + std::to_string(number) + ".dot");
    std::ofstream out(path, std::ios::binary);
    out << step_to_dot(economy, trace.steps[i], number);
    if (!out) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cannot write '" + path.string() + "'");
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace dttc
