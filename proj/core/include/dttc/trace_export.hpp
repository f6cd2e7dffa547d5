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

// Graphviz DOT rendering of TTC pointing graphs.

#ifndef DTTC_TRACE_EXPORT_HPP_
#define DTTC_TRACE_EXPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "dttc/economy.hpp"
#include "dttc/ttc.hpp"

namespace dttc {

// One digraph for step `number` (1-based). Remaining students are circles,
// options still in the market are boxes, options removed at this step are
// dashed boxes without edges. Edges on executed cycles are bold and red.
std::string step_to_dot(const Economy& economy, const TtcStep& step,
                        int number);

// Writes step_1.dot ... step_N.dot into `dir` (created if missing) and
// returns the paths in step order.
std::vector<std::filesystem::path> write_trace_dot(
    const Economy& economy, const TtcTrace& trace,
    const std::filesystem::path& dir);

}  // namespace dttc

#endif  // DTTC_TRACE_EXPORT_HPP_
