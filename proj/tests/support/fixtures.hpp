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

#ifndef DTTC_TESTS_SUPPORT_FIXTURES_HPP_
#define DTTC_TESTS_SUPPORT_FIXTURES_HPP_

#include <string>

#include "dttc/instance.hpp"

namespace dttc::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(DTTC_FIXTURE_DIR) + "/" + name;
}

inline InstanceDocument load_fixture(const std::string& name) {
  return load_instance(fixture_path(name + ".json"));
}

}  // namespace dttc::testing

#endif  // DTTC_TESTS_SUPPORT_FIXTURES_HPP_
