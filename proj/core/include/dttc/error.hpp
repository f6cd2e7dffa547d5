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

#ifndef DTTC_ERROR_HPP_
#define DTTC_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dttc {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kEmptyGoal,
  kBudgetExceeded,
  kPrecondition,
  kParse,
  kInternalInvariant,
};

const char* error_code_name(ErrorCode code);

// All library failures are reported through this type; `code()` lets the CLI
// map them onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required,
                 std::uint64_t budget)
      : Error(ErrorCode::kBudgetExceeded, what),
        required_(required),
        budget_(budget) {}

  // Saturates at UINT64_MAX.
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;
inline constexpr std::uint64_t kDefaultMechanismRunBudget = 1'000'000;

}  // namespace dttc

#endif  // DTTC_ERROR_HPP_
