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

#include "dttc/rational.hpp"

#include <charconv>
#include <numeric>

#include "dttc/error.hpp"

namespace dttc {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t out = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error(ErrorCode::kParse,
                "malformed number '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kEmptyGoal: return "empty-goal";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kInternalInvariant: return "internal-invariant";
  }
  return "unknown";
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), text),
                    parse_int(text.substr(slash + 1), text));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 18 ||
        frac.find_first_not_of("0123456789") != std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  "malformed number '" + std::string(text) + "'");
    }
    std::string_view whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole.front() == '-';
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t int_part =
        (whole.empty() || whole == "-" || whole == "+")
            ? 0
            : parse_int(whole, text);
    std::int64_t frac_part = parse_int(frac, text);
    std::int64_t num = (int_part < 0 ? -int_part : int_part) * den + frac_part;
    return Rational(negative ? -num : num, den);
  }
  return Rational(parse_int(text, text));
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {
__extension__ using Wide = __int128;
}  // namespace

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  return lhs <=> rhs;
}

std::string ExtendedRational::to_string() const {
  return neg_inf_ ? std::string("-inf") : value_.to_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& r) {
  return os << r.to_string();
}

}  // namespace dttc
