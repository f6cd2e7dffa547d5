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

#ifndef DTTC_RATIONAL_HPP_
#define DTTC_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace dttc {

// Exact rational with 64-bit numerator and positive denominator, always in
// lowest terms. Objective values never touch floating point.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  // Accepts "7", "-3", "2/3", "0.25".
  static Rational parse(std::string_view text);
  std::string to_string() const;

  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Rational extended with a distinct negative-infinity sentinel, which an
// objective returns for distributions outside the feasible set.
class ExtendedRational {
 public:
  constexpr ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(value) {}  // NOLINT
  ExtendedRational(std::int64_t value) : value_(value) {}  // NOLINT

  static ExtendedRational negative_infinity() {
    ExtendedRational v;
    v.neg_inf_ = true;
    return v;
  }

  bool is_finite() const { return !neg_inf_; }
  // Precondition: is_finite().
  const Rational& value() const { return value_; }
  std::string to_string() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    return a.neg_inf_ == b.neg_inf_ && (a.neg_inf_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a,
                                          const ExtendedRational& b) {
    if (a.neg_inf_ || b.neg_inf_) return b.neg_inf_ <=> a.neg_inf_;
    return a.value_ <=> b.value_;
  }

 private:
  bool neg_inf_ = false;
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);
std::ostream& operator<<(std::ostream& os, const ExtendedRational& r);

}  // namespace dttc

#endif  // DTTC_RATIONAL_HPP_
