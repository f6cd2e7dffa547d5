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

#include "dttc/distribution.hpp"

#include <limits>
#include <numeric>
#include <sstream>

namespace dttc {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kDenseCodeLimit = std::uint64_t{1} << 22;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

// C(n + k, k) without overflow for desk-scale arguments; saturates.
std::uint64_t compositions_bounded(int capacity, int num_types) {
  // Number of vectors in N^num_types with sum <= capacity.
  std::uint64_t result = 1;
  for (int i = 1; i <= num_types; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(capacity) + i;
    if (result > kSaturated / num) return kSaturated;
    result = result * num / i;
  }
  return result;
}

// All vectors in N^num_types with sum <= capacity, lexicographic order.
void school_compositions(int capacity, int num_types,
                         std::vector<std::vector<int>>& out) {
  std::vector<int> current(num_types, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == num_types) {
      out.push_back(current);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      current[pos] = v;
      self(self, pos + 1, left - v);
    }
    current[pos] = 0;
  };
  rec(rec, 0, capacity);
}

void check_shape(const Economy& economy, const Distribution& xi) {
  if (xi.num_schools() != economy.num_schools() ||
      xi.num_types() != economy.num_types()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "distribution is " + std::to_string(xi.num_schools()) + "x" +
                    std::to_string(xi.num_types()) + ", economy is " +
                    std::to_string(economy.num_schools()) + "x" +
                    std::to_string(economy.num_types()));
  }
}

}  // namespace

Distribution::Distribution(int num_schools, int num_types,
                           std::vector<int> counts)
    : num_schools_(num_schools),
      num_types_(num_types),
      counts_(std::move(counts)) {
  if (counts_.size() != static_cast<std::size_t>(num_schools) * num_types) {
    throw Error(ErrorCode::kDimensionMismatch,
                "grid has " + std::to_string(counts_.size()) +
                    " entries, expected " +
                    std::to_string(num_schools * num_types));
  }
  for (int v : counts_) {
    if (v < 0) throw Error(ErrorCode::kInvalidArgument, "negative count in grid");
  }
}

int Distribution::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0);
}

int Distribution::school_total(SchoolIndex c) const {
  int sum = 0;
  for (int t = 0; t < num_types_; ++t) sum += (*this)(c, t);
  return sum;
}

std::string Distribution::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int c = 0; c < num_schools_; ++c) {
    if (c) os << ' ';
    os << '(';
    for (int t = 0; t < num_types_; ++t) {
      if (t) os << ',';
      os << (*this)(c, t);
    }
    os << ')';
  }
  os << ']';
  return os.str();
}

Distribution unit_distribution(int num_schools, int num_types, SchoolIndex c,
                               int t) {
  Distribution xi(num_schools, num_types);
  if (c != kUnassigned) xi(c, t) = 1;
  return xi;
}

int district_total(const Economy& economy, const Distribution& xi,
                   int district) {
  int sum = 0;
  for (SchoolIndex c = 0; c < economy.num_schools(); ++c) {
    if (economy.district_of(c) == district) sum += xi.school_total(c);
  }
  return sum;
}

Distribution induced_distribution(const Economy& economy, const Matching& mu) {
  Distribution xi(economy.num_schools(), economy.num_types());
  for (int s = 0; s < economy.num_students(); ++s) {
    if (mu[s] != kUnassigned) ++xi(mu[s], economy.type_of(s));
  }
  return xi;
}

bool is_feasible(const Economy& economy, const Distribution& xi) {
  check_shape(economy, xi);
  for (SchoolIndex c = 0; c < economy.num_schools(); ++c) {
    if (xi.school_total(c) > economy.capacity(c)) return false;
  }
  return true;
}

std::uint64_t feasible_count(const Economy& economy) {
  std::uint64_t total = 1;
  for (SchoolIndex c = 0; c < economy.num_schools(); ++c) {
    total = saturating_mul(
        total, compositions_bounded(economy.capacity(c), economy.num_types()));
  }
  return total;
}

std::vector<Distribution> enumerate_feasible(const Economy& economy,
                                             std::uint64_t budget) {
  const std::uint64_t count = feasible_count(economy);
  if (count > budget) {
    throw BudgetExceeded("feasible set has " + std::to_string(count) +
                             " distributions, enumeration budget is " +
                             std::to_string(budget),
                         count, budget);
  }
  const int num_schools = economy.num_schools();
  const int num_types = economy.num_types();
  std::vector<std::vector<std::vector<int>>> per_school(num_schools);
  for (SchoolIndex c = 0; c < num_schools; ++c) {
    school_compositions(economy.capacity(c), num_types, per_school[c]);
  }

  std::vector<Distribution> out;
  out.reserve(count);
  std::vector<std::size_t> digit(num_schools, 0);
  std::vector<int> grid(static_cast<std::size_t>(num_schools) * num_types, 0);
  while (true) {
    for (SchoolIndex c = 0; c < num_schools; ++c) {
      const auto& row = per_school[c][digit[c]];
      std::copy(row.begin(), row.end(), grid.begin() + c * num_types);
    }
    out.emplace_back(num_schools, num_types, grid);
    // Odometer with the last school fastest keeps the grid lexicographic.
    int c = num_schools - 1;
    while (c >= 0 && ++digit[c] == per_school[c].size()) digit[c--] = 0;
    if (c < 0) break;
  }
  return out;
}

FeasibleSet::FeasibleSet(const Economy& economy, std::uint64_t budget)
    : num_schools_(economy.num_schools()),
      num_types_(economy.num_types()),
      capacities_(economy.capacities().begin(), economy.capacities().end()),
      members_(enumerate_feasible(economy, budget)) {
  std::uint64_t code_space = 1;
  strides_.assign(dim(), 0);
  for (int i = dim() - 1; i >= 0; --i) {
    strides_[i] = code_space;
    code_space = saturating_mul(code_space, capacities_[i / num_types_] + 1);
  }
  const bool dense = code_space <= kDenseCodeLimit;
  if (dense) dense_.assign(code_space, -1);
  for (std::size_t rank = 0; rank < members_.size(); ++rank) {
    const std::uint64_t code = *code_of(members_[rank].counts());
    if (dense) {
      dense_[code] = static_cast<std::int32_t>(rank);
    } else {
      sparse_.emplace(code, rank);
    }
  }
}

std::optional<std::uint64_t> FeasibleSet::code_of(
    std::span<const int> counts) const {
  std::uint64_t code = 0;
  for (int i = 0; i < dim(); ++i) {
    const int v = counts[i];
    if (v < 0 || v > capacities_[i / num_types_]) return std::nullopt;
    code += strides_[i] * static_cast<std::uint64_t>(v);
  }
  return code;
}

std::optional<std::size_t> FeasibleSet::rank_of(
    std::span<const int> counts) const {
  if (static_cast<int>(counts.size()) != dim()) return std::nullopt;
  for (SchoolIndex c = 0; c < num_schools_; ++c) {
    int sum = 0;
    for (int t = 0; t < num_types_; ++t) sum += counts[c * num_types_ + t];
    if (sum > capacities_[c]) return std::nullopt;
  }
  const auto code = code_of(counts);
  if (!code) return std::nullopt;
  if (!dense_.empty()) {
    const std::int32_t rank = dense_[*code];
    if (rank < 0) return std::nullopt;
    return static_cast<std::size_t>(rank);
  }
  auto it = sparse_.find(*code);
  if (it == sparse_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FeasibleSet::rank_of(const Distribution& xi) const {
  if (xi.num_schools() != num_schools_ || xi.num_types() != num_types_) {
    return std::nullopt;
  }
  return rank_of(xi.counts());
}

}  // namespace dttc
