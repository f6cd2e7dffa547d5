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

// Exhaustive exchange-property checkers.
//
// For points x, y of a set (or of a function's domain) and a coordinate i with
// x_i > y_i, the M♮ exchange asks for j ∈ {coordinates with x_j < y_j} ∪ {none}
// such that x - e_i + e_j and y + e_i - e_j both qualify; the M exchange drops
// the "none" option. "Qualify" means set membership for convexity, and for
// pseudo-concavity: both points lie in the domain and the smaller of their
// values is at least min(f(x), f(y)).
//
// Every checker scans pairs in lexicographic order and reports the first
// violating (x, y, i), so witnesses are deterministic.

#ifndef DTTC_CONVEXITY_HPP_
#define DTTC_CONVEXITY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dttc/objectives.hpp"

namespace dttc {

using Point = std::vector<int>;

enum class ExchangeKind {
  kMNatural,  // may exchange with the null coordinate
  kM,
};

struct ConvexityWitness {
  Point xi;
  Point xi2;
  // Flattened coordinate i with xi[i] > xi2[i]. For distributions this is
  // school * num_types + type.
  int pivot = 0;
};

struct ConvexityResult {
  bool holds = true;
  std::optional<ConvexityWitness> witness;
  // Number of (x, y) pairs examined.
  std::uint64_t pairs_checked = 0;

  explicit operator bool() const { return holds; }
};

// Finite set of integer points of one dimension, sorted and deduplicated.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Point> points);

  std::size_t size() const { return points_.size(); }
  int dim() const { return dim_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  std::optional<std::size_t> find(std::span<const int> p) const;
  bool contains(std::span<const int> p) const { return find(p).has_value(); }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<Point> points_;
  int dim_ = 0;
};

ConvexityResult check_exchange(const PointSet& set, ExchangeKind kind);

ConvexityResult is_mnat_convex(const PolicyGoal& goal);
ConvexityResult is_m_convex(const PolicyGoal& goal);
ConvexityResult is_mnat_convex(const PointSet& set);
ConvexityResult is_m_convex(const PointSet& set);

// Quantifies over the objective's whole feasible set.
ConvexityResult is_pseudo_mnat_concave(const Objective& f);
ConvexityResult is_pseudo_m_concave(const Objective& f);

// Re-evaluates the definition at a witness; true when the violation is
// confirmed. Used to audit checker output.
bool confirms_violation(const PointSet& set, ExchangeKind kind,
                        const ConvexityWitness& w);
bool confirms_violation(const Objective& f, ExchangeKind kind,
                        const ConvexityWitness& w);

// {ξ ∈ Ξ^0 : f(ξ) >= λ}; nullopt when empty.
std::optional<PolicyGoal> upper_contour_set(const Objective& f,
                                            const ExtendedRational& lambda);

// Distinct finite values attained by f, ascending.
std::vector<ExtendedRational> attained_values(const Objective& f);

struct ContourCheck {
  ExtendedRational lambda;
  std::size_t size = 0;
  ConvexityResult verdict;
};

// Pseudo M♮-concavity next to the M♮-convexity of every attained-value upper
// contour set. The two verdicts must agree.
struct ContourCharacterization {
  ConvexityResult pseudo_mnat;
  std::vector<ContourCheck> contours;
  bool all_contours_mnat_convex = true;

  bool agrees() const { return pseudo_mnat.holds == all_contours_mnat_convex; }
};

ContourCharacterization check_contour_characterization(const Objective& f);

// {(ξ, num_students - n(ξ)) : ξ ∈ goal} in dimension |C|·|T| + 1. Throws
// Error(kPrecondition) when some member places more than num_students.
PointSet lift_add_unassigned(const PolicyGoal& goal, int num_students);

std::string describe_witness(const ConvexityWitness& w, int num_types);

}  // namespace dttc

#endif  // DTTC_CONVEXITY_HPP_
