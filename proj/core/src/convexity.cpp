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

#include "dttc/convexity.hpp"

#include <algorithm>
#include <sstream>

#include "parallel.hpp"

namespace dttc {

namespace {

struct Violation {
  std::size_t x;
  std::size_t y;
  int pivot;
};

// A domain exposes its points in lexicographic order, a per-point value, and
// `accepts(a, b, floor)`: whether the exchanged pair qualifies.
struct SetDomain {
  const PointSet& set;

  std::size_t size() const { return set.size(); }
  int dim() const { return set.dim(); }
  std::span<const int> point(std::size_t i) const { return set[i]; }
  int value(std::size_t) const { return 0; }
  bool accepts(std::span<const int> a, std::span<const int> b, int) const {
    return set.contains(a) && set.contains(b);
  }
};

struct GoalDomain {
  const PolicyGoal& goal;

  std::size_t size() const { return goal.size(); }
  int dim() const { return goal.space()->dim(); }
  std::span<const int> point(std::size_t i) const { return goal[i].counts(); }
  int value(std::size_t) const { return 0; }
  bool member(std::span<const int> p) const {
    auto r = goal.space()->rank_of(p);
    return r && goal.contains_rank(*r);
  }
  bool accepts(std::span<const int> a, std::span<const int> b, int) const {
    return member(a) && member(b);
  }
};

struct ObjectiveDomain {
  const Objective& f;

  std::size_t size() const { return f.space()->size(); }
  int dim() const { return f.space()->dim(); }
  std::span<const int> point(std::size_t i) const {
    return (*f.space())[i].counts();
  }
  const ExtendedRational& value(std::size_t i) const { return f.at_rank(i); }
  bool accepts(std::span<const int> a, std::span<const int> b,
               const ExtendedRational& floor) const {
    auto ra = f.space()->rank_of(a);
    if (!ra || f.at_rank(*ra) < floor) return false;
    auto rb = f.space()->rank_of(b);
    return rb && f.at_rank(*rb) >= floor;
  }
};

// True when some exchange partner for `pivot` qualifies. `xm`/`ym` are
// scratch copies of x and y, restored on return.
template <typename Domain, typename V>
bool has_exchange(const Domain& d, ExchangeKind kind, std::span<const int> x,
                  std::span<const int> y, int pivot, const V& floor,
                  std::vector<int>& xm, std::vector<int>& ym) {
  --xm[pivot];
  ++ym[pivot];
  bool ok = kind == ExchangeKind::kMNatural && d.accepts(xm, ym, floor);
  for (int q = 0; q < d.dim() && !ok; ++q) {
    if (x[q] >= y[q]) continue;
    ++xm[q];
    --ym[q];
    ok = d.accepts(xm, ym, floor);
    --xm[q];
    ++ym[q];
  }
  ++xm[pivot];
  --ym[pivot];
  return ok;
}

template <typename Domain>
std::optional<Violation> violation_at(const Domain& d, ExchangeKind kind,
                                      std::size_t i, std::size_t j,
                                      std::vector<int>& xm,
                                      std::vector<int>& ym) {
  const auto x = d.point(i);
  const auto y = d.point(j);
  const auto floor = std::min(d.value(i), d.value(j));
  std::copy(x.begin(), x.end(), xm.begin());
  std::copy(y.begin(), y.end(), ym.begin());
  for (int p = 0; p < d.dim(); ++p) {
    if (x[p] <= y[p]) continue;
    if (!has_exchange(d, kind, x, y, p, floor, xm, ym)) {
      return Violation{i, j, p};
    }
  }
  return std::nullopt;
}

template <typename Domain>
ConvexityResult run_check(const Domain& d, ExchangeKind kind) {
  const std::size_t n = d.size();
  const std::size_t dim = static_cast<std::size_t>(d.dim());
  auto hit = internal::first_hit<Violation>(
      n, n * dim * (dim + 1),
      [&](std::size_t begin, std::size_t end, auto stop) -> std::optional<Violation> {
        std::vector<int> xm(dim), ym(dim);
        for (std::size_t i = begin; i < end; ++i) {
          if (stop(begin)) return std::nullopt;
          for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (auto v = violation_at(d, kind, i, j, xm, ym)) return v;
          }
        }
        return std::nullopt;
      });

  ConvexityResult result;
  if (!hit) {
    result.pairs_checked = static_cast<std::uint64_t>(n) * n;
    return result;
  }
  result.holds = false;
  result.pairs_checked = static_cast<std::uint64_t>(hit->x) * n + hit->y + 1;
  const auto x = d.point(hit->x);
  const auto y = d.point(hit->y);
  result.witness = ConvexityWitness{Point(x.begin(), x.end()),
                                    Point(y.begin(), y.end()), hit->pivot};
  return result;
}

}  // namespace

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  if (!points_.empty()) dim_ = static_cast<int>(points_.front().size());
  for (const auto& p : points_) {
    if (static_cast<int>(p.size()) != dim_) {
      throw Error(ErrorCode::kDimensionMismatch, "point set mixes dimensions");
    }
  }
}

std::optional<std::size_t> PointSet::find(std::span<const int> p) const {
  auto it = std::lower_bound(
      points_.begin(), points_.end(), p,
      [](const Point& a, std::span<const int> b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                            b.end());
      });
  if (it == points_.end() || !std::equal(it->begin(), it->end(), p.begin(), p.end())) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - points_.begin());
}

ConvexityResult check_exchange(const PointSet& set, ExchangeKind kind) {
  return run_check(SetDomain{set}, kind);
}

ConvexityResult is_mnat_convex(const PolicyGoal& goal) {
  return run_check(GoalDomain{goal}, ExchangeKind::kMNatural);
}
ConvexityResult is_m_convex(const PolicyGoal& goal) {
  return run_check(GoalDomain{goal}, ExchangeKind::kM);
}
ConvexityResult is_mnat_convex(const PointSet& set) {
  return check_exchange(set, ExchangeKind::kMNatural);
}
ConvexityResult is_m_convex(const PointSet& set) {
  return check_exchange(set, ExchangeKind::kM);
}

ConvexityResult is_pseudo_mnat_concave(const Objective& f) {
  return run_check(ObjectiveDomain{f}, ExchangeKind::kMNatural);
}
ConvexityResult is_pseudo_m_concave(const Objective& f) {
  return run_check(ObjectiveDomain{f}, ExchangeKind::kM);
}

namespace {

template <typename Domain, typename V>
bool confirms(const Domain& d, ExchangeKind kind, const ConvexityWitness& w,
              const V& floor) {
  if (static_cast<int>(w.xi.size()) != d.dim() ||
      static_cast<int>(w.xi2.size()) != d.dim() || w.pivot < 0 ||
      w.pivot >= d.dim() || w.xi[w.pivot] <= w.xi2[w.pivot]) {
    return false;
  }
  std::vector<int> xm = w.xi, ym = w.xi2;
  return !has_exchange(d, kind, std::span<const int>(w.xi),
                       std::span<const int>(w.xi2), w.pivot, floor, xm, ym);
}

}  // namespace

bool confirms_violation(const PointSet& set, ExchangeKind kind,
                        const ConvexityWitness& w) {
  if (!set.contains(w.xi) || !set.contains(w.xi2)) return false;
  return confirms(SetDomain{set}, kind, w, 0);
}

bool confirms_violation(const Objective& f, ExchangeKind kind,
                        const ConvexityWitness& w) {
  const ExtendedRational a = f(std::span<const int>(w.xi));
  const ExtendedRational b = f(std::span<const int>(w.xi2));
  if (!a.is_finite() || !b.is_finite()) return false;
  return confirms(ObjectiveDomain{f}, kind, w, std::min(a, b));
}

std::optional<PolicyGoal> upper_contour_set(const Objective& f,
                                            const ExtendedRational& lambda) {
  std::vector<std::size_t> ranks;
  for (std::size_t r = 0; r < f.space()->size(); ++r) {
    if (f.at_rank(r) >= lambda) ranks.push_back(r);
  }
  if (ranks.empty()) return std::nullopt;
  return PolicyGoal::from_ranks(f.space(), std::move(ranks));
}

std::vector<ExtendedRational> attained_values(const Objective& f) {
  std::vector<ExtendedRational> values = f.values();
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

ContourCharacterization check_contour_characterization(const Objective& f) {
  ContourCharacterization out;
  out.pseudo_mnat = is_pseudo_mnat_concave(f);
  for (const auto& lambda : attained_values(f)) {
    ContourCheck check{lambda, 0, {}};
    // Attained values give non-empty contours; an empty one would be
    // vacuously M♮-convex.
    if (auto contour = upper_contour_set(f, lambda)) {
      check.size = contour->size();
      check.verdict = is_mnat_convex(*contour);
    }
    out.all_contours_mnat_convex =
        out.all_contours_mnat_convex && check.verdict.holds;
    out.contours.push_back(std::move(check));
  }
  return out;
}

PointSet lift_add_unassigned(const PolicyGoal& goal, int num_students) {
  std::vector<Point> lifted;
  lifted.reserve(goal.size());
  for (std::size_t i = 0; i < goal.size(); ++i) {
    const Distribution& xi = goal[i];
    const int assigned = xi.total();
    if (assigned > num_students) {
      throw Error(ErrorCode::kPrecondition,
                  "goal member " + xi.to_string() + " assigns " +
                      std::to_string(assigned) + " students, only " +
                      std::to_string(num_students) + " exist");
    }
    Point p(xi.counts().begin(), xi.counts().end());
    p.push_back(num_students - assigned);
    lifted.push_back(std::move(p));
  }
  return PointSet(std::move(lifted));
}

std::string describe_witness(const ConvexityWitness& w, int num_types) {
  auto fmt = [](const Point& p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ')';
    return os.str();
  };
  std::ostringstream os;
  os << "xi=" << fmt(w.xi) << " xi2=" << fmt(w.xi2) << " pivot=";
  if (num_types > 0) {
    os << "(school " << w.pivot / num_types << ", type " << w.pivot % num_types
       << ")";
  } else {
    os << w.pivot;
  }
  return os.str();
}

}  // namespace dttc
