// Copyright 2026 The superstable Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact checks against the linear systems describing the super-stable and
// strongly stable matching polytopes, the self-dual certificate, and exact
// vertex enumeration for small instances.
//
// Constraint tags used in reports:
//   super:  1a  sum_{u in N(v)} x_{u,v} <= 1            per vertex
//           1b  sum_{i >_u v} x_{u,i} + sum_{j >_v u} x_{j,v} + x_{u,v} >= 1
//           1c  x >= 0
//   strong: 3a  as 1a
//           3b  sum_{i >_u v} x_{u,i} + sum_{j >_v u} x_{j,v} + sum_{k =_u v} x_{u,k} >= 1
//           3c  sum_{i >_u v} x_{u,i} + sum_{j >_v u} x_{j,v} + sum_{k =_v u} x_{k,v} >= 1
//           3d  as 1c

#ifndef SUPERSTABLE_POLYTOPE_HPP_
#define SUPERSTABLE_POLYTOPE_HPP_

#include "superstable/instance.hpp"
#include "superstable/matching.hpp"
#include "superstable/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace superstable {

using FractionalPoint = EdgeValues;

enum class Relation { AtMost, AtLeast };

/// One row of a linear system over edge variables: sum coeff * x_e rel rhs.
struct Constraint {
  std::string tag;
  std::string witness;  // agent name or edge name
  std::vector<std::pair<int, int>> terms;  // (edge id, coefficient)
  Relation relation = Relation::AtLeast;
  int rhs = 0;
};

struct Violation {
  std::string tag;
  std::string witness;
  Rational lhs;
  std::string required;  // e.g. ">= 1"

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ViolationReport {
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
  std::size_t count(const std::string& tag) const {
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                  [&](const Violation& v) { return v.tag == tag; }));
  }
};

inline FractionalPoint incidence_vector(const Instance& inst, const Matching& m) {
  FractionalPoint x(inst);
  for (const Edge& p : m.pairs()) x[inst.edge_id(p.man, p.woman)] = 1;
  return x;
}

/// The rows of the super-stable (1a-1c) or strongly stable (3a-3d) system.
inline std::vector<Constraint> linear_system(const Instance& inst, StabilityCriterion model) {
  const bool super = model == StabilityCriterion::Super;
  std::vector<Constraint> rows;
  for (Side s : {Side::Man, Side::Woman}) {
    for (int a = 0; a < inst.count(s); ++a) {
      Constraint c{super ? "1a" : "3a", inst.name(s, a), {}, Relation::AtMost, 1};
      for (int e : inst.incident(s, a)) c.terms.emplace_back(e, 1);
      rows.push_back(std::move(c));
    }
  }
  auto stability_row = [&](const std::string& tag, int e, int tie_side) {
    const Edge ed = inst.edges()[e];
    const int rm = inst.rank(Side::Man, ed.man, ed.woman);
    const int rw = inst.rank(Side::Woman, ed.woman, ed.man);
    Constraint c{tag, inst.edge_name(e), {}, Relation::AtLeast, 1};
    for (int f : inst.incident(Side::Man, ed.man)) {
      const int r = inst.rank(Side::Man, ed.man, inst.edges()[f].woman);
      if (r < rm || (tie_side == 0 && r == rm) || f == e) c.terms.emplace_back(f, 1);
    }
    for (int f : inst.incident(Side::Woman, ed.woman)) {
      if (f == e) continue;
      const int r = inst.rank(Side::Woman, ed.woman, inst.edges()[f].man);
      if (r < rw || (tie_side == 1 && r == rw)) c.terms.emplace_back(f, 1);
    }
    std::sort(c.terms.begin(), c.terms.end());
    return c;
  };
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (super) {
      rows.push_back(stability_row("1b", e, -1));
    } else {
      rows.push_back(stability_row("3b", e, 0));
      rows.push_back(stability_row("3c", e, 1));
    }
  }
  for (int e = 0; e < inst.num_edges(); ++e)
    rows.push_back({super ? "1c" : "3d", inst.edge_name(e), {{e, 1}}, Relation::AtLeast, 0});
  return rows;
}

namespace detail {

inline void require_point(const Instance& inst, const FractionalPoint& x) {
  if (static_cast<int>(x.values.size()) != inst.num_edges())
    throw std::invalid_argument("point does not match the instance's edge set");
}

inline Rational evaluate(const Constraint& c, const FractionalPoint& x) {
  Rational lhs = 0;
  for (auto [e, k] : c.terms) lhs += k * x[e];
  return lhs;
}

inline bool satisfied(const Constraint& c, const Rational& lhs) {
  return c.relation == Relation::AtMost ? lhs <= c.rhs : lhs >= c.rhs;
}

}  // namespace detail

inline ViolationReport check_point(const Instance& inst, const FractionalPoint& x,
                                   StabilityCriterion model) {
  detail::require_point(inst, x);
  ViolationReport report;
  for (const Constraint& c : linear_system(inst, model)) {
    Rational lhs = detail::evaluate(c, x);
    if (!detail::satisfied(c, lhs))
      report.violations.push_back({c.tag, c.witness, std::move(lhs),
                                   (c.relation == Relation::AtMost ? "<= " : ">= ") +
                                       std::to_string(c.rhs)});
  }
  return report;
}

struct DualCertificate {
  std::vector<Rational> alpha_men, alpha_women;
  std::vector<Rational> beta;  // by edge id
};

struct SelfDualResult {
  DualCertificate certificate;
  Rational primal;
  Rational dual;
  std::vector<int> violated_edges;  // dual rows below 1; empty when feasible

  bool dual_feasible() const { return violated_edges.empty(); }
};

/// alpha_v = sum of x around v, beta = x. Checks every dual row
///   alpha_u + alpha_v - sum_{i <_u v} beta_{u,i} - sum_{j <_v u} beta_{v,j} - beta_{u,v} >= 1
/// and both objective values. Throws if x is not in the super-stable system.
inline SelfDualResult self_dual(const Instance& inst, const FractionalPoint& x) {
  if (!check_point(inst, x, StabilityCriterion::Super).feasible())
    throw std::invalid_argument("self_dual: point violates the super-stable system");
  SelfDualResult out;
  DualCertificate& cert = out.certificate;
  cert.alpha_men.assign(inst.num_men(), 0);
  cert.alpha_women.assign(inst.num_women(), 0);
  cert.beta = x.values;
  for (int e = 0; e < inst.num_edges(); ++e) {
    cert.alpha_men[inst.edges()[e].man] += x[e];
    cert.alpha_women[inst.edges()[e].woman] += x[e];
    out.primal += x[e];
  }
  for (const auto& a : cert.alpha_men) out.dual += a;
  for (const auto& a : cert.alpha_women) out.dual += a;
  for (const auto& b : cert.beta) out.dual -= b;

  for (int e = 0; e < inst.num_edges(); ++e) {
    const Edge ed = inst.edges()[e];
    const int rm = inst.rank(Side::Man, ed.man, ed.woman);
    const int rw = inst.rank(Side::Woman, ed.woman, ed.man);
    Rational row = cert.alpha_men[ed.man] + cert.alpha_women[ed.woman] - cert.beta[e];
    for (int f : inst.incident(Side::Man, ed.man))
      if (inst.rank(Side::Man, ed.man, inst.edges()[f].woman) > rm) row -= cert.beta[f];
    for (int f : inst.incident(Side::Woman, ed.woman))
      if (inst.rank(Side::Woman, ed.woman, inst.edges()[f].man) > rw) row -= cert.beta[f];
    if (row < 1) out.violated_edges.push_back(e);
  }
  return out;
}

namespace detail {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1; }
  void grow(std::size_t n) { words_.resize((n + 63) / 64, 0); }
  Bits operator&(const Bits& o) const {
    Bits out;
    out.words_.resize(std::max(words_.size(), o.words_.size()), 0);
    for (std::size_t i = 0; i < std::min(words_.size(), o.words_.size()); ++i)
      out.words_[i] = words_[i] & o.words_[i];
    return out;
  }
  int count() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Rank of small integer rows by fraction-free elimination with gcd
// normalisation; entries stay tiny for 0/1 systems.
inline int integer_rank(std::vector<std::vector<long long>> rows, int cols) {
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][c] == 0) continue;
      const long long f = rows[r][c], p = rows[rank][c];
      long long g = 0;
      for (int k = 0; k < cols; ++k) {
        rows[r][k] = rows[r][k] * p - rows[rank][k] * f;
        g = std::gcd(g, rows[r][k]);
      }
      if (g > 1)
        for (int k = 0; k < cols; ++k) rows[r][k] /= g;
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// All extreme points of the model's system, sorted. Works by double
/// description: start from the unit cube and cut with one row at a time,
/// joining each kept vertex to each discarded neighbour. Two vertices are
/// neighbours when their common tight rows have rank |E| - 1. Throws
/// std::length_error when |E| exceeds `cap`.
inline std::vector<FractionalPoint> vertices(const Instance& inst, StabilityCriterion model,
                                             int cap = 8) {
  const int d = inst.num_edges();
  if (d > cap) throw std::length_error("vertices: edge count exceeds cap");

  // Rows in the form a.x <= b.
  std::vector<std::pair<std::vector<long long>, long long>> rows;
  for (int e = 0; e < d; ++e) {
    std::vector<long long> lo(d, 0), hi(d, 0);
    lo[e] = -1;
    hi[e] = 1;
    rows.emplace_back(lo, 0);
    rows.emplace_back(hi, 1);
  }
  const std::size_t box_rows = rows.size();
  for (const Constraint& c : linear_system(inst, model)) {
    std::vector<long long> a(d, 0);
    const long long sign = c.relation == Relation::AtMost ? 1 : -1;
    for (auto [e, k] : c.terms) a[e] += sign * k;
    const long long b = sign * c.rhs;
    if (std::all_of(a.begin(), a.end(), [](long long v) { return v == 0; })) {
      if (b < 0) return {};
      continue;
    }
    if (std::find(rows.begin(), rows.end(), std::make_pair(a, b)) == rows.end())
      rows.emplace_back(std::move(a), b);
  }

  struct Vertex {
    std::vector<Rational> x;
    detail::Bits tight;
  };
  std::vector<Vertex> current;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    Vertex v{std::vector<Rational>(d), detail::Bits(rows.size())};
    for (int e = 0; e < d; ++e) {
      const bool one = mask >> e & 1;
      v.x[e] = one ? 1 : 0;
      v.tight.set(2 * e + (one ? 1 : 0));
    }
    current.push_back(std::move(v));
  }

  for (std::size_t r = box_rows; r < rows.size() && !current.empty(); ++r) {
    const auto& [a, b] = rows[r];
    std::vector<Rational> slack(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
      Rational ax = 0;
      for (int e = 0; e < d; ++e)
        if (a[e] != 0) ax += a[e] * current[i].x[e];
      slack[i] = b - ax;
    }
    std::vector<Vertex> next;
    for (std::size_t p = 0; p < current.size(); ++p) {
      if (slack[p] <= 0) continue;
      for (std::size_t q = 0; q < current.size(); ++q) {
        if (slack[q] >= 0) continue;
        detail::Bits common = current[p].tight & current[q].tight;
        if (common.count() < d - 1) continue;
        std::vector<std::vector<long long>> sub;
        for (std::size_t k = 0; k < r; ++k)
          if (common.test(k)) sub.push_back(rows[k].first);
        if (detail::integer_rank(std::move(sub), d) != d - 1) continue;
        const Rational t = slack[p] / (slack[p] - slack[q]);
        Vertex v{current[p].x, common};
        for (int e = 0; e < d; ++e) v.x[e] += t * (current[q].x[e] - current[p].x[e]);
        v.tight.set(r);
        next.push_back(std::move(v));
      }
    }
    for (std::size_t p = 0; p < current.size(); ++p) {
      if (slack[p] < 0) continue;
      if (slack[p] == 0) current[p].tight.set(r);
      next.push_back(std::move(current[p]));
    }
    current = std::move(next);
  }

  std::vector<std::vector<Rational>> coords;
  for (auto& v : current) coords.push_back(std::move(v.x));
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  std::vector<FractionalPoint> out;
  for (auto& c : coords) {
    FractionalPoint x;
    x.values = std::move(c);
    out.push_back(std::move(x));
  }
  return out;
}

/// True when every coordinate is 0 or 1.
inline bool is_integral(const FractionalPoint& x) {
  return std::all_of(x.values.begin(), x.values.end(),
                     [](const Rational& v) { return v == 0 || v == 1; });
}

/// The matching whose incidence vector is `x`; throws unless x is a 0/1
/// vector of a matching.
inline Matching matching_from_point(const Instance& inst, const FractionalPoint& x) {
  detail::require_point(inst, x);
  if (!is_integral(x)) throw std::invalid_argument("point is not integral");
  std::vector<Edge> pairs;
  for (int e = 0; e < inst.num_edges(); ++e)
    if (x[e] == 1) pairs.push_back(inst.edges()[e]);
  return Matching::from_pairs(inst, pairs);
}

}  // namespace superstable

#endif  // SUPERSTABLE_POLYTOPE_HPP_
