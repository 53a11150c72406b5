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

// The distributive lattice of super-stable matchings, seen through the
// closed subsets of the rotation poset.

#ifndef SUPERSTABLE_LATTICE_HPP_
#define SUPERSTABLE_LATTICE_HPP_

#include "superstable/instance.hpp"
#include "superstable/matching.hpp"
#include "superstable/rational.hpp"
#include "superstable/rotations.hpp"
#include "superstable/stability.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace superstable {

/// Membership flags over rotation indices.
struct ClosedSubset {
  std::vector<bool> members;

  ClosedSubset() = default;
  explicit ClosedSubset(int n) : members(n, false) {}

  bool contains(int r) const { return members[r]; }
  int count() const { return static_cast<int>(std::count(members.begin(), members.end(), true)); }
  std::vector<int> indices() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(members.size()); ++i)
      if (members[i]) out.push_back(i);
    return out;
  }
  bool subset_of(const ClosedSubset& other) const {
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i] && !other.members[i]) return false;
    return true;
  }

  friend bool operator==(const ClosedSubset&, const ClosedSubset&) = default;
};

inline bool is_closed(const RotationPoset& poset, const ClosedSubset& s) {
  if (static_cast<int>(s.members.size()) != poset.size()) return false;
  for (auto [from, to] : poset.arcs)
    if (s.contains(to) && !s.contains(from)) return false;
  return true;
}

namespace detail {

inline bool exposed(const Matching& m, const Rotation& r) {
  return std::all_of(r.removed.begin(), r.removed.end(),
                     [&](const Edge& p) { return m.contains(p.man, p.woman); });
}

inline void eliminate(Matching& m, const Rotation& r) {
  for (const Edge& p : r.removed) m.remove(p.man, p.woman);
  for (const Edge& p : r.added) m.add(p.man, p.woman);
}

inline void restore(Matching& m, const Rotation& r) {
  for (const Edge& p : r.added) m.remove(p.man, p.woman);
  for (const Edge& p : r.removed) m.add(p.man, p.woman);
}

}  // namespace detail

/// Eliminates the rotations of `s` from `m0` in topological order.
inline Matching matching_of(const Matching& m0, const RotationPoset& poset, const ClosedSubset& s) {
  if (!is_closed(poset, s)) throw std::invalid_argument("matching_of: subset is not closed");
  const auto order = poset.topological_order();
  if (!order) throw std::invalid_argument("matching_of: rotation digraph has a cycle");
  Matching m = m0;
  for (int r : *order) {
    if (!s.contains(r)) continue;
    if (!detail::exposed(m, poset.rotations[r]))
      throw std::invalid_argument("matching_of: rotation is not exposed");
    detail::eliminate(m, poset.rotations[r]);
  }
  return m;
}

/// Visits every closed subset with its matching. Rotations are decided in
/// index order, exclusion first, so the first visit is the empty subset
/// (M_0). Return false from the visitor to stop early.
inline void for_each_closed_subset(
    const RotationStructure& rs,
    const std::function<bool(const ClosedSubset&, const Matching&)>& visit) {
  const RotationPoset& poset = rs.poset;
  const int n = poset.size();
  for (auto [from, to] : poset.arcs)
    if (from >= to) throw std::logic_error("rotation indices are not a topological order");
  const auto preds = poset.predecessors();
  ClosedSubset s(n);
  Matching m = rs.man_optimal();
  bool stop = false;

  std::function<void(int)> dfs = [&](int i) {
    if (stop) return;
    if (i == n) {
      if (!visit(s, m)) stop = true;
      return;
    }
    dfs(i + 1);
    if (stop) return;
    const bool allowed =
        std::all_of(preds[i].begin(), preds[i].end(), [&](int p) { return s.contains(p); });
    if (!allowed) return;
    const Rotation& r = poset.rotations[i];
    if (!detail::exposed(m, r)) throw std::logic_error("closed subset left a rotation unexposed");
    s.members[i] = true;
    detail::eliminate(m, r);
    dfs(i + 1);
    detail::restore(m, r);
    s.members[i] = false;
  };
  dfs(0);
}

/// Every super-stable matching, each once; at most `limit` when given.
inline std::vector<Matching> enumerate_all(const Instance& inst,
                                           std::optional<long long> limit = std::nullopt) {
  std::vector<Matching> out;
  if (limit && *limit <= 0) return out;
  const auto rs = rotation_structure(inst);
  if (!rs) return out;
  for_each_closed_subset(*rs, [&](const ClosedSubset&, const Matching& m) {
    out.push_back(m);
    return !limit || static_cast<long long>(out.size()) < *limit;
  });
  return out;
}

/// (join, meet): each man gets the better, respectively worse, of his two
/// partners.
inline std::pair<Matching, Matching> join_meet(const Instance& inst, const Matching& a,
                                               const Matching& b) {
  if (!is_super_stable(inst, a) || !is_super_stable(inst, b))
    throw std::invalid_argument("join_meet: inputs must be super-stable");
  Matching join(inst), meet(inst);
  for (int m = 0; m < inst.num_men(); ++m) {
    const int wa = a.wife(m), wb = b.wife(m);
    if (wa < 0 && wb < 0) continue;
    if (wa < 0 || wb < 0) throw std::logic_error("super-stable matchings disagree on matched men");
    const int ra = inst.rank(Side::Man, m, wa), rb = inst.rank(Side::Man, m, wb);
    if (ra == rb && wa != wb) throw std::logic_error("man holds two tied partners");
    join.add(m, ra <= rb ? wa : wb);
    meet.add(m, ra <= rb ? wb : wa);
  }
  return {join, meet};
}

inline Rational matching_weight(const Instance& inst, const Matching& m, const Weights& wts) {
  Rational total = 0;
  for (const Edge& p : m.pairs()) total += wts[inst.edge_id(p.man, p.woman)];
  return total;
}

namespace detail {

// Edmonds-Karp on exact integers; the graph is small (rotations plus two).
class MaxFlow {
 public:
  explicit MaxFlow(int n) : adj_(n) {}

  void add_arc(int u, int v, BigInt cap) {
    adj_[u].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({v, std::move(cap)});
    adj_[v].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({u, BigInt(0)});
  }

  BigInt run(int s, int t) {
    BigInt total = 0;
    for (;;) {
      std::vector<int> via(adj_.size(), -1);
      std::deque<int> queue{s};
      std::vector<char> seen(adj_.size(), 0);
      seen[s] = 1;
      while (!queue.empty() && !seen[t]) {
        const int u = queue.front();
        queue.pop_front();
        for (int id : adj_[u]) {
          const int v = arcs_[id].to;
          if (seen[v] || arcs_[id].cap <= 0) continue;
          seen[v] = 1;
          via[v] = id;
          queue.push_back(v);
        }
      }
      if (!seen[t]) return total;
      BigInt push = -1;
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to)
        if (push < 0 || arcs_[via[v]].cap < push) push = arcs_[via[v]].cap;
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].cap -= push;
        arcs_[via[v] ^ 1].cap += push;
      }
      total += push;
    }
  }

  std::vector<char> reachable(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int id : adj_[u])
        if (arcs_[id].cap > 0 && !seen[arcs_[id].to]) {
          seen[arcs_[id].to] = 1;
          stack.push_back(arcs_[id].to);
        }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    BigInt cap;
  };
  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
};

}  // namespace detail

/// A maximum-weight super-stable matching and its weight; among optimal
/// closed subsets the inclusion-minimal one is used. nullopt when the
/// instance has no super-stable matching.
inline std::optional<std::pair<Matching, Rational>> max_weight(const Instance& inst,
                                                               const Weights& wts) {
  if (static_cast<int>(wts.values.size()) != inst.num_edges())
    throw std::invalid_argument("max_weight: weights do not match the instance");
  const auto rs = rotation_structure(inst);
  if (!rs) return std::nullopt;
  const RotationPoset& poset = rs->poset;
  const int n = poset.size();

  std::vector<Rational> value(n);
  BigInt scale = 1;
  for (int r = 0; r < n; ++r) {
    for (const Edge& p : poset.rotations[r].added) value[r] += wts[inst.edge_id(p.man, p.woman)];
    for (const Edge& p : poset.rotations[r].removed)
      value[r] -= wts[inst.edge_id(p.man, p.woman)];
    const BigInt d = boost::multiprecision::denominator(value[r]);
    scale = scale / boost::multiprecision::gcd(scale, d) * d;
  }
  std::vector<BigInt> scaled(n);
  BigInt infinite = 1;
  for (int r = 0; r < n; ++r) {
    scaled[r] = boost::multiprecision::numerator(Rational(value[r] * scale));
    infinite += boost::multiprecision::abs(scaled[r]);
  }

  const int source = n, sink = n + 1;
  detail::MaxFlow flow(n + 2);
  for (int r = 0; r < n; ++r) {
    if (scaled[r] > 0) flow.add_arc(source, r, scaled[r]);
    if (scaled[r] < 0) flow.add_arc(r, sink, -scaled[r]);
  }
  for (auto [from, to] : poset.arcs) flow.add_arc(to, from, infinite);
  flow.run(source, sink);
  const auto side = flow.reachable(source);

  ClosedSubset chosen(n);
  for (int r = 0; r < n; ++r) chosen.members[r] = side[r];
  Matching best = matching_of(rs->man_optimal(), poset, chosen);
  Rational total = matching_weight(inst, best, wts);
  return std::make_pair(std::move(best), std::move(total));
}

}  // namespace superstable

#endif  // SUPERSTABLE_LATTICE_HPP_
