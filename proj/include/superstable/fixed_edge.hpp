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

// Man-optimal super-stable matching through a fixed edge, and the family of
// such matchings ordered by P-set containment.
//
// The P-set of a super-stable matching M is the set of pairs (m, w) with
// w weakly preferred by m to M(m). P-sets of all super-stable matchings form
// a ring of sets; its irreducible elements are exactly the man-optimal
// matchings containing a given edge, and the down-closed subsets of those
// elements generate every super-stable matching by union.

#ifndef SUPERSTABLE_FIXED_EDGE_HPP_
#define SUPERSTABLE_FIXED_EDGE_HPP_

#include "superstable/instance.hpp"
#include "superstable/matching.hpp"
#include "superstable/stability.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace superstable {

/// Sorted edge ids.
using PairSet = std::vector<int>;

namespace detail {

inline void require_edge(const Instance& inst, Edge e) {
  if (e.man < 0 || e.man >= inst.num_men() || e.woman < 0 ||
      e.woman >= inst.num_women() || !inst.is_edge(e.man, e.woman))
    throw std::invalid_argument("not an edge of the instance");
}

}  // namespace detail

/// Instance left after fixing (m, w): m and w disappear with their edges, and
/// so does every pair that could never coexist with (m, w) in a super-stable
/// matching. For each m' whom w ranks at least as high as m, pairs (m', w')
/// with w' no better than w for m' go; symmetrically for each w' whom m ranks
/// at least as high as w. Surviving tiers keep their order; emptied tiers are
/// dropped.
inline Instance reduce_for_edge(const Instance& inst, Edge e) {
  detail::require_edge(inst, e);
  const int m = e.man, w = e.woman;
  std::vector<char> gone(inst.num_edges(), 0);

  for (int eid : inst.incident(Side::Woman, w)) {
    const int m2 = inst.edges()[eid].man;
    if (inst.rank(Side::Woman, w, m2) > inst.rank(Side::Woman, w, m)) continue;
    const int limit = inst.rank(Side::Man, m2, w);
    for (int f : inst.incident(Side::Man, m2))
      if (inst.rank(Side::Man, m2, inst.edges()[f].woman) >= limit) gone[f] = 1;
  }
  for (int eid : inst.incident(Side::Man, m)) {
    const int w2 = inst.edges()[eid].woman;
    if (inst.rank(Side::Man, m, w2) > inst.rank(Side::Man, m, w)) continue;
    const int limit = inst.rank(Side::Woman, w2, m);
    for (int f : inst.incident(Side::Woman, w2))
      if (inst.rank(Side::Woman, w2, inst.edges()[f].man) >= limit) gone[f] = 1;
  }

  std::vector<int> new_index[2] = {std::vector<int>(inst.num_men(), -1),
                                   std::vector<int>(inst.num_women(), -1)};
  std::vector<std::string> names[2];
  for (Side s : {Side::Man, Side::Woman}) {
    const int si = s == Side::Man ? 0 : 1;
    const int skip = s == Side::Man ? m : w;
    for (int a = 0; a < inst.count(s); ++a) {
      if (a == skip) continue;
      new_index[si][a] = static_cast<int>(names[si].size());
      names[si].push_back(inst.name(s, a));
    }
  }
  std::vector<PreferenceList> prefs[2];
  for (Side s : {Side::Man, Side::Woman}) {
    const int si = s == Side::Man ? 0 : 1;
    for (int a = 0; a < inst.count(s); ++a) {
      if (new_index[si][a] < 0) continue;
      PreferenceList tiers;
      for (const auto& tier : inst.prefs(s, a)) {
        std::vector<int> kept;
        for (int p : tier) {
          const int eid = s == Side::Man ? inst.edge_id(a, p) : inst.edge_id(p, a);
          if (!gone[eid] && new_index[1 - si][p] >= 0) kept.push_back(new_index[1 - si][p]);
        }
        if (!kept.empty()) tiers.push_back(std::move(kept));
      }
      prefs[si].push_back(std::move(tiers));
    }
  }
  return Instance(std::move(names[0]), std::move(names[1]), std::move(prefs[0]),
                  std::move(prefs[1]));
}

/// Man-optimal super-stable matching containing `e`, or nullopt if no
/// super-stable matching contains it.
inline std::optional<Matching> optimal_with_edge(const Instance& inst, Edge e) {
  const Instance reduced = reduce_for_edge(inst, e);
  const auto sub = optimal_super_stable(reduced, Side::Man);
  if (!sub) return std::nullopt;
  Matching out(inst);
  out.add(e.man, e.woman);
  for (const Edge& p : sub->pairs())
    out.add(*inst.find(Side::Man, reduced.name(Side::Man, p.man)),
            *inst.find(Side::Woman, reduced.name(Side::Woman, p.woman)));
  if (!is_super_stable(inst, out)) return std::nullopt;
  return out;
}

/// Pairs (m, w) with w weakly preferred by m to M(m), ties included, over
/// matched men. `M` must be super-stable.
inline PairSet p_set(const Instance& inst, const Matching& match) {
  if (!is_super_stable(inst, match))
    throw std::invalid_argument("p_set: matching is not super-stable");
  PairSet out;
  for (int m = 0; m < inst.num_men(); ++m) {
    const int w = match.wife(m);
    if (w < 0) continue;
    const int limit = inst.rank(Side::Man, m, w);
    for (int e : inst.incident(Side::Man, m))
      if (inst.rank(Side::Man, m, inst.edges()[e].woman) <= limit) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct IrreducibleElement {
  Matching matching;
  std::vector<int> witnesses;  // edge ids whose man-optimal matching this is
  PairSet pairs;
};

/// Irreducible super-stable matchings with strict P-set containment.
struct IrreduciblePoset {
  std::vector<IrreducibleElement> elements;
  /// below[i][j]: P-set of i is a proper subset of P-set of j.
  std::vector<std::vector<bool>> below;

  /// Hasse diagram edges (i, j): i below j with nothing in between.
  std::vector<std::pair<int, int>> covers() const {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(elements.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!below[i][j]) continue;
        bool direct = true;
        for (int k = 0; k < n && direct; ++k) direct = !(below[i][k] && below[k][j]);
        if (direct) out.emplace_back(i, j);
      }
    return out;
  }
};

/// Runs the fixed-edge search for every edge, merges edges that share a
/// matching, and orders the results by P-set containment. Throws
/// std::invalid_argument when the instance has no super-stable matching.
inline IrreduciblePoset irreducible_poset(const Instance& inst) {
  if (!optimal_super_stable(inst, Side::Man))
    throw std::invalid_argument("irreducible_poset: no super-stable matching exists");
  IrreduciblePoset poset;
  for (int e = 0; e < inst.num_edges(); ++e) {
    auto m = optimal_with_edge(inst, inst.edges()[e]);
    if (!m) continue;
    auto it = std::find_if(poset.elements.begin(), poset.elements.end(),
                           [&](const IrreducibleElement& el) { return el.matching == *m; });
    if (it != poset.elements.end()) {
      it->witnesses.push_back(e);
      continue;
    }
    PairSet ps = p_set(inst, *m);
    poset.elements.push_back({std::move(*m), {e}, std::move(ps)});
  }
  const std::size_t n = poset.elements.size();
  poset.below.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = poset.elements[i].pairs;
      const auto& b = poset.elements[j].pairs;
      poset.below[i][j] =
          a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
    }
  return poset;
}

}  // namespace superstable

#endif  // SUPERSTABLE_FIXED_EDGE_HPP_
