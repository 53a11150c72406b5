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

// Brute-force reference implementations for small instances. Nothing here
// calls into the solvers; blocking and dominance are re-derived from the
// definitions so the oracle can referee the rest of the library.

#ifndef SUPERSTABLE_ORACLE_HPP_
#define SUPERSTABLE_ORACLE_HPP_

#include "superstable/instance.hpp"
#include "superstable/matching.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace superstable::oracle {

inline constexpr int kMaxEdges = 24;

inline void check_guard(const Instance& inst) {
  if (inst.num_edges() > kMaxEdges)
    throw std::length_error("oracle: instance has " + std::to_string(inst.num_edges()) +
                            " edges, limit is " + std::to_string(kMaxEdges));
}

/// Calls `visit` once per matching (the empty one first), branching on edges
/// in id order with "exclude" before "include". Stops early when `visit`
/// returns false.
inline void for_each_matching(const Instance& inst,
                              const std::function<bool(const Matching&)>& visit) {
  check_guard(inst);
  Matching current(inst);
  const auto& edges = inst.edges();
  bool stop = false;
  std::function<void(int)> rec = [&](int e) {
    if (stop) return;
    if (e == static_cast<int>(edges.size())) {
      stop = !visit(current);
      return;
    }
    rec(e + 1);
    const Edge& ed = edges[e];
    if (current.wife(ed.man) < 0 && current.husband(ed.woman) < 0) {
      current.add(ed.man, ed.woman);
      rec(e + 1);
      current.remove(ed.man, ed.woman);
    }
  };
  rec(0);
}

inline std::vector<Matching> enumerate_matchings(const Instance& inst) {
  std::vector<Matching> out;
  for_each_matching(inst, [&](const Matching& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

namespace detail {

// "x is no worse off with y than with its partner"; an unmatched x always is.
inline bool no_worse(const Instance& inst, Side side, int x, int y, int partner) {
  if (partner < 0) return true;
  return inst.rank(side, x, y) <= inst.rank(side, x, partner);
}

inline bool strictly_better(const Instance& inst, Side side, int x, int y, int partner) {
  if (partner < 0) return true;
  return inst.rank(side, x, y) < inst.rank(side, x, partner);
}

}  // namespace detail

/// Direct reading of the blocking definitions for one acceptable pair.
inline bool is_blocking(const Instance& inst, const Matching& match, int man, int woman,
                        StabilityCriterion crit) {
  if (!inst.is_edge(man, woman) || match.wife(man) == woman) return false;
  const int her = match.wife(man);
  const int him = match.husband(woman);
  const bool man_ok = detail::no_worse(inst, Side::Man, man, woman, her);
  const bool woman_ok = detail::no_worse(inst, Side::Woman, woman, man, him);
  if (crit == StabilityCriterion::Super) return man_ok && woman_ok;
  const bool man_up = detail::strictly_better(inst, Side::Man, man, woman, her);
  const bool woman_up = detail::strictly_better(inst, Side::Woman, woman, man, him);
  return (man_up && woman_ok) || (woman_up && man_ok);
}

inline bool is_stable(const Instance& inst, const Matching& match,
                      StabilityCriterion crit) {
  for (int m = 0; m < inst.num_men(); ++m)
    for (int w = 0; w < inst.num_women(); ++w)
      if (is_blocking(inst, match, m, w, crit)) return false;
  return true;
}

/// All matchings without a blocking pair under `crit`, in enumeration order.
inline std::vector<Matching> brute_stable_set(const Instance& inst,
                                              StabilityCriterion crit) {
  std::vector<Matching> out;
  for_each_matching(inst, [&](const Matching& m) {
    if (is_stable(inst, m, crit)) out.push_back(m);
    return true;
  });
  return out;
}

/// Every agent of `side` weakly prefers its partner in `a` to the one in `b`
/// (being matched beats being unmatched).
inline bool side_weakly_prefers(const Instance& inst, Side side, const Matching& a,
                                const Matching& b) {
  for (int x = 0; x < inst.count(side); ++x) {
    const int pa = a.partner(side, x);
    const int pb = b.partner(side, x);
    if (pb < 0) continue;
    if (pa < 0) return false;
    if (inst.rank(side, x, pa) > inst.rank(side, x, pb)) return false;
  }
  return true;
}

/// The member of `set` that `side` weakly prefers to every other member, if
/// one exists.
inline std::optional<Matching> optimal_in(const Instance& inst,
                                          const std::vector<Matching>& set, Side side) {
  for (const auto& cand : set) {
    bool best = true;
    for (const auto& other : set)
      if (!side_weakly_prefers(inst, side, cand, other)) {
        best = false;
        break;
      }
    if (best) return cand;
  }
  return std::nullopt;
}

/// A maximal chain of `set` (super-stable matchings) from the man-optimal to
/// the woman-optimal element, built from covering pairs. Picks the last
/// cover in enumeration order at each step, so it generally differs from the
/// chain produced by the successor search.
inline std::vector<Matching> maximal_chain(const Instance& inst,
                                           const std::vector<Matching>& set) {
  std::vector<Matching> chain;
  auto top = optimal_in(inst, set, Side::Man);
  if (!top) return chain;
  chain.push_back(*top);
  auto strictly_above = [&](const Matching& a, const Matching& b) {
    return a != b && side_weakly_prefers(inst, Side::Man, a, b);
  };
  while (true) {
    const Matching& cur = chain.back();
    std::optional<Matching> cover;
    for (const auto& n : set) {
      if (!strictly_above(cur, n)) continue;
      bool between = false;
      for (const auto& k : set)
        if (strictly_above(cur, k) && strictly_above(k, n)) {
          between = true;
          break;
        }
      if (!between) cover = n;
    }
    if (!cover) break;
    chain.push_back(*cover);
  }
  return chain;
}

}  // namespace superstable::oracle

#endif  // SUPERSTABLE_ORACLE_HPP_
