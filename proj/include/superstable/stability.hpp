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

#ifndef SUPERSTABLE_STABILITY_HPP_
#define SUPERSTABLE_STABILITY_HPP_

#include "superstable/instance.hpp"
#include "superstable/matching.hpp"

#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

namespace superstable {

/// True when `m` is a matching of `inst`: sizes agree, the partner maps are
/// mutually consistent and every pair is an edge.
inline bool is_matching_of(const Instance& inst, const Matching& m) {
  if (m.num_men() != inst.num_men() || m.num_women() != inst.num_women()) return false;
  for (int a = 0; a < inst.num_men(); ++a) {
    const int w = m.wife(a);
    if (w < 0) continue;
    if (w >= inst.num_women() || m.husband(w) != a || !inst.is_edge(a, w)) return false;
  }
  for (int w = 0; w < inst.num_women(); ++w) {
    const int a = m.husband(w);
    if (a >= 0 && (a >= inst.num_men() || m.wife(a) != w)) return false;
  }
  return true;
}

namespace detail {

inline void require_matching(const Instance& inst, const Matching& m) {
  if (!is_matching_of(inst, m))
    throw std::invalid_argument("not a matching of the instance");
}

/// Rank an agent gives its current partner (0 if unmatched).
inline int partner_rank(const Instance& inst, const Matching& m, Side s, int agent) {
  const int p = m.partner(s, agent);
  return p < 0 ? 0 : inst.rank(s, agent, p);
}

inline bool blocks(const Instance& inst, const Matching& m, int e,
                   StabilityCriterion crit) {
  const Edge& ed = inst.edges()[e];
  if (m.contains(ed.man, ed.woman)) return false;
  const int rm = inst.rank(Side::Man, ed.man, ed.woman);
  const int rw = inst.rank(Side::Woman, ed.woman, ed.man);
  const int cm = partner_rank(inst, m, Side::Man, ed.man);
  const int cw = partner_rank(inst, m, Side::Woman, ed.woman);
  const bool man_weak = rank_at_least(rm, cm);
  const bool woman_weak = rank_at_least(rw, cw);
  if (crit == StabilityCriterion::Super) return man_weak && woman_weak;
  return man_weak && woman_weak && (rank_better(rm, cm) || rank_better(rw, cw));
}

}  // namespace detail

/// Edges outside `m` that block it, in edge-id order. For Super an edge
/// blocks when neither endpoint would be worse off; for Strong one endpoint
/// must strictly improve while the other is no worse off.
inline std::vector<int> blocking_edges(const Instance& inst, const Matching& m,
                                       StabilityCriterion crit) {
  detail::require_matching(inst, m);
  std::vector<int> out;
  for (int e = 0; e < inst.num_edges(); ++e)
    if (detail::blocks(inst, m, e, crit)) out.push_back(e);
  return out;
}

inline bool is_super_stable(const Instance& inst, const Matching& m) {
  detail::require_matching(inst, m);
  for (int e = 0; e < inst.num_edges(); ++e)
    if (detail::blocks(inst, m, e, StabilityCriterion::Super)) return false;
  return true;
}

inline bool is_strongly_stable(const Instance& inst, const Matching& m) {
  detail::require_matching(inst, m);
  for (int e = 0; e < inst.num_edges(); ++e)
    if (detail::blocks(inst, m, e, StabilityCriterion::Strong)) return false;
  return true;
}

namespace detail {

/// Proposal/deletion search for the man-optimal super-stable matching.
///
/// Free men propose to their whole head tier. A proposal deletes every pair
/// the woman ranks strictly below the proposer. A woman holding several
/// proposals loses all of them together with her whole tail tier. When no
/// free man with a non-empty list remains, the engagements form the answer
/// unless a woman who once received a proposal ended up free, or a man
/// holds more than one engagement.
class ManOptimalSearch {
 public:
  explicit ManOptimalSearch(const Instance& inst)
      : inst_(inst),
        deleted_(inst.num_edges(), 0),
        head_(inst.num_men(), 0),
        tail_(inst.num_women()),
        men_engaged_(inst.num_men()),
        women_engaged_(inst.num_women()),
        proposed_to_(inst.num_women(), false),
        queued_(inst.num_men(), false) {
    for (int w = 0; w < inst.num_women(); ++w)
      tail_[w] = inst.list_length(Side::Woman, w) - 1;
  }

  std::optional<Matching> run() {
    for (int m = 0; m < inst_.num_men(); ++m) enqueue(m);
    while (true) {
      while (!queue_.empty()) {
        const int m = queue_.front();
        queue_.pop_front();
        queued_[m] = false;
        if (!men_engaged_[m].empty()) continue;
        propose_head(m);
      }
      bool changed = false;
      for (int w = 0; w < inst_.num_women(); ++w) {
        if (women_engaged_[w].size() < 2) continue;
        changed = true;
        const std::vector<int> held = women_engaged_[w];
        for (int m : held) disengage(m, w);
        retreat_tail(w);
        if (tail_[w] >= 0) {
          for (int m : inst_.prefs(Side::Woman, w)[tail_[w]]) erase(m, w);
          --tail_[w];
        }
      }
      if (!changed && queue_.empty()) break;
    }

    Matching out(inst_);
    for (int w = 0; w < inst_.num_women(); ++w)
      if (proposed_to_[w] && women_engaged_[w].empty()) return std::nullopt;
    for (int m = 0; m < inst_.num_men(); ++m) {
      if (men_engaged_[m].size() > 1) return std::nullopt;
      if (men_engaged_[m].size() == 1) out.add(m, men_engaged_[m].front());
    }
    // The engagement relation should already be super-stable here; the
    // re-check keeps a faulty deletion order from leaking a wrong answer.
    if (!is_super_stable(inst_, out)) return std::nullopt;
    return out;
  }

 private:
  void enqueue(int m) {
    if (!queued_[m]) {
      queued_[m] = true;
      queue_.push_back(m);
    }
  }

  bool is_deleted(int m, int w) const { return deleted_[inst_.edge_id(m, w)] != 0; }

  void engage(int m, int w) {
    men_engaged_[m].push_back(w);
    women_engaged_[w].push_back(m);
  }

  static void drop(std::vector<int>& v, int x) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == x) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        return;
      }
  }

  void disengage(int m, int w) {
    drop(men_engaged_[m], w);
    drop(women_engaged_[w], m);
    if (men_engaged_[m].empty()) enqueue(m);
  }

  void erase(int m, int w) {
    const int e = inst_.edge_id(m, w);
    if (deleted_[e]) return;
    deleted_[e] = 1;
    for (int x : women_engaged_[w])
      if (x == m) {
        disengage(m, w);
        break;
      }
  }

  void retreat_tail(int w) {
    const auto& tiers = inst_.prefs(Side::Woman, w);
    while (tail_[w] >= 0) {
      bool live = false;
      for (int m : tiers[tail_[w]]) live = live || !is_deleted(m, w);
      if (live) break;
      --tail_[w];
    }
  }

  void propose_head(int m) {
    const auto& tiers = inst_.prefs(Side::Man, m);
    while (head_[m] < static_cast<int>(tiers.size())) {
      std::vector<int> head;
      for (int w : tiers[head_[m]])
        if (!is_deleted(m, w)) head.push_back(w);
      if (!head.empty()) {
        for (int w : head) {
          if (is_deleted(m, w)) continue;
          engage(m, w);
          proposed_to_[w] = true;
          const int keep = inst_.rank(Side::Woman, w, m) - 1;
          const auto& wt = inst_.prefs(Side::Woman, w);
          for (int t = tail_[w]; t > keep; --t)
            for (int x : wt[t]) erase(x, w);
          tail_[w] = std::min(tail_[w], keep);
        }
        return;
      }
      ++head_[m];
    }
  }

  const Instance& inst_;
  std::vector<char> deleted_;
  std::vector<int> head_;
  std::vector<int> tail_;
  std::vector<std::vector<int>> men_engaged_;
  std::vector<std::vector<int>> women_engaged_;
  std::vector<bool> proposed_to_;
  std::vector<bool> queued_;
  std::deque<int> queue_;
};

}  // namespace detail

/// Super-stable matching that is optimal for `side` (every agent of that side
/// weakly prefers it to any other super-stable matching), or nullopt when the
/// instance admits no super-stable matching.
inline std::optional<Matching> optimal_super_stable(const Instance& inst,
                                                    Side side = Side::Man) {
  if (side == Side::Woman) {
    const Instance swapped = swap_sides(inst);
    auto result = detail::ManOptimalSearch(swapped).run();
    if (!result) return std::nullopt;
    return result->transposed();
  }
  return detail::ManOptimalSearch(inst).run();
}

namespace detail {

/// Every man weakly prefers his partner in `a` to his partner in `b`.
inline bool men_weakly_prefer(const Instance& inst, const Matching& a, const Matching& b) {
  for (int m = 0; m < inst.num_men(); ++m) {
    if (!rank_at_least(partner_rank(inst, a, Side::Man, m),
                       partner_rank(inst, b, Side::Man, m)))
      return false;
  }
  return true;
}

}  // namespace detail

/// M dominates N when every man weakly prefers M(m) to N(m). Both arguments
/// must be super-stable; std::invalid_argument otherwise.
inline bool dominates(const Instance& inst, const Matching& m, const Matching& n) {
  if (!is_super_stable(inst, m) || !is_super_stable(inst, n))
    throw std::invalid_argument("dominates: both matchings must be super-stable");
  return detail::men_weakly_prefer(inst, m, n);
}

}  // namespace superstable

#endif  // SUPERSTABLE_STABILITY_HPP_
