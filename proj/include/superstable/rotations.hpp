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

// Maximal sequences of super-stable matchings, the rotations between
// consecutive members, and the precedence digraph over those rotations.

#ifndef SUPERSTABLE_ROTATIONS_HPP_
#define SUPERSTABLE_ROTATIONS_HPP_

#include "superstable/instance.hpp"
#include "superstable/matching.hpp"
#include "superstable/stability.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace superstable {

/// Difference between two consecutive matchings of a maximal sequence.
/// Both pair lists are sorted by man.
struct Rotation {
  std::vector<Edge> removed;
  std::vector<Edge> added;
  int index = 0;

  friend bool operator==(const Rotation&, const Rotation&) = default;
};

/// Rotations with the arcs of the labeling construction. An arc (i, j)
/// means rotation i must be eliminated before rotation j.
struct RotationPoset {
  std::vector<Rotation> rotations;
  std::vector<std::pair<int, int>> arcs;

  int size() const { return static_cast<int>(rotations.size()); }

  std::vector<std::vector<int>> predecessors() const {
    std::vector<std::vector<int>> out(rotations.size());
    for (auto [from, to] : arcs) out[to].push_back(from);
    return out;
  }

  /// Kahn's algorithm taking the smallest available index first; nullopt
  /// when the arcs contain a cycle.
  std::optional<std::vector<int>> topological_order() const {
    const int n = size();
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (auto [from, to] : arcs) {
      succ[from].push_back(to);
      ++indeg[to];
    }
    std::vector<int> ready, order;
    for (int i = 0; i < n; ++i)
      if (indeg[i] == 0) ready.push_back(i);
    while (!ready.empty()) {
      auto it = std::min_element(ready.begin(), ready.end());
      const int v = *it;
      ready.erase(it);
      order.push_back(v);
      for (int s : succ[v])
        if (--indeg[s] == 0) ready.push_back(s);
    }
    if (static_cast<int>(order.size()) != n) return std::nullopt;
    return order;
  }
};

namespace detail {

// State of the successor search: the traversal digraph G_d (matched edges
// point woman to man, other traversed edges man to woman), the candidate
// set E_c, and the pool E' of edges not yet traversed. All three are flags
// over edge ids.
class SuccessorSearch {
 public:
  SuccessorSearch(const Instance& inst, Matching m0, Matching mz)
      : inst_(inst),
        m_(std::move(m0)),
        mz_(std::move(mz)),
        nm_(inst.num_men()),
        in_d_(inst.num_edges(), 0),
        in_c_(inst.num_edges(), 0),
        in_pool_(inst.num_edges(), 1),
        cdeg_(nm_ + inst.num_women(), 0),
        exhausted_(nm_, 0) {}

  std::vector<Matching> run() {
    std::vector<Matching> out{m_};
    initialise();
    while (!(m_ == mz_)) {
      bool progress = traverse();
      progress = drop_shared_candidates() || progress;
      progress = eliminate(out) || progress;
      if (!progress) throw std::logic_error("successor search made no progress");
    }
    return out;
  }

 private:
  int man_of(int e) const { return inst_.edges()[e].man; }
  int woman_of(int e) const { return inst_.edges()[e].woman; }
  int woman_vertex(int w) const { return nm_ + w; }
  int rank_m(int m, int w) const { return inst_.rank(Side::Man, m, w); }
  int rank_w(int w, int m) const { return inst_.rank(Side::Woman, w, m); }

  void set_candidate(int e, bool on) {
    if (in_c_[e] == on) return;
    in_c_[e] = on;
    const int d = on ? 1 : -1;
    cdeg_[man_of(e)] += d;
    cdeg_[woman_vertex(woman_of(e))] += d;
  }

  void initialise() {
    for (int m = 0; m < nm_; ++m) {
      const int w = m_.wife(m);
      if (w < 0) continue;
      const int e = inst_.edge_id(m, w);
      in_d_[e] = 1;
      in_pool_[e] = 0;
      if (mz_.wife(m) == w) set_candidate(e, true);
    }
    for (int e = 0; e < inst_.num_edges(); ++e)
      if (m_.wife(man_of(e)) < 0 || m_.husband(woman_of(e)) < 0) in_pool_[e] = 0;
    for (int m = 0; m < nm_; ++m)
      if (m_.wife(m) >= 0) prune_around(m, m_.wife(m));
    dirty_ = true;
  }

  // Edges that can no longer block any later matching once (m, w) is held.
  void prune_around(int m, int w) {
    for (int e : inst_.incident(Side::Woman, w))
      if (rank_better(rank_w(w, m), rank_w(w, man_of(e)))) in_pool_[e] = 0;
    for (int e : inst_.incident(Side::Man, m))
      if (rank_at_least(rank_m(m, woman_of(e)), rank_m(m, w))) in_pool_[e] = 0;
  }

  void refresh() {
    if (!dirty_) return;
    dirty_ = false;
    const int n = nm_ + inst_.num_women();
    std::vector<std::vector<int>> adj(n);
    for (int e = 0; e < inst_.num_edges(); ++e) {
      if (!in_d_[e]) continue;
      const int m = man_of(e), w = woman_vertex(woman_of(e));
      if (m_.wife(m) == woman_of(e))
        adj[w].push_back(m);
      else
        adj[m].push_back(w);
    }
    tarjan(adj);
    sink_.assign(num_comps_, 1);
    for (int v = 0; v < n; ++v)
      for (int u : adj[v])
        if (comp_[u] != comp_[v]) sink_[comp_[v]] = 0;
  }

  void tarjan(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    comp_.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::pair<int, std::size_t>> call;
    int counter = 0;
    num_comps_ = 0;
    for (int root = 0; root < n; ++root) {
      if (index[root] >= 0) continue;
      call.emplace_back(root, 0);
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = 1;
      while (!call.empty()) {
        auto& [v, next] = call.back();
        if (next < adj[v].size()) {
          const int u = adj[v][next++];
          if (index[u] < 0) {
            index[u] = low[u] = counter++;
            stack.push_back(u);
            on_stack[u] = 1;
            call.emplace_back(u, 0);
          } else if (on_stack[u]) {
            low[v] = std::min(low[v], index[u]);
          }
          continue;
        }
        const int done = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        if (low[done] == index[done]) {
          int u;
          do {
            u = stack.back();
            stack.pop_back();
            on_stack[u] = 0;
            comp_[u] = num_comps_;
          } while (u != done);
          ++num_comps_;
        }
      }
    }
  }

  bool in_sink(int v) {
    refresh();
    return sink_[comp_[v]];
  }

  // Men with no candidate in a sink component walk down their lists one
  // tier at a time.
  bool traverse() {
    bool progress = false;
    for (;;) {
      int pick = -1;
      for (int m = 0; m < nm_ && pick < 0; ++m)
        if (m_.wife(m) >= 0 && !exhausted_[m] && cdeg_[m] == 0 && in_sink(m)) pick = m;
      if (pick < 0) return progress;
      const int m = pick;

      std::vector<int> tier;
      for (const auto& t : inst_.prefs(Side::Man, m)) {
        for (int w : t)
          if (const int e = inst_.edge_id(m, w); in_pool_[e]) tier.push_back(e);
        if (!tier.empty()) break;
      }
      if (tier.empty()) {
        exhausted_[m] = 1;
        continue;
      }
      progress = true;
      refresh();
      for (int e : tier) {
        if (!in_d_[e] && comp_[woman_vertex(woman_of(e))] != comp_[m]) dirty_ = true;
        in_d_[e] = 1;
      }
      if (!in_sink(m)) continue;

      const int own = rank_m(m, m_.wife(m));
      for (int e : tier) {
        const int w = woman_of(e);
        if (rank_better(rank_w(w, m), rank_w(w, m_.husband(w))) &&
            rank_better(own, rank_m(m, w))) {
          set_candidate(e, true);
          keep_best_candidates(w);
        }
        in_pool_[e] = 0;
      }
    }
  }

  void keep_best_candidates(int w) {
    int best = 0;
    for (int e : inst_.incident(Side::Woman, w))
      if (in_c_[e] && rank_better(rank_w(w, man_of(e)), best)) best = rank_w(w, man_of(e));
    for (int e : inst_.incident(Side::Woman, w))
      if (in_c_[e] && rank_w(w, man_of(e)) != best) set_candidate(e, false);
  }

  // A woman in a sink component with several (necessarily tied) candidates
  // keeps none of them, nor anything she ranks at or below them.
  bool drop_shared_candidates() {
    bool progress = false;
    for (int w = 0; w < inst_.num_women(); ++w) {
      if (cdeg_[woman_vertex(w)] < 2 || !in_sink(woman_vertex(w))) continue;
      int tier = 0;
      for (int e : inst_.incident(Side::Woman, w))
        if (in_c_[e]) tier = rank_w(w, man_of(e));
      for (int e : inst_.incident(Side::Woman, w)) {
        if (rank_w(w, man_of(e)) >= tier && (in_c_[e] || in_pool_[e])) {
          set_candidate(e, false);
          in_pool_[e] = 0;
          progress = true;
        }
      }
    }
    return progress;
  }

  // Sink components on which the candidates form a perfect matching yield
  // the next matching of the sequence.
  bool eliminate(std::vector<Matching>& out) {
    bool progress = false;
    for (;;) {
      refresh();
      const int n = nm_ + inst_.num_women();
      std::vector<std::vector<int>> members(num_comps_);
      for (int v = 0; v < n; ++v) members[comp_[v]].push_back(v);
      int chosen = -1;
      for (int c = 0; c < num_comps_ && chosen < 0; ++c)
        if (sink_[c] && members[c].size() >= 2 && perfect_on(members[c], c)) chosen = c;
      if (chosen < 0) return progress;
      progress = true;
      apply(members[chosen]);
      out.push_back(m_);
    }
  }

  bool perfect_on(const std::vector<int>& vs, int c) const {
    for (int v : vs) {
      if (cdeg_[v] != 1) return false;
      if (v < nm_) {
        for (int e : inst_.incident(Side::Man, v))
          if (in_c_[e] && comp_[woman_vertex(woman_of(e))] != c) return false;
      }
    }
    return true;
  }

  void apply(const std::vector<int>& vs) {
    std::vector<int> men, women;
    for (int v : vs) (v < nm_ ? men : women).push_back(v < nm_ ? v : v - nm_);
    std::vector<Edge> fresh;
    for (int m : men)
      for (int e : inst_.incident(Side::Man, m))
        if (in_c_[e]) fresh.push_back({m, woman_of(e)});
    for (int m : men) m_.remove(m, m_.wife(m));
    for (const Edge& p : fresh) m_.add(p.man, p.woman);

    for (int m : men) {
      for (int e : inst_.incident(Side::Man, m)) {
        const bool matched = m_.wife(m) == woman_of(e);
        if (in_c_[e] && !(matched && mz_.wife(m) == woman_of(e))) set_candidate(e, false);
        if (in_d_[e] && !matched) in_d_[e] = 0;
      }
    }
    for (int w : women) {
      const int h = m_.husband(w);
      for (int e : inst_.incident(Side::Woman, w)) {
        const int other = man_of(e);
        if (other == h) continue;
        if (rank_better(rank_w(w, h), rank_w(w, other))) in_d_[e] = 0;
        if (in_c_[e] && !rank_better(rank_w(w, other), rank_w(w, h))) set_candidate(e, false);
      }
    }
    for (const Edge& p : fresh) prune_around(p.man, p.woman);
    dirty_ = true;
  }

  const Instance& inst_;
  Matching m_, mz_;
  int nm_;
  std::vector<char> in_d_, in_c_, in_pool_;
  std::vector<int> cdeg_;
  std::vector<char> exhausted_;
  bool dirty_ = true;
  std::vector<int> comp_;
  std::vector<char> sink_;
  int num_comps_ = 0;
};

}  // namespace detail

/// M_0, ..., M_z with each member a strict successor of the previous one;
/// empty when the instance has no super-stable matching.
inline std::vector<Matching> maximal_sequence(const Instance& inst) {
  auto m0 = optimal_super_stable(inst, Side::Man);
  if (!m0) return {};
  auto mz = optimal_super_stable(inst, Side::Woman);
  if (!mz) throw std::logic_error("woman-optimal search disagrees with man-optimal search");
  return detail::SuccessorSearch(inst, std::move(*m0), std::move(*mz)).run();
}

/// Differences between consecutive members of `sequence`.
inline std::vector<Rotation> rotations_of(const std::vector<Matching>& sequence) {
  std::vector<Rotation> out;
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    const Matching& before = sequence[i - 1];
    const Matching& after = sequence[i];
    Rotation r;
    r.index = static_cast<int>(i - 1);
    for (const Edge& p : before.pairs())
      if (!after.contains(p.man, p.woman)) r.removed.push_back(p);
    for (const Edge& p : after.pairs())
      if (!before.contains(p.man, p.woman)) r.added.push_back(p);
    if (r.removed.empty() && r.added.empty())
      throw std::invalid_argument("rotations_of: consecutive matchings are equal");
    out.push_back(std::move(r));
  }
  return out;
}

/// Labels each man's list with the rotations that move him off a woman
/// (type 1) or move a woman past him (type 2), then reads the arcs off one
/// scan per list. A type-2 label only yields an arc when the last rotation
/// seen actually lands the man at or below the labelled woman.
inline RotationPoset precedence_digraph(const Instance& inst, const Matching& /*m0*/,
                                        const std::vector<Rotation>& rotations) {
  struct Label {
    int rank;
    int type;
    int rotation;
    int landing;  // type 1: rank of the partner the rotation moves the man to
    auto operator<=>(const Label&) const = default;
  };
  std::vector<std::vector<Label>> labels(inst.num_men());
  const int n = static_cast<int>(rotations.size());
  for (int r = 0; r < n; ++r) {
    const Rotation& rho = rotations[r];
    std::vector<int> new_husband(inst.num_women(), -1), new_wife(inst.num_men(), -1);
    for (const Edge& p : rho.added) {
      if (p.man < 0 || p.man >= inst.num_men() || p.woman < 0 ||
          p.woman >= inst.num_women() || !inst.is_edge(p.man, p.woman))
        throw std::invalid_argument("precedence_digraph: rotation pair is not an edge");
      new_husband[p.woman] = p.man;
      new_wife[p.man] = p.woman;
    }
    for (const Edge& p : rho.removed) {
      if (p.man < 0 || p.man >= inst.num_men() || p.woman < 0 ||
          p.woman >= inst.num_women() || !inst.is_edge(p.man, p.woman))
        throw std::invalid_argument("precedence_digraph: rotation pair is not an edge");
      const int w = p.woman, old_m = p.man, new_m = new_husband[w];
      if (new_m < 0 || new_wife[old_m] < 0)
        throw std::invalid_argument("precedence_digraph: agent left without a new partner");
      labels[old_m].push_back({inst.rank(Side::Man, old_m, w), 1, r,
                               inst.rank(Side::Man, old_m, new_wife[old_m])});
      const int hi = inst.rank(Side::Woman, w, new_m);
      const int lo = inst.rank(Side::Woman, w, old_m);
      for (int e : inst.incident(Side::Woman, w)) {
        const int m = inst.edges()[e].man;
        const int rk = inst.rank(Side::Woman, w, m);
        if (m != old_m && rk > hi && rk <= lo)
          labels[m].push_back({inst.rank(Side::Man, m, w), 0, r, 0});
      }
    }
  }

  std::vector<std::pair<int, int>> arcs;
  for (auto& list : labels) {
    std::sort(list.begin(), list.end());
    int last = -1, landing = 0;
    for (const Label& l : list) {
      if (l.type == 1) {
        if (last >= 0 && last != l.rotation) arcs.emplace_back(last, l.rotation);
        last = l.rotation;
        landing = l.landing;
      } else if (last >= 0 && last != l.rotation && landing >= l.rank) {
        arcs.emplace_back(l.rotation, last);
      }
    }
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return {rotations, std::move(arcs)};
}

/// Everything the rotation representation needs: the sequence it was read
/// from, and the poset.
struct RotationStructure {
  std::vector<Matching> sequence;
  RotationPoset poset;

  const Matching& man_optimal() const { return sequence.front(); }
  const Matching& woman_optimal() const { return sequence.back(); }
};

inline std::optional<RotationStructure> rotation_structure(const Instance& inst) {
  auto seq = maximal_sequence(inst);
  if (seq.empty()) return std::nullopt;
  auto poset = precedence_digraph(inst, seq.front(), rotations_of(seq));
  return RotationStructure{std::move(seq), std::move(poset)};
}

}  // namespace superstable

#endif  // SUPERSTABLE_ROTATIONS_HPP_
