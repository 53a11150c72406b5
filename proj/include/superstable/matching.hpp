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

#ifndef SUPERSTABLE_MATCHING_HPP_
#define SUPERSTABLE_MATCHING_HPP_

#include "superstable/instance.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace superstable {

/// Which blocking-edge definition a stability test uses.
enum class StabilityCriterion { Super, Strong };

/// A set of disjoint pairs stored as two partner maps (-1 = unmatched).
class Matching {
 public:
  Matching() = default;
  Matching(int num_men, int num_women) : wife_(num_men, -1), husband_(num_women, -1) {}
  explicit Matching(const Instance& inst)
      : Matching(inst.num_men(), inst.num_women()) {}

  /// Builds a matching of `inst`; throws std::invalid_argument when a pair
  /// is not an edge or an agent appears twice.
  static Matching from_pairs(const Instance& inst, std::span<const Edge> pairs) {
    Matching out(inst);
    for (const Edge& p : pairs) {
      if (p.man < 0 || p.man >= inst.num_men() || p.woman < 0 ||
          p.woman >= inst.num_women() || !inst.is_edge(p.man, p.woman))
        throw std::invalid_argument("pair is not an edge of the instance");
      if (out.wife_[p.man] >= 0 || out.husband_[p.woman] >= 0)
        throw std::invalid_argument("agent appears in two pairs");
      out.add(p.man, p.woman);
    }
    return out;
  }

  static Matching from_names(
      const Instance& inst,
      std::span<const std::pair<std::string, std::string>> pairs) {
    std::vector<Edge> edges;
    for (const auto& [m, w] : pairs) {
      auto mi = inst.find(Side::Man, m);
      auto wi = inst.find(Side::Woman, w);
      if (!mi || !wi) throw std::invalid_argument("unknown agent in pair");
      edges.push_back({*mi, *wi});
    }
    return from_pairs(inst, edges);
  }

  int num_men() const { return static_cast<int>(wife_.size()); }
  int num_women() const { return static_cast<int>(husband_.size()); }

  int wife(int man) const { return wife_[man]; }
  int husband(int woman) const { return husband_[woman]; }
  int partner(Side s, int agent) const {
    return s == Side::Man ? wife_[agent] : husband_[agent];
  }
  bool contains(int man, int woman) const { return wife_[man] == woman; }

  void add(int man, int woman) {
    wife_[man] = woman;
    husband_[woman] = man;
  }
  void remove(int man, int woman) {
    if (wife_[man] == woman) {
      wife_[man] = -1;
      husband_[woman] = -1;
    }
  }

  int size() const {
    int n = 0;
    for (int w : wife_) n += w >= 0;
    return n;
  }

  /// Pairs ordered by man index.
  std::vector<Edge> pairs() const {
    std::vector<Edge> out;
    for (int m = 0; m < num_men(); ++m)
      if (wife_[m] >= 0) out.push_back({m, wife_[m]});
    return out;
  }

  /// Edge ids of the pairs, ascending.
  std::vector<int> edge_ids(const Instance& inst) const {
    std::vector<int> out;
    for (int m = 0; m < num_men(); ++m)
      if (wife_[m] >= 0) out.push_back(inst.edge_id(m, wife_[m]));
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Same agents swapped between sides.
  Matching transposed() const {
    Matching out(num_women(), num_men());
    out.wife_ = husband_;
    out.husband_ = wife_;
    return out;
  }

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching& a, const Matching& b) {
    return a.wife_ <=> b.wife_;
  }

 private:
  std::vector<int> wife_;
  std::vector<int> husband_;
};

inline std::string to_string(const Instance& inst, const Matching& m) {
  std::string out = "{";
  bool first = true;
  for (const Edge& p : m.pairs()) {
    if (!first) out += ",";
    first = false;
    out += "(" + inst.name(Side::Man, p.man) + "," + inst.name(Side::Woman, p.woman) + ")";
  }
  return out + "}";
}

}  // namespace superstable

#endif  // SUPERSTABLE_MATCHING_HPP_
