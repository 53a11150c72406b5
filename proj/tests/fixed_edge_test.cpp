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

#include "superstable/fixed_edge.hpp"

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "superstable/oracle.hpp"

using namespace superstable;
using namespace superstable::testing;

namespace {

Edge edge(const Instance& inst, const std::string& m, const std::string& w) {
  return {*inst.find(Side::Man, m), *inst.find(Side::Woman, w)};
}

std::set<std::string> edge_names(const Instance& inst) {
  std::set<std::string> out;
  for (int e = 0; e < inst.num_edges(); ++e) out.insert(inst.edge_name(e));
  return out;
}

TEST(ReduceForEdge, StrictTwoByTwo) {
  const Instance i1 = strict2x2();
  const Instance r = reduce_for_edge(i1, edge(i1, "a", "x"));
  EXPECT_EQ(r.names(Side::Man), std::vector<std::string>{"b"});
  EXPECT_EQ(r.names(Side::Woman), std::vector<std::string>{"y"});
  EXPECT_EQ(edge_names(r), std::set<std::string>{"(b,y)"});
}

TEST(ReduceForEdge, RemovesVertexWithItsEdges) {
  const Instance i2 = tie_infeasible();
  const Instance r = reduce_for_edge(i2, edge(i2, "a", "x"));
  EXPECT_EQ(r.names(Side::Man), std::vector<std::string>{"b"});
  EXPECT_TRUE(r.names(Side::Woman).empty());
  EXPECT_EQ(r.num_edges(), 0);
}

TEST(ReduceForEdge, TieFeasible) {
  const Instance i3 = tie_feasible();
  const Instance r = reduce_for_edge(i3, edge(i3, "b", "y"));
  EXPECT_EQ(r.names(Side::Man), std::vector<std::string>{"a"});
  EXPECT_EQ(r.names(Side::Woman), std::vector<std::string>{"x"});
  EXPECT_EQ(edge_names(r), std::set<std::string>{"(a,x)"});
}

TEST(ReduceForEdge, RejectsNonEdge) {
  const Instance i3 = tie_feasible();
  EXPECT_THROW(reduce_for_edge(i3, edge(i3, "b", "x")), std::invalid_argument);
  EXPECT_THROW(optimal_with_edge(i3, edge(i3, "b", "x")), std::invalid_argument);
}

TEST(OptimalWithEdge, Examples) {
  const Instance i1 = strict2x2();
  EXPECT_EQ(optimal_with_edge(i1, edge(i1, "b", "x")), match(i1, {{"a", "y"}, {"b", "x"}}));
  const Instance i2 = tie_infeasible();
  EXPECT_FALSE(optimal_with_edge(i2, edge(i2, "a", "x")));
  const Instance i3 = tie_feasible();
  EXPECT_FALSE(optimal_with_edge(i3, edge(i3, "a", "y")));
}

TEST(PSet, Examples) {
  const Instance i1 = strict2x2();
  auto names = [&](const PairSet& ps) {
    std::set<std::string> out;
    for (int e : ps) out.insert(i1.edge_name(e));
    return out;
  };
  EXPECT_EQ(names(p_set(i1, match(i1, {{"a", "x"}, {"b", "y"}}))),
            (std::set<std::string>{"(a,x)", "(b,y)"}));
  EXPECT_EQ(names(p_set(i1, match(i1, {{"a", "y"}, {"b", "x"}}))),
            (std::set<std::string>{"(a,x)", "(a,y)", "(b,x)", "(b,y)"}));
  const Instance one = single_edge();
  EXPECT_EQ(p_set(one, match(one, {{"a", "x"}})), PairSet{0});
}

TEST(PSet, RejectsUnstable) {
  const Instance i1 = strict2x2();
  EXPECT_THROW(p_set(i1, match(i1, {{"a", "x"}})), std::invalid_argument);
}

TEST(IrreduciblePoset, StrictTwoByTwo) {
  const Instance i1 = strict2x2();
  const auto poset = irreducible_poset(i1);
  ASSERT_EQ(poset.elements.size(), 2u);
  EXPECT_EQ(poset.elements[0].matching, match(i1, {{"a", "x"}, {"b", "y"}}));
  EXPECT_EQ(poset.elements[0].witnesses.size(), 2u);
  EXPECT_EQ(poset.elements[1].matching, match(i1, {{"a", "y"}, {"b", "x"}}));
  EXPECT_TRUE(poset.below[0][1]);
  EXPECT_FALSE(poset.below[1][0]);
  EXPECT_EQ(poset.covers(), (std::vector<std::pair<int, int>>{{0, 1}}));
}

TEST(IrreduciblePoset, UniqueAndSingleEdge) {
  EXPECT_EQ(irreducible_poset(tie_feasible()).elements.size(), 1u);
  const auto one = irreducible_poset(single_edge());
  ASSERT_EQ(one.elements.size(), 1u);
  EXPECT_TRUE(one.covers().empty());
  EXPECT_THROW(irreducible_poset(tie_infeasible()), std::invalid_argument);
}

// Oracle-driven properties over random instances.
class FixedEdgeProperties : public ::testing::TestWithParam<int> {};

TEST_P(FixedEdgeProperties, AgainstOracle) {
  const int n = GetParam();
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = sweep_instance(n, 1000 * n + seed);
    if (inst.num_edges() > oracle::kMaxEdges) continue;
    const auto set = oracle::brute_stable_set(inst, StabilityCriterion::Super);

    for (int e = 0; e < inst.num_edges(); ++e) {
      const Edge ed = inst.edges()[e];
      std::vector<Matching> with;
      for (const auto& m : set)
        if (m.contains(ed.man, ed.woman)) with.push_back(m);
      const auto got = optimal_with_edge(inst, ed);
      // Minimality.
      ASSERT_EQ(got.has_value(), !with.empty()) << serialize(inst) << inst.edge_name(e);
      if (got) ASSERT_EQ(*got, *oracle::optimal_in(inst, with, Side::Man));

      const Instance reduced = reduce_for_edge(inst, ed);
      auto to_reduced = [&](const Matching& m) {
        Matching out(reduced);
        for (const Edge& p : m.pairs()) {
          if (p.man == ed.man) continue;
          out.add(*reduced.find(Side::Man, inst.name(Side::Man, p.man)),
                  *reduced.find(Side::Woman, inst.name(Side::Woman, p.woman)));
        }
        return out;
      };
      // Soundness: M minus the fixed edge is super-stable in the reduced graph.
      for (const auto& m : with) {
        const Matching r = to_reduced(m);
        ASSERT_TRUE(is_matching_of(reduced, r));
        ASSERT_TRUE(oracle::is_stable(reduced, r, StabilityCriterion::Super));
      }
      // Completeness: with a result, every reduced super-stable matching
      // extends to a super-stable matching of the original.
      if (got && reduced.num_edges() <= oracle::kMaxEdges) {
        for (const auto& r : oracle::brute_stable_set(reduced, StabilityCriterion::Super)) {
          Matching full(inst);
          full.add(ed.man, ed.woman);
          for (const Edge& p : r.pairs())
            full.add(*inst.find(Side::Man, reduced.name(Side::Man, p.man)),
                     *inst.find(Side::Woman, reduced.name(Side::Woman, p.woman)));
          ASSERT_TRUE(oracle::is_stable(inst, full, StabilityCriterion::Super));
        }
      }
    }

    if (set.empty()) continue;
    std::set<PairSet> psets;
    for (const auto& m : set) psets.insert(p_set(inst, m));
    // Ring of sets: closed under union and intersection.
    for (const auto& a : psets)
      for (const auto& b : psets) {
        PairSet u, i;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(i));
        ASSERT_TRUE(psets.count(u));
        ASSERT_TRUE(psets.count(i));
      }

    // Generation: unions over non-empty down-closed selections reproduce
    // exactly the P-sets of all super-stable matchings.
    const auto poset = irreducible_poset(inst);
    const int k = static_cast<int>(poset.elements.size());
    ASSERT_LE(k, 16);
    std::set<PairSet> generated;
    for (int mask = 1; mask < (1 << k); ++mask) {
      bool closed = true;
      for (int j = 0; j < k && closed; ++j)
        if (mask >> j & 1)
          for (int i = 0; i < k; ++i)
            if (poset.below[i][j] && !(mask >> i & 1)) closed = false;
      if (!closed) continue;
      PairSet u;
      for (int j = 0; j < k; ++j) {
        if (!(mask >> j & 1)) continue;
        PairSet next;
        const auto& p = poset.elements[j].pairs;
        std::set_union(u.begin(), u.end(), p.begin(), p.end(), std::back_inserter(next));
        u = std::move(next);
      }
      generated.insert(u);
    }
    ASSERT_EQ(generated, psets) << serialize(inst);
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, FixedEdgeProperties, ::testing::Values(2, 3, 4, 5));

}  // namespace
