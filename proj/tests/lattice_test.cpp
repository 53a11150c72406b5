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

#include "superstable/lattice.hpp"

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "superstable/oracle.hpp"

using namespace superstable;
using namespace superstable::testing;

namespace {

Weights uniform(const Instance& inst, Rational v) {
  Weights w(inst);
  for (auto& x : w.values) x = v;
  return w;
}

TEST(MatchingOf, StrictTwoByTwo) {
  const Instance i1 = strict2x2();
  const auto rs = *rotation_structure(i1);
  ClosedSubset none(1), all(1);
  all.members[0] = true;
  EXPECT_EQ(matching_of(rs.man_optimal(), rs.poset, none), rs.man_optimal());
  EXPECT_EQ(matching_of(rs.man_optimal(), rs.poset, all), rs.woman_optimal());
  EXPECT_EQ(matching_of(rs.man_optimal(), rs.poset, all), match(i1, {{"a", "y"}, {"b", "x"}}));
}

TEST(MatchingOf, RejectsOpenSubsetAndUnexposedRotation) {
  const Instance chain = parse_instance(
      "men: a b c\nwomen: x y z\n"
      "a: x y\nb: y x z\nc: z x\n"
      "x: c b a\ny: a b\nz: b c\n");
  const auto rs = *rotation_structure(chain);
  ASSERT_EQ(rs.poset.size(), 2);
  ClosedSubset open(2);
  open.members[1] = true;
  EXPECT_THROW(matching_of(rs.man_optimal(), rs.poset, open), std::invalid_argument);
  RotationPoset loose = rs.poset;
  loose.arcs.clear();
  EXPECT_THROW(matching_of(rs.man_optimal(), loose, open), std::invalid_argument);
}

TEST(EnumerateAll, Examples) {
  const Instance i1 = strict2x2();
  const auto all = enumerate_all(i1);
  EXPECT_EQ(std::set<Matching>(all.begin(), all.end()),
            (std::set<Matching>{match(i1, {{"a", "x"}, {"b", "y"}}),
                                match(i1, {{"a", "y"}, {"b", "x"}})}));
  EXPECT_EQ(all.front(), match(i1, {{"a", "x"}, {"b", "y"}}));
  EXPECT_TRUE(enumerate_all(tie_infeasible()).empty());
  EXPECT_EQ(enumerate_all(i1, 1).size(), 1u);
  EXPECT_TRUE(enumerate_all(i1, 0).empty());
}

TEST(JoinMeet, Examples) {
  const Instance i1 = strict2x2();
  const Matching m0 = match(i1, {{"a", "x"}, {"b", "y"}});
  const Matching mz = match(i1, {{"a", "y"}, {"b", "x"}});
  EXPECT_EQ(join_meet(i1, m0, mz), std::make_pair(m0, mz));
  EXPECT_EQ(join_meet(i1, mz, mz), std::make_pair(mz, mz));
  EXPECT_THROW(join_meet(i1, m0, match(i1, {{"a", "x"}})), std::invalid_argument);
}

TEST(MaxWeight, Examples) {
  const Instance i1 = strict2x2();
  const auto unit = max_weight(i1, uniform(i1, 1));
  ASSERT_TRUE(unit);
  EXPECT_EQ(unit->first, match(i1, {{"a", "x"}, {"b", "y"}}));
  EXPECT_EQ(unit->second, Rational(2));

  const Weights w = parse_edge_values(i1, "a y 5\nb x 5\na x 1\nb y 1\n");
  const auto best = max_weight(i1, w);
  ASSERT_TRUE(best);
  EXPECT_EQ(best->first, match(i1, {{"a", "y"}, {"b", "x"}}));
  EXPECT_EQ(best->second, Rational(10));

  EXPECT_FALSE(max_weight(tie_infeasible(), uniform(tie_infeasible(), 1)));
}

TEST(MaxWeight, FractionalWeights) {
  const Instance i1 = strict2x2();
  const Weights w = parse_edge_values(i1, "a y 1/3\nb x 1/2\na x 1/7\nb y 1/7\n");
  const auto best = max_weight(i1, w);
  ASSERT_TRUE(best);
  EXPECT_EQ(best->second, Rational(5, 6));
}

class LatticeProperties : public ::testing::TestWithParam<int> {};

TEST_P(LatticeProperties, AgainstOracle) {
  const int n = GetParam();
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const Instance inst = sweep_instance(n, 3100 * n + seed);
    if (inst.num_edges() > oracle::kMaxEdges) continue;
    const auto set = oracle::brute_stable_set(inst, StabilityCriterion::Super);
    const auto rs = rotation_structure(inst);
    ASSERT_EQ(rs.has_value(), !set.empty());
    if (!rs) continue;

    std::vector<ClosedSubset> subsets;
    std::vector<Matching> image;
    for_each_closed_subset(*rs, [&](const ClosedSubset& s, const Matching& m) {
      subsets.push_back(s);
      image.push_back(m);
      return true;
    });
    const std::set<Matching> unique(image.begin(), image.end());
    ASSERT_EQ(unique.size(), image.size()) << serialize(inst);
    ASSERT_EQ(unique, std::set<Matching>(set.begin(), set.end())) << serialize(inst);

    // Brute-force count of closed subsets matches the enumeration.
    const int k = rs->poset.size();
    if (k <= 16) {
      int closed = 0;
      for (int mask = 0; mask < (1 << k); ++mask) {
        ClosedSubset s(k);
        for (int i = 0; i < k; ++i) s.members[i] = mask >> i & 1;
        closed += is_closed(rs->poset, s);
      }
      ASSERT_EQ(closed, static_cast<int>(subsets.size()));
    }

    for (std::size_t i = 0; i < subsets.size(); ++i) {
      ASSERT_EQ(matching_of(rs->man_optimal(), rs->poset, subsets[i]), image[i]);
      for (std::size_t j = 0; j < subsets.size(); ++j)
        ASSERT_EQ(subsets[i].subset_of(subsets[j]),
                  oracle::side_weakly_prefers(inst, Side::Man, image[i], image[j]));
    }

    // Lattice laws over the oracle's set.
    auto join = [&](const Matching& a, const Matching& b) { return join_meet(inst, a, b).first; };
    auto meet = [&](const Matching& a, const Matching& b) { return join_meet(inst, a, b).second; };
    for (const auto& a : set)
      for (const auto& b : set) {
        const auto [j, m] = join_meet(inst, a, b);
        ASSERT_TRUE(oracle::is_stable(inst, j, StabilityCriterion::Super));
        ASSERT_TRUE(oracle::is_stable(inst, m, StabilityCriterion::Super));
        ASSERT_EQ(j, join(b, a));
        ASSERT_EQ(join(a, meet(a, b)), a);
        ASSERT_EQ(meet(a, join(a, b)), a);
        for (const auto& c : set) {
          ASSERT_EQ(join(a, join(b, c)), join(join(a, b), c));
          ASSERT_EQ(meet(a, join(b, c)), join(meet(a, b), meet(a, c)));
        }
      }

    // Max weight equals the oracle maximum.
    detail::SplitMix64 rng(seed * 977 + n);
    Weights w(inst);
    for (auto& v : w.values) v = static_cast<long long>(rng.below(21)) - 10;
    const auto best = max_weight(inst, w);
    ASSERT_TRUE(best);
    ASSERT_TRUE(oracle::is_stable(inst, best->first, StabilityCriterion::Super));
    Rational want = matching_weight(inst, set.front(), w);
    for (const auto& m : set) want = std::max(want, matching_weight(inst, m, w));
    ASSERT_EQ(best->second, want) << serialize(inst);
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, LatticeProperties, ::testing::Values(2, 3, 4, 5));

}  // namespace
