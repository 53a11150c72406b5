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

#include "superstable/polytope.hpp"

#include <gtest/gtest.h>

#include <set>

#include "basis_enumeration.hpp"
#include "fixtures.hpp"
#include "superstable/oracle.hpp"

using namespace superstable;
using namespace superstable::testing;

namespace {

FractionalPoint constant(const Instance& inst, Rational v) {
  FractionalPoint x(inst);
  for (auto& e : x.values) e = v;
  return x;
}

// Random convex combination of the given incidence vectors, rational weights.
FractionalPoint mixture(const Instance& inst, const std::vector<Matching>& ms,
                        detail::SplitMix64& rng) {
  std::vector<long long> w(ms.size());
  long long total = 0;
  for (auto& v : w) total += v = 1 + static_cast<long long>(rng.below(9));
  FractionalPoint x(inst);
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (int e : ms[i].edge_ids(inst)) x[e] += Rational(w[i], total);
  return x;
}

void expect_equality_structure(const Instance& inst, const FractionalPoint& x) {
  for (Side s : {Side::Man, Side::Woman}) {
    const Side other = s == Side::Man ? Side::Woman : Side::Man;
    for (int u = 0; u < inst.count(s); ++u) {
      int best = 0;
      for (int e : inst.incident(s, u)) {
        if (x[e] <= 0) continue;
        const Edge ed = inst.edges()[e];
        const int r = inst.rank(s, u, s == Side::Man ? ed.woman : ed.man);
        if (best == 0 || r < best) best = r;
      }
      if (best == 0) continue;
      for (int e : inst.incident(s, u)) {
        const Edge ed = inst.edges()[e];
        const int v = s == Side::Man ? ed.woman : ed.man;
        if (x[e] <= 0 || inst.rank(s, u, v) != best) continue;
        Rational load = 0;
        for (int f : inst.incident(other, v)) load += x[f];
        EXPECT_EQ(load, 1) << serialize(inst) << inst.edge_name(e);
      }
    }
  }
}

TEST(CheckPoint, StrictTwoByTwo) {
  const Instance i1 = strict2x2();
  const auto zero = check_point(i1, FractionalPoint(i1), StabilityCriterion::Super);
  EXPECT_EQ(zero.violations.size(), 4u);
  EXPECT_EQ(zero.count("1b"), 4u);
  EXPECT_EQ(zero.violations.front().required, ">= 1");
  EXPECT_EQ(zero.violations.front().lhs, 0);

  const Matching m0 = match(i1, {{"a", "x"}, {"b", "y"}});
  EXPECT_TRUE(check_point(i1, incidence_vector(i1, m0), StabilityCriterion::Super).feasible());
  EXPECT_TRUE(check_point(i1, constant(i1, Rational(1, 2)), StabilityCriterion::Super).feasible());
  EXPECT_TRUE(check_point(i1, constant(i1, Rational(1, 2)), StabilityCriterion::Strong).feasible());
}

TEST(CheckPoint, ReportsEveryFamily) {
  const Instance i1 = strict2x2();
  const auto ones = check_point(i1, constant(i1, 1), StabilityCriterion::Super);
  EXPECT_EQ(ones.count("1a"), 4u);
  EXPECT_EQ(ones.violations.front().lhs, 2);
  EXPECT_EQ(ones.violations.front().required, "<= 1");
  const auto neg = check_point(i1, constant(i1, -1), StabilityCriterion::Strong);
  EXPECT_EQ(neg.count("3d"), 4u);
  EXPECT_EQ(neg.count("3b"), 4u);
  EXPECT_EQ(neg.count("3c"), 4u);
  EXPECT_EQ(neg.count("3a"), 0u);
}

// b and x are mutually indifferent between their two options, so (b,x)
// blocks {a-x, b-y} only in the super sense.
constexpr const char* kDoubleTie =
    "men: a b\nwomen: x y\n"
    "a: x\nb: (x y)\n"
    "x: (a b)\ny: b\n";

TEST(CheckPoint, TieSeparatesTheModels) {
  const Instance inst = parse_instance(kDoubleTie);
  const FractionalPoint x = incidence_vector(inst, match(inst, {{"a", "x"}, {"b", "y"}}));
  const auto super = check_point(inst, x, StabilityCriterion::Super);
  ASSERT_EQ(super.violations.size(), 1u);
  EXPECT_EQ(super.violations.front().tag, "1b");
  EXPECT_EQ(super.violations.front().witness, inst.edge_name(inst.edge_id(1, 0)));
  EXPECT_TRUE(check_point(inst, x, StabilityCriterion::Strong).feasible());
}

TEST(CheckPoint, RejectsWrongLength) {
  const Instance i1 = strict2x2();
  FractionalPoint x;
  x.values.assign(3, 0);
  EXPECT_THROW(check_point(i1, x, StabilityCriterion::Super), std::invalid_argument);
}

TEST(SelfDual, Examples) {
  const Instance i1 = strict2x2();
  for (const FractionalPoint& x :
       {incidence_vector(i1, match(i1, {{"a", "x"}, {"b", "y"}})), constant(i1, Rational(1, 2))}) {
    const auto r = self_dual(i1, x);
    for (const auto& a : r.certificate.alpha_men) EXPECT_EQ(a, 1);
    for (const auto& a : r.certificate.alpha_women) EXPECT_EQ(a, 1);
    EXPECT_EQ(r.certificate.beta, x.values);
    EXPECT_EQ(r.primal, 2);
    EXPECT_EQ(r.dual, 2);
    EXPECT_TRUE(r.dual_feasible());
  }
  const Instance empty = parse_instance("men: a\nwomen: x\n");
  const auto r = self_dual(empty, FractionalPoint(empty));
  EXPECT_EQ(r.primal, 0);
  EXPECT_EQ(r.dual, 0);
  EXPECT_THROW(self_dual(i1, FractionalPoint(i1)), std::invalid_argument);
}

TEST(Vertices, Examples) {
  const Instance i1 = strict2x2();
  const auto v1 = vertices(i1, StabilityCriterion::Super);
  std::set<std::vector<Rational>> got;
  for (const auto& v : v1) got.insert(v.values);
  EXPECT_EQ(got, (std::set<std::vector<Rational>>{
                     incidence_vector(i1, match(i1, {{"a", "x"}, {"b", "y"}})).values,
                     incidence_vector(i1, match(i1, {{"a", "y"}, {"b", "x"}})).values}));
  EXPECT_TRUE(vertices(tie_infeasible(), StabilityCriterion::Super).empty());
  const auto one = vertices(single_edge(), StabilityCriterion::Super);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].values, std::vector<Rational>{1});
  EXPECT_EQ(vertices(parse_instance("men: a\nwomen: x\n"), StabilityCriterion::Strong).size(), 1u);
  EXPECT_THROW(vertices(i1, StabilityCriterion::Super, 3), std::length_error);
}

TEST(Vertices, TieSeparatesTheModels) {
  const Instance inst = parse_instance(kDoubleTie);
  EXPECT_TRUE(vertices(inst, StabilityCriterion::Super).empty());
  const auto strong = vertices(inst, StabilityCriterion::Strong);
  ASSERT_EQ(strong.size(), 1u);
  EXPECT_EQ(strong[0].values,
            incidence_vector(inst, match(inst, {{"a", "x"}, {"b", "y"}})).values);
}

TEST(MatchingFromPoint, RoundTrip) {
  const Instance i1 = strict2x2();
  const Matching m = match(i1, {{"a", "y"}, {"b", "x"}});
  EXPECT_EQ(matching_from_point(i1, incidence_vector(i1, m)), m);
  EXPECT_THROW(matching_from_point(i1, constant(i1, Rational(1, 2))), std::invalid_argument);
}

class PolytopeProperties : public ::testing::TestWithParam<int> {};

TEST_P(PolytopeProperties, IntegralCharacterization) {
  const int n = GetParam();
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = sweep_instance(n, 5100 * n + seed);
    if (inst.num_edges() > 16) continue;
    for (const Matching& m : oracle::enumerate_matchings(inst)) {
      const FractionalPoint x = incidence_vector(inst, m);
      for (auto crit : {StabilityCriterion::Super, StabilityCriterion::Strong})
        ASSERT_EQ(check_point(inst, x, crit).feasible(), oracle::is_stable(inst, m, crit))
            << serialize(inst) << to_string(inst, m);
    }
  }
}

TEST_P(PolytopeProperties, ConvexCombinationsAndDuality) {
  const int n = GetParam();
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = sweep_instance(n, 5300 * n + seed);
    if (inst.num_edges() > oracle::kMaxEdges) continue;
    const auto set = oracle::brute_stable_set(inst, StabilityCriterion::Super);
    if (set.empty()) continue;
    detail::SplitMix64 rng(seed + 17 * n);
    std::vector<FractionalPoint> points;
    for (const auto& m : set) points.push_back(incidence_vector(inst, m));
    for (int k = 0; k < 10; ++k) points.push_back(mixture(inst, set, rng));
    for (const auto& x : points) {
      ASSERT_TRUE(check_point(inst, x, StabilityCriterion::Super).feasible()) << serialize(inst);
      ASSERT_TRUE(check_point(inst, x, StabilityCriterion::Strong).feasible()) << serialize(inst);
      const auto r = self_dual(inst, x);
      ASSERT_TRUE(r.dual_feasible()) << serialize(inst);
      ASSERT_EQ(r.primal, r.dual);
      for (const auto& a : r.certificate.alpha_men) ASSERT_GE(a, 0);
      for (const auto& a : r.certificate.alpha_women) ASSERT_GE(a, 0);
      expect_equality_structure(inst, x);
    }
  }
}

TEST_P(PolytopeProperties, VertexIntegrality) {
  const int n = GetParam();
  int tested = 0;
  for (std::uint64_t seed = 0; seed < 400 && tested < 25; ++seed) {
    const Instance inst = random_instance(n, n, 0.5, 0.3, 5500 * n + seed);
    if (inst.num_edges() > 8) continue;
    ++tested;
    for (auto crit : {StabilityCriterion::Super, StabilityCriterion::Strong}) {
      const auto set = oracle::brute_stable_set(inst, crit);
      std::set<std::vector<Rational>> want;
      for (const auto& m : set) want.insert(incidence_vector(inst, m).values);
      std::set<std::vector<Rational>> got;
      for (const auto& v : vertices(inst, crit)) {
        ASSERT_TRUE(is_integral(v)) << serialize(inst);
        ASSERT_TRUE(oracle::is_stable(inst, matching_from_point(inst, v), crit));
        got.insert(v.values);
      }
      ASSERT_EQ(got, want) << serialize(inst);
      if (inst.num_edges() <= 5) ASSERT_EQ(got, basis_vertices(inst, crit)) << serialize(inst);
    }
  }
  EXPECT_GT(tested, 0);
}

INSTANTIATE_TEST_SUITE_P(Sizes, PolytopeProperties, ::testing::Values(2, 3, 4, 5));

}  // namespace
