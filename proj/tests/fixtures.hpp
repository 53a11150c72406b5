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

// Shared small instances and helpers for the test suites.

#ifndef SUPERSTABLE_TESTS_FIXTURES_HPP_
#define SUPERSTABLE_TESTS_FIXTURES_HPP_

#include "superstable/instance.hpp"
#include "superstable/matching.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace superstable::testing {

// Strict 2x2 with two super-stable matchings.
inline constexpr const char* kStrict2x2 =
    "men: a b\n"
    "women: x y\n"
    "a: x y\n"
    "b: y x\n"
    "x: b a\n"
    "y: a b\n";

// One woman indifferent between two men: no super-stable matching.
inline constexpr const char* kTieInfeasible =
    "men: a b\n"
    "women: x\n"
    "a: x\n"
    "b: x\n"
    "x: (a b)\n";

// Tie on a man's list, unique super-stable matching.
inline constexpr const char* kTieFeasible =
    "men: a b\n"
    "women: x y\n"
    "a: (x y)\n"
    "b: y\n"
    "x: a\n"
    "y: b a\n";

inline Instance strict2x2() { return parse_instance(kStrict2x2); }
inline Instance tie_infeasible() { return parse_instance(kTieInfeasible); }
inline Instance tie_feasible() { return parse_instance(kTieFeasible); }

inline Matching match(const Instance& inst,
                      std::vector<std::pair<std::string, std::string>> pairs) {
  return Matching::from_names(inst, pairs);
}

inline Instance single_edge() {
  return parse_instance("men: a\nwomen: x\na: x\nx: a\n");
}

/// Random instance family used by the sweeps: n men and n women.
inline Instance sweep_instance(int n, std::uint64_t seed, double density = 0.7,
                               double tie_prob = 0.3) {
  return random_instance(n, n, density, tie_prob, seed);
}

}  // namespace superstable::testing

#endif  // SUPERSTABLE_TESTS_FIXTURES_HPP_
