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

#ifndef SUPERSTABLE_RATIONAL_HPP_
#define SUPERSTABLE_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace superstable {

/// Arbitrary-precision exact rational; every weight and LP quantity uses it.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses `p` or `p/q` (optional leading sign on p, q > 0). Returns nullopt on
/// anything else; callers attach location information to the error.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+'))
      s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer(num, true)) return std::nullopt;
  std::string num_str(num.front() == '+' ? num.substr(1) : num);
  if (slash == std::string_view::npos) return Rational(BigInt(num_str));
  std::string_view den = text.substr(slash + 1);
  if (!is_integer(den, false)) return std::nullopt;
  BigInt d(std::string{den});
  if (d == 0) return std::nullopt;
  return Rational(BigInt(num_str), d);
}

/// Canonical text: `p` when integral, else `p/q` in lowest terms.
inline std::string to_string(const Rational& r) {
  const BigInt& n = boost::multiprecision::numerator(r);
  const BigInt& d = boost::multiprecision::denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

}  // namespace superstable

#endif  // SUPERSTABLE_RATIONAL_HPP_
