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

// Bipartite preference systems with ties: the data model, the text format,
// and a seeded random generator.
//
// Agents are addressed by (side, index). Each agent holds a preference list
// of tiers; a tier is a set of equally ranked partners and earlier tiers are
// strictly preferred. Ranks are 1-based tier indices; rank 0 means "not on
// the list" and doubles as "unmatched" in comparisons, where it behaves as
// worse than every listed partner.

#ifndef SUPERSTABLE_INSTANCE_HPP_
#define SUPERSTABLE_INSTANCE_HPP_

#include "superstable/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace superstable {

enum class Side { Man, Woman };

constexpr Side opposite(Side s) {
  return s == Side::Man ? Side::Woman : Side::Man;
}

inline const char* to_string(Side s) { return s == Side::Man ? "man" : "woman"; }

struct AgentId {
  Side side;
  std::string name;
  friend bool operator==(const AgentId&, const AgentId&) = default;
};

/// An acceptable pair, by agent indices.
struct Edge {
  int man;
  int woman;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Tiers of partner indices, most preferred first.
using PreferenceList = std::vector<std::vector<int>>;

/// Malformed input text. Line and column are 1-based; 0 means "not known".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column = 0)
      : std::runtime_error(format(what, line, column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  int line_;
  int column_;
};

class Instance {
 public:
  Instance() = default;

  /// Validates every invariant (unique names, disjoint non-empty tiers,
  /// in-range partners, mutual acceptability) and throws
  /// std::invalid_argument on violation.
  Instance(std::vector<std::string> men, std::vector<std::string> women,
           std::vector<PreferenceList> man_prefs,
           std::vector<PreferenceList> woman_prefs)
      : names_{std::move(men), std::move(women)},
        prefs_{std::move(man_prefs), std::move(woman_prefs)} {
    build();
  }

  int num_men() const { return static_cast<int>(names_[0].size()); }
  int num_women() const { return static_cast<int>(names_[1].size()); }
  int count(Side s) const { return static_cast<int>(names_[idx(s)].size()); }

  const std::string& name(Side s, int agent) const {
    return names_[idx(s)][agent];
  }
  const std::vector<std::string>& names(Side s) const {
    return names_[idx(s)];
  }

  std::optional<int> find(Side s, std::string_view name) const {
    auto it = lookup_[idx(s)].find(std::string(name));
    if (it == lookup_[idx(s)].end()) return std::nullopt;
    return it->second;
  }

  const PreferenceList& prefs(Side s, int agent) const {
    return prefs_[idx(s)][agent];
  }

  /// 1-based tier index of `partner` in `agent`'s list, 0 if not listed.
  int rank(Side s, int agent, int partner) const {
    if (s == Side::Man) return man_rank_[cell(agent, partner)];
    return woman_rank_[cell(partner, agent)];
  }

  /// Number of tiers in the agent's list.
  int list_length(Side s, int agent) const {
    return static_cast<int>(prefs_[idx(s)][agent].size());
  }

  /// Edge id of (man, woman), or -1.
  int edge_id(int man, int woman) const { return edge_id_[cell(man, woman)]; }
  bool is_edge(int man, int woman) const { return edge_id(man, woman) >= 0; }

  /// Edges in declaration order: men in order, each man's list front to back.
  const std::vector<Edge>& edges() const { return edges_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  /// Edge ids incident to an agent, in that agent's preference order.
  const std::vector<int>& incident(Side s, int agent) const {
    return incident_[idx(s)][agent];
  }

  /// Name-based rank lookup; throws std::invalid_argument when the pair is
  /// not an edge or either agent is unknown.
  int rank_of(const AgentId& agent, const AgentId& partner) const {
    if (partner.side == agent.side)
      throw std::invalid_argument("partner must be on the opposite side");
    auto a = find(agent.side, agent.name);
    auto p = find(partner.side, partner.name);
    if (!a) throw std::invalid_argument("unknown agent '" + agent.name + "'");
    if (!p) throw std::invalid_argument("unknown agent '" + partner.name + "'");
    const int r = rank(agent.side, *a, *p);
    if (r == 0)
      throw std::invalid_argument("'" + partner.name + "' is not on the list of '" +
                                  agent.name + "'");
    return r;
  }

  std::string edge_name(int e) const {
    return "(" + name(Side::Man, edges_[e].man) + "," +
           name(Side::Woman, edges_[e].woman) + ")";
  }

 private:
  static constexpr int idx(Side s) { return s == Side::Man ? 0 : 1; }
  std::size_t cell(int man, int woman) const {
    return static_cast<std::size_t>(man) * names_[1].size() + woman;
  }

  void build() {
    for (int s = 0; s < 2; ++s) {
      if (prefs_[s].size() != names_[s].size())
        throw std::invalid_argument("one preference list per agent required");
      for (int i = 0; i < static_cast<int>(names_[s].size()); ++i) {
        if (!lookup_[s].emplace(names_[s][i], i).second)
          throw std::invalid_argument("duplicate agent name '" + names_[s][i] + "'");
      }
    }
    const std::size_t nm = names_[0].size(), nw = names_[1].size();
    man_rank_.assign(nm * nw, 0);
    woman_rank_.assign(nm * nw, 0);
    for (int s = 0; s < 2; ++s) {
      const int other = static_cast<int>(names_[1 - s].size());
      for (std::size_t a = 0; a < names_[s].size(); ++a) {
        const auto& tiers = prefs_[s][a];
        for (std::size_t t = 0; t < tiers.size(); ++t) {
          if (tiers[t].empty())
            throw std::invalid_argument("empty tier in list of '" + names_[s][a] + "'");
          for (int p : tiers[t]) {
            if (p < 0 || p >= other)
              throw std::invalid_argument("partner index out of range");
            auto& slot = s == 0 ? man_rank_[a * nw + p] : woman_rank_[p * nw + a];
            if (slot != 0)
              throw std::invalid_argument("'" + names_[1 - s][p] +
                                          "' listed twice by '" + names_[s][a] + "'");
            slot = static_cast<int>(t) + 1;
          }
        }
      }
    }
    for (std::size_t c = 0; c < nm * nw; ++c) {
      if ((man_rank_[c] == 0) != (woman_rank_[c] == 0)) {
        const int m = static_cast<int>(c / nw), w = static_cast<int>(c % nw);
        const bool man_lists = man_rank_[c] != 0;
        throw std::invalid_argument(
            "non-mutual listing: '" + (man_lists ? names_[0][m] : names_[1][w]) +
            "' lists '" + (man_lists ? names_[1][w] : names_[0][m]) +
            "' but not vice versa");
      }
    }
    edge_id_.assign(nm * nw, -1);
    incident_[0].assign(nm, {});
    incident_[1].assign(nw, {});
    for (std::size_t m = 0; m < nm; ++m) {
      for (const auto& tier : prefs_[0][m]) {
        for (int w : tier) {
          edge_id_[m * nw + w] = static_cast<int>(edges_.size());
          incident_[0][m].push_back(static_cast<int>(edges_.size()));
          edges_.push_back({static_cast<int>(m), w});
        }
      }
    }
    for (std::size_t w = 0; w < nw; ++w)
      for (const auto& tier : prefs_[1][w])
        for (int m : tier) incident_[1][w].push_back(edge_id_[m * nw + w]);
  }

  std::vector<std::string> names_[2];
  std::vector<PreferenceList> prefs_[2];
  std::unordered_map<std::string, int> lookup_[2];
  std::vector<int> man_rank_;
  std::vector<int> woman_rank_;
  std::vector<int> edge_id_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_[2];
};

/// Comparison under the "unmatched is worst" convention: rank 0 loses to any
/// listed rank.
inline bool rank_better(int a, int b) {
  if (a == 0) return false;
  if (b == 0) return true;
  return a < b;
}
inline bool rank_at_least(int a, int b) { return !rank_better(b, a); }

namespace detail {

inline bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

struct Token {
  enum Kind { Name, Open, Close } kind;
  std::string text;
  int column;
};

inline std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '(' || c == ')') {
      out.push_back({c == '(' ? Token::Open : Token::Close, std::string(1, c),
                     static_cast<int>(i) + 1});
      ++i;
    } else if (is_name_char(c)) {
      const std::size_t start = i;
      while (i < line.size() && is_name_char(line[i])) ++i;
      out.push_back({Token::Name, std::string(line.substr(start, i - start)),
                     static_cast<int>(start) + 1});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_no,
                       static_cast<int>(i) + 1);
    }
  }
  return out;
}

/// Splits "<head>: rest" and returns the head plus the offset of rest.
inline std::pair<std::string_view, std::size_t> split_head(std::string_view line,
                                                           int line_no) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("expected '<name>:'", line_no, 1);
  std::string_view head = line.substr(0, colon);
  while (!head.empty() && (head.front() == ' ' || head.front() == '\t'))
    head.remove_prefix(1);
  while (!head.empty() && (head.back() == ' ' || head.back() == '\t'))
    head.remove_suffix(1);
  if (head.empty() || !std::all_of(head.begin(), head.end(), is_name_char))
    throw ParseError("invalid name before ':'", line_no, 1);
  return {head, colon + 1};
}

/// Yields (line number, content) for lines that are neither blank nor comments.
inline std::vector<std::pair<int, std::string_view>> content_lines(
    std::string_view text) {
  std::vector<std::pair<int, std::string_view>> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#')
      out.emplace_back(line_no, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace detail

/// Parses the instance text format:
///
///     # comment
///     men: a b
///     women: x y
///     a: x y
///     x: (a b)
///
/// A parenthesised group is one tie tier. Agents without a line have empty
/// lists. A name may not be declared on both sides, since preference lines
/// are keyed by bare name.
inline Instance parse_instance(std::string_view text) {
  const auto lines = detail::content_lines(text);
  std::vector<std::string> names[2];
  std::unordered_map<std::string, int> index[2];
  const char* headers[2] = {"men", "women"};
  for (int s = 0; s < 2; ++s) {
    if (lines.size() <= static_cast<std::size_t>(s))
      throw ParseError(std::string("missing '") + headers[s] + ":' header",
                       lines.empty() ? 1 : lines.back().first);
    auto [line_no, line] = lines[s];
    auto [head, rest] = detail::split_head(line, line_no);
    if (head != headers[s])
      throw ParseError(std::string("expected '") + headers[s] + ":' header", line_no, 1);
    for (const auto& tok : detail::tokenize(line.substr(rest), line_no)) {
      const int col = tok.column + static_cast<int>(rest);
      if (tok.kind != detail::Token::Name)
        throw ParseError("unexpected '" + tok.text + "' in header", line_no, col);
      if (!index[s].emplace(tok.text, static_cast<int>(names[s].size())).second)
        throw ParseError("duplicate agent '" + tok.text + "'", line_no, col);
      if (s == 1 && index[0].count(tok.text))
        throw ParseError("'" + tok.text + "' is declared as both a man and a woman",
                         line_no, col);
      names[s].push_back(tok.text);
    }
    if (names[s].empty())
      throw ParseError(std::string("no ") + headers[s] + " declared", line_no);
  }

  std::vector<PreferenceList> prefs[2] = {
      std::vector<PreferenceList>(names[0].size()),
      std::vector<PreferenceList>(names[1].size())};
  std::vector<bool> seen[2] = {std::vector<bool>(names[0].size()),
                               std::vector<bool>(names[1].size())};
  std::vector<int> line_of[2] = {std::vector<int>(names[0].size(), 0),
                                 std::vector<int>(names[1].size(), 0)};

  for (std::size_t li = 2; li < lines.size(); ++li) {
    auto [line_no, line] = lines[li];
    auto [head, rest] = detail::split_head(line, line_no);
    int side;
    int agent;
    if (auto it = index[0].find(std::string(head)); it != index[0].end()) {
      side = 0;
      agent = it->second;
    } else if (auto jt = index[1].find(std::string(head)); jt != index[1].end()) {
      side = 1;
      agent = jt->second;
    } else {
      throw ParseError("unknown agent '" + std::string(head) + "'", line_no, 1);
    }
    if (seen[side][agent])
      throw ParseError("second preference line for '" + std::string(head) + "'",
                       line_no, 1);
    seen[side][agent] = true;
    line_of[side][agent] = line_no;

    const auto& other = index[1 - side];
    std::vector<bool> listed(names[1 - side].size(), false);
    PreferenceList tiers;
    bool in_tie = false;
    int tie_col = 0;
    for (const auto& tok : detail::tokenize(line.substr(rest), line_no)) {
      const int col = tok.column + static_cast<int>(rest);
      switch (tok.kind) {
        case detail::Token::Open:
          if (in_tie) throw ParseError("nested '('", line_no, col);
          in_tie = true;
          tie_col = col;
          tiers.emplace_back();
          break;
        case detail::Token::Close:
          if (!in_tie) throw ParseError("unmatched ')'", line_no, col);
          if (tiers.back().empty()) throw ParseError("empty tie", line_no, col);
          in_tie = false;
          break;
        case detail::Token::Name: {
          auto it = other.find(tok.text);
          if (it == other.end())
            throw ParseError("unknown agent '" + tok.text + "'", line_no, col);
          if (listed[it->second])
            throw ParseError("duplicate agent '" + tok.text + "' in list", line_no, col);
          listed[it->second] = true;
          if (!in_tie) tiers.emplace_back();
          tiers.back().push_back(it->second);
          break;
        }
      }
    }
    if (in_tie) throw ParseError("unclosed '('", line_no, tie_col);
    if (tiers.empty())
      throw ParseError("empty preference list for '" + std::string(head) + "'",
                       line_no, static_cast<int>(rest) + 1);
    prefs[side][agent] = std::move(tiers);
  }

  // Mutuality, reported at the line of the agent whose listing is unmatched.
  for (int s = 0; s < 2; ++s) {
    for (std::size_t a = 0; a < names[s].size(); ++a) {
      for (const auto& tier : prefs[s][a]) {
        for (int p : tier) {
          bool back = false;
          for (const auto& t2 : prefs[1 - s][p])
            back = back || std::find(t2.begin(), t2.end(), static_cast<int>(a)) != t2.end();
          if (!back)
            throw ParseError("non-mutual listing: '" + names[s][a] + "' lists '" +
                                 names[1 - s][p] + "' but not vice versa",
                             line_of[s][a]);
        }
      }
    }
  }
  return Instance(std::move(names[0]), std::move(names[1]), std::move(prefs[0]),
                  std::move(prefs[1]));
}

/// Canonical text form; preserves declared order so parsing it back yields
/// the same instance. Agents with empty lists get no preference line.
inline std::string serialize(const Instance& inst) {
  std::ostringstream out;
  for (Side s : {Side::Man, Side::Woman}) {
    out << (s == Side::Man ? "men:" : "women:");
    for (const auto& n : inst.names(s)) out << ' ' << n;
    out << '\n';
  }
  for (Side s : {Side::Man, Side::Woman}) {
    for (int a = 0; a < inst.count(s); ++a) {
      const auto& tiers = inst.prefs(s, a);
      if (tiers.empty()) continue;
      out << inst.name(s, a) << ':';
      for (const auto& tier : tiers) {
        out << ' ';
        if (tier.size() > 1) out << '(';
        for (std::size_t i = 0; i < tier.size(); ++i) {
          if (i) out << ' ';
          out << inst.name(opposite(s), tier[i]);
        }
        if (tier.size() > 1) out << ')';
      }
      out << '\n';
    }
  }
  return out.str();
}

/// Same instance with men and women exchanged.
inline Instance swap_sides(const Instance& inst) {
  std::vector<PreferenceList> m, w;
  for (int a = 0; a < inst.num_men(); ++a) m.push_back(inst.prefs(Side::Man, a));
  for (int a = 0; a < inst.num_women(); ++a) w.push_back(inst.prefs(Side::Woman, a));
  return Instance(inst.names(Side::Woman), inst.names(Side::Man), std::move(w),
                  std::move(m));
}

namespace detail {

/// splitmix64; used instead of <random> distributions so that generated
/// instances are identical across standard library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::uint64_t state_;
};

inline PreferenceList random_list(std::vector<int> partners, double tie_prob,
                                  SplitMix64& rng) {
  for (std::size_t i = partners.size(); i > 1; --i)
    std::swap(partners[i - 1], partners[rng.below(i)]);
  PreferenceList tiers;
  for (std::size_t i = 0; i < partners.size(); ++i) {
    if (i == 0 || !rng.bernoulli(tie_prob)) tiers.emplace_back();
    tiers.back().push_back(partners[i]);
  }
  return tiers;
}

}  // namespace detail

/// Seeded random instance with men m1..mN and women w1..wN. Each pair is an
/// edge with probability `density`; each list is a uniform permutation of the
/// agent's neighbours in which each adjacent pair is merged into one tier
/// with probability `tie_prob`.
inline Instance random_instance(int n_men, int n_women, double density,
                                double tie_prob, std::uint64_t seed) {
  if (n_men < 1 || n_women < 1)
    throw std::invalid_argument("random_instance: both sides need at least one agent");
  if (!(density >= 0.0 && density <= 1.0) || !(tie_prob >= 0.0 && tie_prob <= 1.0))
    throw std::invalid_argument("random_instance: probabilities must lie in [0,1]");
  detail::SplitMix64 rng(seed);
  std::vector<std::vector<int>> adj_m(n_men), adj_w(n_women);
  for (int m = 0; m < n_men; ++m)
    for (int w = 0; w < n_women; ++w)
      if (rng.bernoulli(density)) {
        adj_m[m].push_back(w);
        adj_w[w].push_back(m);
      }
  std::vector<std::string> men, women;
  std::vector<PreferenceList> mp, wp;
  for (int m = 0; m < n_men; ++m) {
    men.push_back("m" + std::to_string(m + 1));
    mp.push_back(detail::random_list(adj_m[m], tie_prob, rng));
  }
  for (int w = 0; w < n_women; ++w) {
    women.push_back("w" + std::to_string(w + 1));
    wp.push_back(detail::random_list(adj_w[w], tie_prob, rng));
  }
  return Instance(std::move(men), std::move(women), std::move(mp), std::move(wp));
}

/// Exact rational value per edge; absent edges read as zero. Backs both edge
/// weights and fractional LP points.
struct EdgeValues {
  std::vector<Rational> values;  // indexed by edge id

  EdgeValues() = default;
  explicit EdgeValues(const Instance& inst) : values(inst.num_edges()) {}

  const Rational& operator[](int e) const { return values[e]; }
  Rational& operator[](int e) { return values[e]; }
};

using Weights = EdgeValues;

/// Parses `<man> <woman> <rational>` lines (comments and blank lines allowed).
/// Unlisted edges are zero; non-edges and duplicate lines are errors.
inline EdgeValues parse_edge_values(const Instance& inst, std::string_view text) {
  EdgeValues out(inst);
  std::vector<bool> seen(inst.num_edges(), false);
  for (auto [line_no, line] : detail::content_lines(text)) {
    std::istringstream in{std::string(line)};
    std::string man, woman, value, extra;
    if (!(in >> man >> woman >> value) || (in >> extra))
      throw ParseError("expected '<man> <woman> <rational>'", line_no, 1);
    auto m = inst.find(Side::Man, man);
    auto w = inst.find(Side::Woman, woman);
    if (!m) throw ParseError("unknown man '" + man + "'", line_no);
    if (!w) throw ParseError("unknown woman '" + woman + "'", line_no);
    const int e = inst.edge_id(*m, *w);
    if (e < 0) throw ParseError("(" + man + "," + woman + ") is not an edge", line_no);
    if (seen[e]) throw ParseError("duplicate line for (" + man + "," + woman + ")", line_no);
    seen[e] = true;
    auto r = parse_rational(value);
    if (!r) throw ParseError("malformed rational '" + value + "'", line_no);
    out[e] = *r;
  }
  return out;
}

inline std::string serialize(const Instance& inst, const EdgeValues& values) {
  std::string out;
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (values[e] == 0) continue;
    out += inst.name(Side::Man, inst.edges()[e].man) + " " +
           inst.name(Side::Woman, inst.edges()[e].woman) + " " + to_string(values[e]) +
           "\n";
  }
  return out;
}

}  // namespace superstable

#endif  // SUPERSTABLE_INSTANCE_HPP_
