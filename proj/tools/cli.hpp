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

// The `superstable` command line. run() is kept separate from main() so the
// tests can drive it with in-memory streams.

#ifndef SUPERSTABLE_TOOLS_CLI_HPP_
#define SUPERSTABLE_TOOLS_CLI_HPP_

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "superstable/fixed_edge.hpp"
#include "superstable/instance.hpp"
#include "superstable/lattice.hpp"
#include "superstable/oracle.hpp"
#include "superstable/polytope.hpp"
#include "superstable/rotations.hpp"
#include "superstable/stability.hpp"

namespace superstable::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInput = 2;

// A problem with a file or its contents; reported with exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class F>
auto parse_file(const std::string& path, F&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline Instance load_instance(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return parse_instance(t); });
}

inline EdgeValues load_values(const Instance& inst, const std::string& path) {
  return parse_file(path, [&](const std::string& t) { return parse_edge_values(inst, t); });
}

inline Json pair_json(const Instance& inst, const Edge& p) {
  return Json::array({inst.name(Side::Man, p.man), inst.name(Side::Woman, p.woman)});
}

inline Json pairs_json(const Instance& inst, const std::vector<Edge>& pairs) {
  Json out = Json::array();
  for (const Edge& p : pairs) out.push_back(pair_json(inst, p));
  return out;
}

inline Json edges_json(const Instance& inst, const std::vector<int>& ids) {
  Json out = Json::array();
  for (int e : ids) out.push_back(pair_json(inst, inst.edges()[e]));
  return out;
}

inline Json matching_json(const Instance& inst, const std::optional<Matching>& m) {
  Json out;
  if (!m) {
    out["pairs"] = nullptr;
    return out;
  }
  out["pairs"] = pairs_json(inst, m->pairs());
  out["matched"] = m->size();
  return out;
}

inline Json point_json(const Instance& inst, const FractionalPoint& x) {
  Json out = Json::array();
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (x[e] == 0) continue;
    Json entry = pair_json(inst, inst.edges()[e]);
    entry.push_back(to_string(x[e]));
    out.push_back(std::move(entry));
  }
  return out;
}

inline StabilityCriterion criterion(const std::string& model) {
  return model == "strong" ? StabilityCriterion::Strong : StabilityCriterion::Super;
}

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string pairs_label(const Instance& inst, const std::vector<Edge>& pairs) {
  std::string out;
  for (const Edge& p : pairs) {
    if (!out.empty()) out += ' ';
    out += "(" + inst.name(Side::Man, p.man) + "," + inst.name(Side::Woman, p.woman) + ")";
  }
  return out;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

}  // namespace detail

/// Runs one command. `args` excludes the program name. Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Super-stable matchings with ties: solvers, lattice structure, polytope checks",
               "superstable"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string file, side = "men", weights_file, point_file, model = "super";
  bool dot = false;
  long long limit = -1;
  int cap = 8, men = 0, women = 0;
  double density = 0.5, tie_prob = 0.0;
  std::uint64_t seed = 0;

  const auto side_check = CLI::IsMember({"men", "women"});
  const auto model_check = CLI::IsMember({"super", "strong"});

  auto* solve = app.add_subcommand("solve", "Man- or woman-optimal super-stable matching");
  solve->add_option("file", file, "Instance file")->required();
  solve->add_option("--side", side, "Optimal side: men or women")->check(side_check);

  auto* enumerate = app.add_subcommand("enumerate", "All super-stable matchings, one JSON per line");
  enumerate->add_option("file", file, "Instance file")->required();
  enumerate->add_option("--limit", limit, "Stop after this many matchings")
      ->check(CLI::NonNegativeNumber);

  auto* rotations = app.add_subcommand("rotations", "Maximal sequence, rotations and their order");
  rotations->add_option("file", file, "Instance file")->required();
  rotations->add_flag("--dot", dot, "Emit the rotation digraph in DOT");

  auto* irreducible = app.add_subcommand("irreducible", "Irreducible matchings and their order");
  irreducible->add_option("file", file, "Instance file")->required();
  irreducible->add_flag("--dot", dot, "Emit the Hasse diagram in DOT");

  auto* maxweight = app.add_subcommand("maxweight", "Maximum-weight super-stable matching");
  maxweight->add_option("file", file, "Instance file")->required();
  maxweight->add_option("--weights", weights_file, "Lines of '<man> <woman> <rational>'")
      ->required();

  auto* check = app.add_subcommand("check-polytope", "Check a point against the linear system");
  check->add_option("file", file, "Instance file")->required();
  check->add_option("--point", point_file, "Lines of '<man> <woman> <rational>'")->required();
  check->add_option("--model", model, "super or strong")->check(model_check);

  auto* verts = app.add_subcommand("vertices", "Extreme points of the linear system");
  verts->add_option("file", file, "Instance file")->required();
  verts->add_option("--model", model, "super or strong")->check(model_check);
  verts->add_option("--cap", cap, "Largest edge count accepted")->check(CLI::NonNegativeNumber);

  auto* gen = app.add_subcommand("gen", "Random instance in the text format");
  gen->add_option("--men", men, "Number of men")->required()->check(CLI::PositiveNumber);
  gen->add_option("--women", women, "Number of women")->required()->check(CLI::PositiveNumber);
  gen->add_option("--density", density, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--tie-prob", tie_prob, "Probability of merging adjacent entries into a tie")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", seed, "Random seed");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force stable set");
  oracle_cmd->group("");
  oracle_cmd->add_option("file", file, "Instance file")->required();
  oracle_cmd->add_option("--model", model, "super or strong")->check(model_check);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "superstable: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      out << serialize(random_instance(men, women, density, tie_prob, seed));
      return kOk;
    }

    const Instance inst = detail::load_instance(file);

    if (solve->parsed()) {
      detail::emit(out, detail::matching_json(
                            inst, optimal_super_stable(inst, side == "men" ? Side::Man : Side::Woman)));
    } else if (enumerate->parsed()) {
      const auto rs = rotation_structure(inst);
      if (rs && limit != 0) {
        long long written = 0;
        for_each_closed_subset(*rs, [&](const ClosedSubset&, const Matching& m) {
          detail::emit(out, detail::matching_json(inst, m));
          return limit < 0 || ++written < limit;
        });
      }
    } else if (rotations->parsed()) {
      const auto rs = rotation_structure(inst);
      if (dot) {
        out << "digraph rotations {\n";
        if (rs) {
          for (const Rotation& r : rs->poset.rotations)
            out << "  r" << r.index << " [label="
                << detail::dot_quote("r" + std::to_string(r.index) + ": " +
                                     detail::pairs_label(inst, r.removed) + " -> " +
                                     detail::pairs_label(inst, r.added))
                << "];\n";
          for (auto [a, b] : rs->poset.arcs) out << "  r" << a << " -> r" << b << ";\n";
        }
        out << "}\n";
        return kOk;
      }
      Json j;
      j["feasible"] = rs.has_value();
      j["sequence"] = Json::array();
      j["rotations"] = Json::array();
      j["arcs"] = Json::array();
      if (rs) {
        for (const Matching& m : rs->sequence) j["sequence"].push_back(detail::matching_json(inst, m));
        for (const Rotation& r : rs->poset.rotations) {
          Json rj;
          rj["index"] = r.index;
          rj["removed"] = detail::pairs_json(inst, r.removed);
          rj["added"] = detail::pairs_json(inst, r.added);
          j["rotations"].push_back(std::move(rj));
        }
        for (auto [a, b] : rs->poset.arcs) j["arcs"].push_back(Json::array({a, b}));
      }
      detail::emit(out, j);
    } else if (irreducible->parsed()) {
      std::optional<IrreduciblePoset> poset;
      if (optimal_super_stable(inst, Side::Man)) poset = irreducible_poset(inst);
      if (dot) {
        out << "digraph irreducible {\n";
        if (poset) {
          for (std::size_t i = 0; i < poset->elements.size(); ++i)
            out << "  m" << i << " [label="
                << detail::dot_quote(detail::pairs_label(inst, poset->elements[i].matching.pairs()))
                << "];\n";
          for (auto [a, b] : poset->covers()) out << "  m" << a << " -> m" << b << ";\n";
        }
        out << "}\n";
        return kOk;
      }
      Json j;
      j["feasible"] = poset.has_value();
      j["elements"] = Json::array();
      j["covers"] = Json::array();
      if (poset) {
        for (std::size_t i = 0; i < poset->elements.size(); ++i) {
          const auto& el = poset->elements[i];
          Json ej;
          ej["id"] = i;
          ej["pairs"] = detail::pairs_json(inst, el.matching.pairs());
          ej["witnesses"] = detail::edges_json(inst, el.witnesses);
          ej["p_set"] = detail::edges_json(inst, el.pairs);
          j["elements"].push_back(std::move(ej));
        }
        for (auto [a, b] : poset->covers()) j["covers"].push_back(Json::array({a, b}));
      }
      detail::emit(out, j);
    } else if (maxweight->parsed()) {
      const Weights w = detail::load_values(inst, weights_file);
      const auto best = max_weight(inst, w);
      Json j = detail::matching_json(inst, best ? std::optional<Matching>(best->first) : std::nullopt);
      j["weight"] = best ? Json(to_string(best->second)) : Json(nullptr);
      detail::emit(out, j);
    } else if (check->parsed()) {
      const FractionalPoint x = detail::load_values(inst, point_file);
      const auto report = check_point(inst, x, detail::criterion(model));
      Json j;
      j["model"] = model;
      j["feasible"] = report.feasible();
      j["violations"] = Json::array();
      for (const Violation& v : report.violations)
        j["violations"].push_back(
            {{"tag", v.tag}, {"witness", v.witness}, {"lhs", to_string(v.lhs)}, {"required", v.required}});
      if (model == "super" && report.feasible()) {
        const auto cert = self_dual(inst, x);
        j["self_dual"] = {{"primal", to_string(cert.primal)},
                          {"dual", to_string(cert.dual)},
                          {"dual_feasible", cert.dual_feasible()}};
      }
      detail::emit(out, j);
    } else if (verts->parsed()) {
      if (inst.num_edges() > cap)
        throw InputError(file + ": " + std::to_string(inst.num_edges()) +
                         " edges exceed --cap " + std::to_string(cap));
      const auto points = vertices(inst, detail::criterion(model), cap);
      Json j;
      j["model"] = model;
      j["count"] = points.size();
      j["vertices"] = Json::array();
      for (const auto& p : points)
        j["vertices"].push_back({{"point", detail::point_json(inst, p)}, {"integral", is_integral(p)}});
      detail::emit(out, j);
    } else if (oracle_cmd->parsed()) {
      if (inst.num_edges() > oracle::kMaxEdges)
        throw InputError(file + ": " + std::to_string(inst.num_edges()) +
                         " edges exceed the brute-force limit of " +
                         std::to_string(oracle::kMaxEdges));
      Json j;
      j["model"] = model;
      j["matchings"] = Json::array();
      for (const Matching& m : oracle::brute_stable_set(inst, detail::criterion(model)))
        j["matchings"].push_back(detail::matching_json(inst, m));
      detail::emit(out, j);
    }
    return kOk;
  } catch (const InputError& e) {
    err << "superstable: " << e.what() << '\n';
    return kInput;
  }
}

}  // namespace superstable::cli

#endif  // SUPERSTABLE_TOOLS_CLI_HPP_
