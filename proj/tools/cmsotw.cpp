// Command-line front door over the library: parsing, evaluation, widths,
// types, disjoint paths, the reduction driver, fixture generation and buffer
// search.  One invocation writes one document to stdout; diagnostics go to
// stderr.  Exit codes: 0 ok, 1 property false under --strict, 2 usage error,
// 3 size cap exceeded.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cmsotw/cmsotw.hpp"

using namespace cmsotw;

namespace {

struct CommonOpts {
  std::string format = "text";
  bool strict = false;
  int max_subset_n = 12;
  int max_n = 16;
  int card_cap = 16;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "machine"}));
  cmd->add_flag("--strict", c.strict, "exit 1 when the checked property is false");
  cmd->add_option("--max-subset-n", c.max_subset_n,
                  "largest ground set exhaustively quantified over (default 12)");
  cmd->add_option("--max-n", c.max_n, "vertex cap for the treewidth engines (default 16)");
  cmd->add_option("--card-cap", c.card_cap, "largest admitted card modulus (default 16)");
}

EvalOptions eval_opts(const CommonOpts& c) { return {c.max_subset_n, c.max_n}; }

/// A vertex set argument: either a color name of the structure or a
/// comma-separated list of vertex ids.
std::set<int> parse_set(const Structure& s, const std::string& spec) {
  if (const std::set<int>* col = s.color(spec)) return *col;
  std::set<int> out;
  if (spec.empty()) return out;
  size_t pos = 0;
  while (pos <= spec.size()) {
    size_t comma = spec.find(',', pos);
    std::string id = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
    int v = s.index_of(id);
    if (v < 0) throw std::invalid_argument("not a color and not a vertex id: " + id);
    out.insert(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::string> names_of(const Structure& s, const std::set<int>& vs) {
  std::vector<std::string> out;
  for (int v : vs) out.push_back(s.vertex_names[v]);
  return out;
}

std::string joined(const std::vector<std::string>& xs, const std::string& sep = " ") {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

/// Terminal pairs: "a,b;c,d".
std::vector<std::pair<int, int>> parse_pairs(const Structure& s, const std::string& spec) {
  std::vector<std::pair<int, int>> out;
  size_t pos = 0;
  while (pos <= spec.size()) {
    size_t semi = spec.find(';', pos);
    std::string part = spec.substr(pos, semi == std::string::npos ? semi : semi - pos);
    size_t comma = part.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("pair needs two ids: " + part);
    int a = s.index_of(part.substr(0, comma));
    int b = s.index_of(part.substr(comma + 1));
    if (a < 0 || b < 0) throw std::invalid_argument("unknown vertex id in pair: " + part);
    out.emplace_back(a, b);
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  if (out.empty()) throw std::invalid_argument("no terminal pairs given");
  return out;
}

int boolean_result(bool verdict, const CommonOpts& c, json extra = json::object()) {
  if (c.format == "machine") {
    extra["verdict"] = verdict;
    std::cout << extra.dump(2) << "\n";
  } else {
    std::cout << (verdict ? "true" : "false") << "\n";
    for (auto& [k, v] : extra.items())
      if (v.is_array())
        for (auto& line : v) std::cout << k << ": " << line.get<std::string>() << "\n";
  }
  return c.strict && !verdict ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CMSO/tw+dp toolkit"};
  app.require_subcommand(1);

  std::string graph_file, fixture_file, formula_text, set_spec, pairs_spec, avoid_spec;
  std::string family, out_file, var_list, setvar_list;
  std::vector<int> params;
  int width = 0, m = 0, r = 0, t = 0, threshold = 2, level = -1;

  CommonOpts c;

  auto* check = app.add_subcommand("check", "evaluate a sentence on a graph");
  check->add_option("--graph", graph_file)->required();
  check->add_option("--formula", formula_text)->required();
  add_common(check, c);

  auto* eval = app.add_subcommand("eval", "find a witness for a free-variable query");
  eval->add_option("--graph", graph_file)->required();
  eval->add_option("--formula", formula_text)->required();
  eval->add_option("--vars", var_list, "comma-separated free first-order variables");
  eval->add_option("--setvars", setvar_list, "comma-separated free vertex-set variables");
  add_common(eval, c);

  auto* anntw = app.add_subcommand("anntw", "annotated treewidth of a vertex set");
  anntw->add_option("--graph", graph_file)->required();
  anntw->add_option("--set", set_spec, "color name or comma-separated ids")->required();
  add_common(anntw, c);

  auto* tw = app.add_subcommand("tw", "exact treewidth and a decomposition");
  tw->add_option("--graph", graph_file)->required();
  add_common(tw, c);

  auto* type = app.add_subcommand("type", "annotated type of a fully annotated graph");
  type->add_option("--graph", graph_file)->required();
  type->add_option("--m", m, "set-variable count")->required();
  type->add_option("--r", r, "first-order-variable count")->required();
  type->add_option("--t", t, "annotated-treewidth level cap");
  type->add_option("--level", level, "type level (default m+r)");
  add_common(type, c);

  auto* dp = app.add_subcommand("dp", "disjoint-paths check");
  dp->add_option("--graph", graph_file)->required();
  dp->add_option("--pairs", pairs_spec, "terminal pairs, e.g. a,b;c,d")->required();
  dp->add_option("--avoid", avoid_spec, "vertex set the paths must avoid");
  add_common(dp, c);

  auto* reduce = app.add_subcommand("reduce", "irrelevancy reduction then evaluation");
  reduce->add_option("--graph", graph_file)->required();
  reduce->add_option("--formula", formula_text)->required();
  reduce->add_option("--threshold", threshold, "treewidth threshold of the localizer");
  add_common(reduce, c);

  auto* gen = app.add_subcommand("gen", "emit a generated fixture");
  gen->add_option("--family", family, "path|cycle|clique|grid|annulus-grid")->required();
  gen->add_option("--params", params, "family parameters")->required();
  gen->add_option("--out", out_file, "write here instead of stdout");
  add_common(gen, c);

  auto* buffer = app.add_subcommand("buffer", "leftmost cycle range avoiding a set");
  buffer->add_option("--fixture", fixture_file)->required();
  buffer->add_option("--set", set_spec, "color name or comma-separated ids")->required();
  buffer->add_option("--width", width)->required();
  add_common(buffer, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) {
      Structure s = load_structure(graph_file);
      Formula f = parse(formula_text, {.card_cap = c.card_cap});
      return boolean_result(evaluate(s, f, {}, eval_opts(c)), c);
    }

    if (*eval) {
      Structure s = load_structure(graph_file);
      std::vector<std::string> fo_vars;
      std::vector<std::pair<std::string, SetKind>> set_vars;
      ParseOptions po{.card_cap = c.card_cap};
      auto split = [](const std::string& l) {
        std::vector<std::string> out;
        size_t pos = 0;
        while (pos <= l.size() && !l.empty()) {
          size_t comma = l.find(',', pos);
          out.push_back(l.substr(pos, comma == std::string::npos ? comma : comma - pos));
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
        return out;
      };
      for (auto& v : split(var_list)) {
        fo_vars.push_back(v);
        po.free_fo.insert(v);
      }
      for (auto& v : split(setvar_list)) {
        set_vars.emplace_back(v, SetKind::Vertex);
        po.free_set[v] = SetKind::Vertex;
      }
      Formula f = parse(formula_text, po);
      auto w = evaluate_query(s, f, fo_vars, set_vars, eval_opts(c));
      if (c.format == "machine") {
        json j;
        j["found"] = w.has_value();
        if (w) {
          for (auto& [name, v] : w->fo) j["vars"][name] = s.vertex_names[v];
          for (auto& [name, sv] : w->sets) j["sets"][name] = names_of(s, sv.val);
        }
        std::cout << j.dump(2) << "\n";
      } else if (!w) {
        std::cout << "none\n";
      } else {
        for (auto& name : fo_vars) std::cout << name << "=" << s.vertex_names[w->fo.at(name)] << "\n";
        for (auto& [name, kind] : set_vars)
          std::cout << name << "={" << joined(names_of(s, w->sets.at(name).val), ",") << "}\n";
      }
      return c.strict && !w ? 1 : 0;
    }

    if (*anntw) {
      Structure s = load_structure(graph_file);
      int a = annotated_treewidth(gaifman(s), parse_set(s, set_spec), c.max_n);
      if (c.format == "machine")
        std::cout << json{{"anntw", a}}.dump(2) << "\n";
      else
        std::cout << a << "\n";
      return 0;
    }

    if (*tw) {
      Structure s = load_structure(graph_file);
      auto res = treewidth_exact(gaifman(s), c.max_n);
      if (c.format == "machine") {
        json j;
        j["treewidth"] = res.width;
        j["bags"] = json::array();
        for (auto& b : res.td.bags) {
          std::vector<std::string> names;
          for (int v : b) names.push_back(s.vertex_names[v]);
          j["bags"].push_back(names);
        }
        j["tree_edges"] = json::array();
        for (auto& [a, b] : res.td.tree_edges) j["tree_edges"].push_back({a, b});
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << res.width << "\n";
        for (size_t i = 0; i < res.td.bags.size(); ++i) {
          std::vector<std::string> names;
          for (int v : res.td.bags[i]) names.push_back(s.vertex_names[v]);
          std::cout << "bag " << i << ": " << joined(names) << "\n";
        }
        for (auto& [a, b] : res.td.tree_edges) std::cout << "tree " << a << "-" << b << "\n";
      }
      return 0;
    }

    if (*type) {
      Structure s = load_structure(graph_file);
      TypeParams p{m, r, t, std::min(c.card_cap, 4), c.max_n, c.max_subset_n};
      std::set<int> all;
      for (int v = 0; v < s.n(); ++v) all.insert(v);
      std::vector<std::set<int>> R(m + r, all);
      AnnotatedType at = level < 0 ? annotated_type(s, R, p)
                                   : annotated_type(s, R, level, {}, std::vector<int>(
                                         level <= r ? r - level : 0, 0),
                                         p);
      if (c.format == "machine")
        std::cout << json{{"depth", at.depth}, {"type", at.repr}}.dump(2) << "\n";
      else
        std::cout << at.repr << "\n";
      return 0;
    }

    if (*dp) {
      Structure s = load_structure(graph_file);
      auto pairs = parse_pairs(s, pairs_spec);
      std::set<int> avoid = avoid_spec.empty() ? std::set<int>{} : parse_set(s, avoid_spec);
      std::vector<std::vector<int>> witness;
      bool ok = avoid.empty() ? check_dp(s, pairs, &witness)
                              : check_dp_plus(s, avoid, pairs, &witness);
      json extra = json::object();
      if (ok) {
        extra["path"] = json::array();
        for (auto& p : witness) {
          std::vector<std::string> names;
          for (int v : p) names.push_back(s.vertex_names[v]);
          extra["path"].push_back(joined(names));
        }
      }
      return boolean_result(ok, c, extra);
    }

    if (*reduce) {
      Structure s = load_structure(graph_file);
      Formula f = parse(formula_text, {.card_cap = c.card_cap});
      DecideResult res = decide(s, f, toy_localizer(threshold, c.max_n), eval_opts(c));
      if (c.format == "machine") {
        json j;
        j["verdict"] = res.verdict;
        j["reduced"] = structure_to_json(res.reduction.s);
        j["trace"] = json::array();
        for (auto& step : res.reduction.trace) {
          json st;
          st["iteration"] = step.iteration;
          st["removed"] = step.removed;
          j["trace"].push_back(st);
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << (res.verdict ? "true" : "false") << "\n";
        for (auto& step : res.reduction.trace) {
          std::cout << "removal " << step.iteration << ":";
          for (auto& si : step.removed) std::cout << " {" << joined(si, ",") << "}";
          std::cout << "\n";
        }
        std::cout << "remaining " << res.reduction.s.n() << " vertices\n";
      }
      return c.strict && !res.verdict ? 1 : 0;
    }

    if (*gen) {
      json j;
      if (family == "annulus-grid" && params.size() == 2)
        j = fixture_to_json(annulus_grid_fixture(params[0], params[1]));
      else
        j = structure_to_json(generate(family, params));
      if (out_file.empty()) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::ofstream out(out_file);
        if (!out) throw std::runtime_error("cannot write " + out_file);
        out << j.dump(2) << "\n";
        std::cout << "wrote " << out_file << "\n";
      }
      return 0;
    }

    if (*buffer) {
      Fixture f = load_fixture(fixture_file);
      if (auto err = validate_annulus(f)) throw std::invalid_argument("bad fixture: " + *err);
      auto range = find_buffer(f, parse_set(f.s, set_spec), width);
      if (c.format == "machine") {
        json j;
        j["found"] = range.has_value();
        if (range) j["range"] = {range->first, range->second};
        std::cout << j.dump(2) << "\n";
      } else if (range) {
        std::cout << range->first << ".." << range->second << "\n";
      } else {
        std::cout << "none\n";
      }
      return c.strict && !range ? 1 : 0;
    }
  } catch (const cap_error& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
