#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmsotw {

enum class Kind {
  True,
  Eq,          // terms[0] = terms[1]
  Edge,        // edge(terms[0], terms[1])
  MemV,        // terms[0] in set var `var` (or color `var` when is_color)
  MemE,        // edge {terms[0], terms[1]} in edge-set var `var`
  Card,        // |var| multiple of k
  Dp,          // k disjoint paths, terms = x1 y1 ... xk yk
  DpPlus,      // as Dp avoiding vertex set `var`
  AnnTwLeq,    // tw(G, var) <= k
  Not,
  And,
  Or,
  ExistsFO,
  ForallFO,
  ExistsSet,   // parameterized: anntw(value) <= k
  ForallSet,
  ExistsSetU,  // plain CMSO set quantifier
  ForallSetU,
};

enum class SetKind { Vertex, Edge };

struct Term {
  bool is_const = false;
  std::string name;
  bool operator==(const Term&) const = default;
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  Kind kind;
  std::vector<Term> terms;
  std::string var;            // set var / binder variable
  bool is_color = false;      // MemV against a color, not a bound variable
  SetKind set_kind = SetKind::Vertex;
  int k = 0;                  // quantifier parameter, card modulus, anntw bound
  std::vector<Formula> children;
};

struct parse_error : std::runtime_error {
  size_t offset;
  parse_error(const std::string& msg, size_t off)
      : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

// ---------- constructors ----------

inline Formula mk(FormulaNode n) { return std::make_shared<FormulaNode>(std::move(n)); }
inline Formula f_true() { return mk({.kind = Kind::True}); }
inline Formula f_eq(Term a, Term b) { return mk({.kind = Kind::Eq, .terms = {a, b}}); }
inline Formula f_edge(Term a, Term b) { return mk({.kind = Kind::Edge, .terms = {a, b}}); }
inline Formula f_in(Term t, std::string var, bool is_color = false) {
  return mk({.kind = Kind::MemV, .terms = {t}, .var = std::move(var), .is_color = is_color});
}
inline Formula f_inE(Term a, Term b, std::string var) {
  return mk({.kind = Kind::MemE, .terms = {a, b}, .var = std::move(var)});
}
inline Formula f_card(int p, std::string var) {
  return mk({.kind = Kind::Card, .var = std::move(var), .k = p});
}
inline Formula f_dp(std::vector<Term> pairs_flat) {
  return mk({.kind = Kind::Dp, .terms = std::move(pairs_flat)});
}
inline Formula f_dp_plus(std::string zvar, std::vector<Term> pairs_flat) {
  return mk({.kind = Kind::DpPlus, .terms = std::move(pairs_flat), .var = std::move(zvar)});
}
inline Formula f_anntw_leq(int k, std::string var) {
  return mk({.kind = Kind::AnnTwLeq, .var = std::move(var), .k = k});
}
inline Formula f_not(Formula a) { return mk({.kind = Kind::Not, .children = {std::move(a)}}); }
inline Formula f_and(Formula a, Formula b) {
  return mk({.kind = Kind::And, .children = {std::move(a), std::move(b)}});
}
inline Formula f_or(Formula a, Formula b) {
  return mk({.kind = Kind::Or, .children = {std::move(a), std::move(b)}});
}
inline Formula f_exists(std::string v, Formula a) {
  return mk({.kind = Kind::ExistsFO, .var = std::move(v), .children = {std::move(a)}});
}
inline Formula f_forall(std::string v, Formula a) {
  return mk({.kind = Kind::ForallFO, .var = std::move(v), .children = {std::move(a)}});
}
inline Formula f_exists_set(int k, std::string v, Formula a, SetKind sk = SetKind::Vertex) {
  return mk({.kind = Kind::ExistsSet, .var = std::move(v), .set_kind = sk, .k = k,
             .children = {std::move(a)}});
}
inline Formula f_forall_set(int k, std::string v, Formula a, SetKind sk = SetKind::Vertex) {
  return mk({.kind = Kind::ForallSet, .var = std::move(v), .set_kind = sk, .k = k,
             .children = {std::move(a)}});
}
inline Formula f_exists_setu(std::string v, Formula a, SetKind sk = SetKind::Vertex) {
  return mk({.kind = Kind::ExistsSetU, .var = std::move(v), .set_kind = sk,
             .children = {std::move(a)}});
}
inline Formula f_forall_setu(std::string v, Formula a, SetKind sk = SetKind::Vertex) {
  return mk({.kind = Kind::ForallSetU, .var = std::move(v), .set_kind = sk,
             .children = {std::move(a)}});
}

inline Term t_var(std::string n) { return {false, std::move(n)}; }
inline Term t_const(std::string n) { return {true, std::move(n)}; }

inline bool is_quantifier(Kind k) {
  switch (k) {
    case Kind::ExistsFO:
    case Kind::ForallFO:
    case Kind::ExistsSet:
    case Kind::ForallSet:
    case Kind::ExistsSetU:
    case Kind::ForallSetU:
      return true;
    default:
      return false;
  }
}

inline bool is_set_quantifier(Kind k) {
  return k == Kind::ExistsSet || k == Kind::ForallSet || k == Kind::ExistsSetU ||
         k == Kind::ForallSetU;
}

// ---------- structural equality ----------

inline bool equal(const Formula& a, const Formula& b) {
  if (a->kind != b->kind || a->terms != b->terms || a->var != b->var ||
      a->is_color != b->is_color || a->set_kind != b->set_kind || a->k != b->k ||
      a->children.size() != b->children.size())
    return false;
  for (size_t i = 0; i < a->children.size(); ++i)
    if (!equal(a->children[i], b->children[i])) return false;
  return true;
}

// ---------- render ----------

namespace detail {
inline std::string term_str(const Term& t) { return t.is_const ? "@" + t.name : t.name; }
inline const char* set_kind_str(SetKind k) { return k == SetKind::Vertex ? "V" : "E"; }
}  // namespace detail

/// Canonical text form; parse(render(f)) == f for parser-produced ASTs.
inline std::string render(const Formula& f) {
  using detail::term_str;
  switch (f->kind) {
    case Kind::True: return "true";
    case Kind::Eq: return "(= " + term_str(f->terms[0]) + " " + term_str(f->terms[1]) + ")";
    case Kind::Edge: return "(edge " + term_str(f->terms[0]) + " " + term_str(f->terms[1]) + ")";
    case Kind::MemV: return "(in " + term_str(f->terms[0]) + " " + f->var + ")";
    case Kind::MemE:
      return "(inE " + term_str(f->terms[0]) + " " + term_str(f->terms[1]) + " " + f->var + ")";
    case Kind::Card: return "(card " + std::to_string(f->k) + " " + f->var + ")";
    case Kind::Dp:
    case Kind::DpPlus: {
      std::string s = f->kind == Kind::Dp ? "(dp" : "(dp+ " + f->var;
      for (size_t i = 0; i + 1 < f->terms.size(); i += 2)
        s += " (" + term_str(f->terms[i]) + " " + term_str(f->terms[i + 1]) + ")";
      return s + ")";
    }
    case Kind::AnnTwLeq:
      return "(anntw<= " + std::to_string(f->k) + " " + f->var + ")";
    case Kind::Not: return "(not " + render(f->children[0]) + ")";
    case Kind::And: return "(and " + render(f->children[0]) + " " + render(f->children[1]) + ")";
    case Kind::Or: return "(or " + render(f->children[0]) + " " + render(f->children[1]) + ")";
    case Kind::ExistsFO: return "(exists " + f->var + " " + render(f->children[0]) + ")";
    case Kind::ForallFO: return "(forall " + f->var + " " + render(f->children[0]) + ")";
    case Kind::ExistsSet:
      return "(existsSet " + std::to_string(f->k) + " " + f->var + " " +
             detail::set_kind_str(f->set_kind) + " " + render(f->children[0]) + ")";
    case Kind::ForallSet:
      return "(forallSet " + std::to_string(f->k) + " " + f->var + " " +
             detail::set_kind_str(f->set_kind) + " " + render(f->children[0]) + ")";
    case Kind::ExistsSetU:
      return "(existsSetU " + f->var + " " + detail::set_kind_str(f->set_kind) + " " +
             render(f->children[0]) + ")";
    case Kind::ForallSetU:
      return "(forallSetU " + f->var + " " + detail::set_kind_str(f->set_kind) + " " +
             render(f->children[0]) + ")";
  }
  return "";
}

// ---------- parser ----------

struct ParseOptions {
  int card_cap = 16;  // largest admitted card modulus (the fixed constant cap)
  /// Free variables admitted without a binder, with their kinds.
  std::set<std::string> free_fo;
  std::map<std::string, SetKind> free_set;
};

namespace detail {

struct Parser {
  const std::string& src;
  size_t pos = 0;
  ParseOptions opt;
  std::set<std::string> fo_scope;              // renamed names currently bound
  std::map<std::string, SetKind> set_scope;
  std::map<std::string, std::vector<std::string>> rename_fo, rename_set;  // source -> stack
  std::set<std::string> used_names;

  explicit Parser(const std::string& s, ParseOptions o) : src(s), opt(std::move(o)) {
    for (auto& v : opt.free_fo) {
      fo_scope.insert(v);
      rename_fo[v].push_back(v);
      used_names.insert(v);
    }
    for (auto& [v, k] : opt.free_set) {
      set_scope[v] = k;
      rename_set[v].push_back(v);
      used_names.insert(v);
    }
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

  bool sym_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'' ||
           c == '-' || c == '+' || c == '=' || c == '<' || c == '@';
  }

  std::string symbol() {
    skip_ws();
    size_t start = pos;
    while (pos < src.size() && sym_char(src[pos])) ++pos;
    if (pos == start) fail("expected symbol");
    return src.substr(start, pos - start);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= src.size() || src[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  int integer() {
    auto s = symbol();
    try {
      size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail("expected integer, got '" + s + "'");
    }
  }

  std::string fresh(const std::string& base) {
    if (!used_names.count(base)) {
      used_names.insert(base);
      return base;
    }
    for (int i = 2;; ++i) {
      std::string cand = base + "#" + std::to_string(i);
      if (!used_names.count(cand)) {
        used_names.insert(cand);
        return cand;
      }
    }
  }

  Term term() {
    auto s = symbol();
    if (s.size() > 1 && s[0] == '@') return t_const(s.substr(1));
    auto it = rename_fo.find(s);
    if (it == rename_fo.end() || it->second.empty()) fail("unbound variable '" + s + "'");
    return t_var(it->second.back());
  }

  std::string set_ref(bool allow_color, bool* out_is_color = nullptr) {
    auto s = symbol();
    auto it = rename_set.find(s);
    if (it != rename_set.end() && !it->second.empty()) {
      if (out_is_color) *out_is_color = false;
      return it->second.back();
    }
    if (allow_color) {
      if (out_is_color) *out_is_color = true;
      return s;  // color names resolve against the structure at evaluation
    }
    fail("unbound variable '" + s + "'");
  }

  SetKind opt_set_kind() {
    skip_ws();
    size_t save = pos;
    if (pos < src.size() && (src[pos] == 'V' || src[pos] == 'E')) {
      char c = src[pos];
      ++pos;
      skip_ws();
      if (pos < src.size() && src[pos] == '(') return c == 'V' ? SetKind::Vertex : SetKind::Edge;
      pos = save;  // it was a variable named V/E, not a kind marker
    }
    return SetKind::Vertex;
  }

  std::vector<Term> dp_pairs() {
    std::vector<Term> ts;
    while (true) {
      skip_ws();
      if (pos < src.size() && src[pos] == ')') break;
      expect('(');
      ts.push_back(term());
      ts.push_back(term());
      expect(')');
    }
    if (ts.empty()) fail("dp needs at least one pair");
    return ts;
  }

  template <typename F>
  Formula with_fo_binder(const std::string& src_name, F&& body) {
    std::string rn = fresh(src_name);
    rename_fo[src_name].push_back(rn);
    fo_scope.insert(rn);
    Formula inner = body(rn);
    fo_scope.erase(rn);
    rename_fo[src_name].pop_back();
    return inner;
  }

  template <typename F>
  Formula with_set_binder(const std::string& src_name, SetKind k, F&& body) {
    std::string rn = fresh(src_name);
    rename_set[src_name].push_back(rn);
    set_scope[rn] = k;
    Formula inner = body(rn);
    set_scope.erase(rn);
    rename_set[src_name].pop_back();
    return inner;
  }

  Formula formula() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    if (src[pos] != '(') {
      auto s = symbol();
      if (s == "true") return f_true();
      fail("expected '(' or 'true'");
    }
    expect('(');
    auto op = symbol();
    Formula result;
    if (op == "true") {
      result = f_true();
    } else if (op == "=") {
      Term a = term(), b = term();
      result = f_eq(a, b);
    } else if (op == "edge") {
      Term a = term(), b = term();
      result = f_edge(a, b);
    } else if (op == "in") {
      Term t = term();
      bool is_color = false;
      auto v = set_ref(true, &is_color);
      result = f_in(t, v, is_color);
    } else if (op == "inE") {
      Term a = term(), b = term();
      auto v = set_ref(false);
      result = f_inE(a, b, v);
    } else if (op == "card") {
      int p = integer();
      if (p < 2) fail("card modulus must be >= 2");
      if (p > opt.card_cap) fail("card modulus exceeds cap " + std::to_string(opt.card_cap));
      auto v = set_ref(false);
      result = f_card(p, v);
    } else if (op == "dp") {
      result = f_dp(dp_pairs());
    } else if (op == "dp+") {
      auto v = set_ref(false);
      result = f_dp_plus(v, dp_pairs());
    } else if (op == "anntw<=") {
      int k = integer();
      if (k < 0) fail("anntw bound must be >= 0");
      auto v = set_ref(false);
      result = f_anntw_leq(k, v);
    } else if (op == "not") {
      result = f_not(formula());
    } else if (op == "and") {
      Formula a = formula(), b = formula();
      result = f_and(a, b);
    } else if (op == "or") {
      Formula a = formula(), b = formula();
      result = f_or(a, b);
    } else if (op == "exists" || op == "forall") {
      auto v = symbol();
      result = with_fo_binder(v, [&](const std::string& rn) {
        Formula inner = formula();
        return op == "exists" ? f_exists(rn, inner) : f_forall(rn, inner);
      });
    } else if (op == "existsSet" || op == "forallSet") {
      int k = integer();
      if (k < 0) fail("set quantifier parameter must be >= 0");
      auto v = symbol();
      SetKind sk = opt_set_kind();
      result = with_set_binder(v, sk, [&](const std::string& rn) {
        Formula inner = formula();
        return op == "existsSet" ? f_exists_set(k, rn, inner, sk) : f_forall_set(k, rn, inner, sk);
      });
    } else if (op == "existsSetU" || op == "forallSetU") {
      auto v = symbol();
      SetKind sk = opt_set_kind();
      result = with_set_binder(v, sk, [&](const std::string& rn) {
        Formula inner = formula();
        return op == "existsSetU" ? f_exists_setu(rn, inner, sk) : f_forall_setu(rn, inner, sk);
      });
    } else {
      fail("unknown operator '" + op + "'");
    }
    expect(')');
    return result;
  }
};

}  // namespace detail

/// Parses a formula; binders are alpha-renamed so no name is bound twice.
inline Formula parse(const std::string& text, ParseOptions opt = {}) {
  detail::Parser p(text, std::move(opt));
  Formula f = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) throw parse_error("trailing input", p.pos);
  return f;
}

// ---------- formula length ----------

namespace detail {
inline Formula canonical_rename(const Formula& f, std::map<std::string, std::string>& map,
                                int& fo_counter, int& set_counter) {
  FormulaNode n = *f;
  auto sub = [&](std::string& name) {
    auto it = map.find(name);
    if (it != map.end()) name = it->second;
  };
  for (auto& t : n.terms)
    if (!t.is_const) sub(t.name);
  if (!n.var.empty() && !is_quantifier(n.kind) && !n.is_color) sub(n.var);
  if (is_quantifier(n.kind)) {
    bool is_set = is_set_quantifier(n.kind);
    std::string canon =
        is_set ? "X" + std::to_string(++set_counter) : "x" + std::to_string(++fo_counter);
    auto saved = map.count(n.var) ? std::optional<std::string>(map[n.var]) : std::nullopt;
    map[n.var] = canon;
    n.children[0] = canonical_rename(n.children[0], map, fo_counter, set_counter);
    if (saved)
      map[n.var] = *saved;
    else
      map.erase(n.var);
    n.var = canon;
    return mk(std::move(n));
  }
  for (auto& c : n.children) c = canonical_rename(c, map, fo_counter, set_counter);
  return mk(std::move(n));
}
}  // namespace detail

/// Length of the canonical encoding: the rendered text of the formula with
/// binders renamed x1,x2,.../X1,X2,... in preorder.  Numeric parameters are
/// rendered in decimal, so the length strictly grows with their digit count.
inline int formula_length(const Formula& f) {
  std::map<std::string, std::string> map;
  int foc = 0, setc = 0;
  return static_cast<int>(render(detail::canonical_rename(f, map, foc, setc)).size());
}

// ---------- quantifier duality rewriting ----------

/// Rewrites every parameterized universal set quantifier through its dual:
/// forallSet k X phi  ->  not (existsSet k X (not phi)).  Purely mechanical,
/// no simplification of double negations.
inline Formula eliminate_universal_param(const Formula& f) {
  FormulaNode n = *f;
  for (auto& c : n.children) c = eliminate_universal_param(c);
  if (n.kind == Kind::ForallSet) {
    n.kind = Kind::ExistsSet;
    n.children[0] = f_not(n.children[0]);
    return f_not(mk(std::move(n)));
  }
  return mk(std::move(n));
}

}  // namespace cmsotw
