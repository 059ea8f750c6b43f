#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmsotw/formula.hpp"
#include "cmsotw/prenex.hpp"
#include "cmsotw/structure.hpp"
#include "cmsotw/width.hpp"

namespace cmsotw {

struct SetValue {
  SetKind kind = SetKind::Vertex;
  std::set<int> val;  // vertex indices, or edge indices into g.edges()
};

struct Assignment {
  std::map<std::string, int> fo;
  std::map<std::string, SetValue> sets;
};

struct EvalOptions {
  int max_subset_n = 12;  // largest ground set exhaustively quantified over
  int width_cap = 16;     // vertex cap for the treewidth engines
};

// ---------- disjoint paths ----------

/// Pairwise vertex-disjoint paths linking the given terminal pairs, avoiding
/// `avoid`.  A pair (v, v) is satisfied by the one-vertex path {v}; terminals
/// shared between two pairs are never satisfiable.  Returns the paths in pair
/// order, or nullopt.
inline std::optional<std::vector<std::vector<int>>> find_disjoint_paths(
    const Graph& g, const std::vector<std::pair<int, int>>& pairs,
    const std::set<int>& avoid = {}) {
  int k = static_cast<int>(pairs.size());
  std::vector<char> used(g.n(), 0);
  for (int v : avoid) used[v] = 1;
  for (auto& [x, y] : pairs)
    if (used[x] || used[y]) return std::nullopt;

  // Solve shortest-distance pairs first; results identical to any order.
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> dist(k);
  for (int i = 0; i < k; ++i) dist[i] = g.distance(pairs[i].first, pairs[i].second);
  for (int d : dist)
    if (d < 0) return std::nullopt;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] < dist[b]; });

  std::vector<std::vector<int>> paths(k);
  std::function<bool(int)> solve = [&](int idx) -> bool {
    if (idx == k) return true;
    int pi = order[idx];
    auto [x, y] = pairs[pi];
    if (used[x] || (x != y && used[y])) return false;
    std::vector<int> cur{x};
    used[x] = 1;
    std::function<bool(int)> extend = [&](int v) -> bool {
      if (v == y) {
        paths[pi] = cur;
        if (solve(idx + 1)) return true;
        paths[pi].clear();
        return false;
      }
      for (int w : g.neighbors(v)) {
        if (used[w]) continue;
        used[w] = 1;
        cur.push_back(w);
        if (extend(w)) return true;
        cur.pop_back();
        used[w] = 0;
      }
      return false;
    };
    bool ok = extend(x);
    if (!ok) used[x] = 0;
    return ok;
  };
  if (!solve(0)) return std::nullopt;
  return paths;
}

inline bool check_dp(const Structure& s, const std::vector<std::pair<int, int>>& pairs,
                     std::vector<std::vector<int>>* witness = nullptr) {
  auto r = find_disjoint_paths(gaifman(s), pairs);
  if (r && witness) *witness = *r;
  return r.has_value();
}

/// dp restricted to G ∖ Z.  A terminal inside Z is a caller error.
inline bool check_dp_plus(const Structure& s, const std::set<int>& Z,
                          const std::vector<std::pair<int, int>>& pairs,
                          std::vector<std::vector<int>>* witness = nullptr) {
  for (auto& [x, y] : pairs)
    if (Z.count(x) || Z.count(y))
      throw std::invalid_argument("dp+ terminal lies in the avoided set");
  auto r = find_disjoint_paths(gaifman(s), pairs, Z);
  if (r && witness) *witness = *r;
  return r.has_value();
}

// ---------- canonical subset enumeration ----------

namespace detail {

/// All subsets of `elems` (ascending), ordered by size then lexicographically
/// on the sorted element list.  This is the canonical witness order.
inline std::vector<std::set<int>> subsets_canonical(const std::vector<int>& elems) {
  std::vector<std::set<int>> out;
  int n = static_cast<int>(elems.size());
  std::vector<int> idx;
  std::function<void(int, int)> combos = [&](int start, int left) {
    if (left == 0) {
      std::set<int> s;
      for (int i : idx) s.insert(elems[i]);
      out.push_back(std::move(s));
      return;
    }
    for (int i = start; i <= n - left; ++i) {
      idx.push_back(i);
      combos(i + 1, left - 1);
      idx.pop_back();
    }
  };
  for (int sz = 0; sz <= n; ++sz) combos(0, sz);
  return out;
}

}  // namespace detail

// ---------- evaluator ----------

namespace detail {

struct Evaluator {
  const Structure& s;
  EvalOptions opt;
  Graph gf;
  // memo for the annotated-treewidth filter: (k, annotation set) -> verdict
  std::map<std::pair<int, std::set<int>>, bool> anntw_memo;

  Evaluator(const Structure& st, EvalOptions o) : s(st), opt(o), gf(gaifman(st)) {}

  int term_value(const Term& t, const Assignment& asg) {
    if (t.is_const) {
      auto it = s.constants.find(t.name);
      if (it == s.constants.end())
        throw std::invalid_argument("unknown constant: " + t.name);
      return it->second;
    }
    auto it = asg.fo.find(t.name);
    if (it == asg.fo.end()) throw std::invalid_argument("unbound variable: " + t.name);
    return it->second;
  }

  const SetValue& set_value(const std::string& name, const Assignment& asg) {
    auto it = asg.sets.find(name);
    if (it == asg.sets.end()) throw std::invalid_argument("unbound variable: " + name);
    return it->second;
  }

  /// Annotation set of a quantified value: the set itself for vertex sets,
  /// the set of edge endpoints for edge sets.
  std::set<int> annotation(const SetValue& sv) {
    if (sv.kind == SetKind::Vertex) return sv.val;
    std::set<int> pts;
    for (int e : sv.val) {
      auto [a, b] = gf.edges()[e];
      pts.insert(a);
      pts.insert(b);
    }
    return pts;
  }

  bool anntw_filter(int k, const SetValue& sv) {
    auto key = std::make_pair(k, annotation(sv));
    auto it = anntw_memo.find(key);
    if (it != anntw_memo.end()) return it->second;
    bool v = anntw_at_most(gf, key.second, k, opt.width_cap);
    anntw_memo.emplace(std::move(key), v);
    return v;
  }

  std::vector<int> ground_set(SetKind k) {
    int n = k == SetKind::Vertex ? gf.n() : gf.edge_count();
    if (n > opt.max_subset_n)
      throw cap_error("set quantification over " + std::to_string(n) +
                      " elements exceeds cap " + std::to_string(opt.max_subset_n));
    std::vector<int> e(n);
    std::iota(e.begin(), e.end(), 0);
    return e;
  }

  bool eval(const Formula& f, Assignment& asg) {
    switch (f->kind) {
      case Kind::True: return true;
      case Kind::Eq: return term_value(f->terms[0], asg) == term_value(f->terms[1], asg);
      case Kind::Edge:
        return gf.has_edge(term_value(f->terms[0], asg), term_value(f->terms[1], asg));
      case Kind::MemV: {
        int v = term_value(f->terms[0], asg);
        if (!f->is_color && asg.sets.count(f->var)) {
          const SetValue& sv = asg.sets.at(f->var);
          if (sv.kind != SetKind::Vertex)
            throw std::invalid_argument("vertex membership tested against edge set " + f->var);
          return sv.val.count(v) > 0;
        }
        const std::set<int>* col = s.color(f->var);
        if (!col) throw std::invalid_argument("unbound variable or color: " + f->var);
        return col->count(v) > 0;
      }
      case Kind::MemE: {
        const SetValue& sv = set_value(f->var, asg);
        if (sv.kind != SetKind::Edge)
          throw std::invalid_argument("edge membership tested against vertex set " + f->var);
        int e = gf.edge_index(term_value(f->terms[0], asg), term_value(f->terms[1], asg));
        return e >= 0 && sv.val.count(e) > 0;
      }
      case Kind::Card: {
        const SetValue& sv = set_value(f->var, asg);
        return static_cast<int>(sv.val.size()) % f->k == 0;
      }
      case Kind::Dp:
      case Kind::DpPlus: {
        std::vector<std::pair<int, int>> pairs;
        for (size_t i = 0; i + 1 < f->terms.size(); i += 2)
          pairs.emplace_back(term_value(f->terms[i], asg), term_value(f->terms[i + 1], asg));
        std::set<int> avoid;
        if (f->kind == Kind::DpPlus) {
          const SetValue& sv = set_value(f->var, asg);
          if (sv.kind != SetKind::Vertex)
            throw std::invalid_argument("dp+ avoidance set must be a vertex set");
          avoid = sv.val;
          // a terminal inside Z falsifies the predicate: every x-y path
          // contains its own endpoints
          for (auto& [x, y] : pairs)
            if (avoid.count(x) || avoid.count(y)) return false;
        }
        return find_disjoint_paths(gf, pairs, avoid).has_value();
      }
      case Kind::AnnTwLeq: {
        const SetValue& sv = set_value(f->var, asg);
        return anntw_filter(f->k, sv);
      }
      case Kind::Not: return !eval(f->children[0], asg);
      case Kind::And: return eval(f->children[0], asg) && eval(f->children[1], asg);
      case Kind::Or: return eval(f->children[0], asg) || eval(f->children[1], asg);
      case Kind::ExistsFO:
      case Kind::ForallFO: {
        bool ex = f->kind == Kind::ExistsFO;
        for (int v = 0; v < gf.n(); ++v) {
          asg.fo[f->var] = v;
          bool r = eval(f->children[0], asg);
          asg.fo.erase(f->var);
          if (r == ex) return ex;
        }
        return !ex;
      }
      case Kind::ExistsSet:
      case Kind::ForallSet:
      case Kind::ExistsSetU:
      case Kind::ForallSetU: {
        bool ex = f->kind == Kind::ExistsSet || f->kind == Kind::ExistsSetU;
        bool param = f->kind == Kind::ExistsSet || f->kind == Kind::ForallSet;
        for (auto& sub : subsets_canonical(ground_set(f->set_kind))) {
          SetValue sv{f->set_kind, sub};
          if (param && !anntw_filter(f->k, sv)) continue;
          asg.sets[f->var] = std::move(sv);
          bool r = eval(f->children[0], asg);
          asg.sets.erase(f->var);
          if (r == ex) return ex;
        }
        return !ex;
      }
    }
    return false;
  }
};

}  // namespace detail

/// Brute-force truth of φ over S under asg.  FO quantifiers range over the
/// universe, set quantifiers over all subsets (parameterized ones filtered by
/// annotated treewidth ≤ k; edge sets are annotated by their endpoints).
inline bool evaluate(const Structure& s, const Formula& f, Assignment asg = {},
                     EvalOptions opt = {}) {
  detail::Evaluator ev(s, opt);
  return ev.eval(f, asg);
}

/// First satisfying assignment of the listed free variables in canonical
/// order (variables in the given order; vertices ascending; sets by size then
/// lexicographic), or nullopt.
inline std::optional<Assignment> evaluate_query(
    const Structure& s, const Formula& f, const std::vector<std::string>& fo_vars,
    const std::vector<std::pair<std::string, SetKind>>& set_vars = {}, EvalOptions opt = {}) {
  detail::Evaluator ev(s, opt);
  Assignment asg;
  std::optional<Assignment> found;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i < set_vars.size()) {
      auto& [name, kind] = set_vars[i];
      for (auto& sub : detail::subsets_canonical(ev.ground_set(kind))) {
        asg.sets[name] = {kind, sub};
        if (rec(i + 1)) return true;
      }
      asg.sets.erase(name);
      return false;
    }
    size_t j = i - set_vars.size();
    if (j < fo_vars.size()) {
      for (int v = 0; v < s.n(); ++v) {
        asg.fo[fo_vars[j]] = v;
        if (rec(i + 1)) return true;
      }
      asg.fo.erase(fo_vars[j]);
      return false;
    }
    if (ev.eval(f, asg)) {
      found = asg;
      return true;
    }
    return false;
  };
  rec(0);
  return found;
}

/// Truth of a prenex sentence with the i-th prefix quantifier restricted to
/// range over ranges[i] (FO: elements; set: subsets).  Parameterized set
/// quantifiers keep their annotated-treewidth filter.  Used for evaluating
/// over annotated structures; edge-kind quantifiers are not supported here.
inline bool evaluate_prenex(const Structure& s, const PrenexForm& pf,
                            const std::vector<std::set<int>>& ranges, EvalOptions opt = {}) {
  if (ranges.size() != pf.prefix.size())
    throw std::invalid_argument("one range per prefix quantifier required");
  detail::Evaluator ev(s, opt);
  Assignment asg;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == pf.prefix.size()) return ev.eval(pf.matrix, asg);
    const QuantEntry& q = pf.prefix[i];
    if (q.set_kind == SetKind::Edge && is_set_quantifier(q.kind))
      throw std::invalid_argument("edge-set quantifier not supported with annotated ranges");
    const std::set<int>& R = ranges[i];
    if (q.kind == Kind::ExistsFO || q.kind == Kind::ForallFO) {
      bool ex = q.kind == Kind::ExistsFO;
      for (int v : R) {
        asg.fo[q.var] = v;
        bool r = rec(i + 1);
        asg.fo.erase(q.var);
        if (r == ex) return ex;
      }
      return !ex;
    }
    bool ex = q.kind == Kind::ExistsSet || q.kind == Kind::ExistsSetU;
    bool param = q.kind == Kind::ExistsSet || q.kind == Kind::ForallSet;
    if (static_cast<int>(R.size()) > opt.max_subset_n)
      throw cap_error("annotated set quantification over " + std::to_string(R.size()) +
                      " elements exceeds cap " + std::to_string(opt.max_subset_n));
    for (auto& sub : detail::subsets_canonical(std::vector<int>(R.begin(), R.end()))) {
      SetValue sv{SetKind::Vertex, sub};
      if (param && !ev.anntw_filter(q.k, sv)) continue;
      asg.sets[q.var] = std::move(sv);
      bool r = rec(i + 1);
      asg.sets.erase(q.var);
      if (r == ex) return ex;
    }
    return !ex;
  };
  return rec(0);
}

}  // namespace cmsotw
