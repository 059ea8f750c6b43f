#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmsotw/semantics.hpp"
#include "cmsotw/structure.hpp"
#include "cmsotw/width.hpp"

namespace cmsotw {

struct TypeParams {
  int m = 0;        // set-variable count
  int r = 0;        // first-order-variable count
  int t = 0;        // annotated-treewidth level cap per set variable
  int card_cap = 4; // largest card modulus recorded (the fixed constant)
  int width_cap = 16;
  int max_subset_n = 12;
};

/// Canonical fact vector of the quantifier-free level: which atomic facts the
/// assignment (V̄, v̄) satisfies.  Two assignments with equal vectors satisfy
/// the same boolean combinations of atomic formulas.
struct AtomicType {
  std::vector<int> facts;
  auto operator<=>(const AtomicType&) const = default;

  std::string repr() const {
    std::string s = "(";
    for (size_t i = 0; i < facts.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(facts[i]);
    }
    return s + ")";
  }
};

/// Hereditarily finite nested-set value: depth 0 is an atomic type; depth i
/// is a deduplicated set of depth-(i-1) values.  The canonical serialization
/// makes equality structural.
struct AnnotatedType {
  int depth = 0;
  std::string repr;
  auto operator<=>(const AnnotatedType&) const = default;
};

namespace detail {

inline AnnotatedType collect(int depth, std::set<std::string> child_reprs) {
  std::string s = "{";
  bool first = true;
  for (auto& c : child_reprs) {
    if (!first) s += ",";
    first = false;
    s += c;
  }
  s += "}";
  return {depth, std::move(s)};
}

}  // namespace detail

/// The atomic (level-0) type of (S, V̄, v̄): equalities, adjacencies, colors,
/// set memberships, card residues, disjoint-path verdicts over the available
/// terms, and the annotated-treewidth level of each set variable.
inline AtomicType atomic_type(const Structure& s, const std::vector<std::set<int>>& V,
                              const std::vector<int>& v, const TypeParams& p) {
  if (static_cast<int>(V.size()) != p.m || static_cast<int>(v.size()) != p.r)
    throw std::invalid_argument("atomic_type: arity mismatch");
  Graph gf = gaifman(s);
  // terms: the r first-order variables, then the constants in vocabulary order
  std::vector<int> terms = v;
  for (auto& c : s.voc.constants) terms.push_back(s.constants.at(c));
  int T = static_cast<int>(terms.size());

  AtomicType at;
  for (int i = 0; i < T; ++i)
    for (int j = i + 1; j < T; ++j) at.facts.push_back(terms[i] == terms[j]);
  for (int i = 0; i < T; ++i)
    for (int j = i + 1; j < T; ++j) at.facts.push_back(gf.has_edge(terms[i], terms[j]));
  for (auto& c : s.voc.colors)
    for (int i = 0; i < T; ++i) at.facts.push_back(s.colors.at(c).count(terms[i]) > 0);
  for (int j = 0; j < p.m; ++j)
    for (int i = 0; i < T; ++i) at.facts.push_back(V[j].count(terms[i]) > 0);
  for (int j = 0; j < p.m; ++j)
    for (int q = 2; q <= p.card_cap; ++q)
      at.facts.push_back(static_cast<int>(V[j].size()) % q == 0);
  // dp verdicts for every family of pairwise index-disjoint term pairs;
  // dp is invariant under pair order and endpoint swap, so this canonical
  // family determines every dp fact over the term supply
  {
    std::vector<std::pair<int, int>> idx_pairs;
    for (int i = 0; i < T; ++i)
      for (int j = i; j < T; ++j) idx_pairs.emplace_back(i, j);
    std::vector<std::pair<int, int>> chosen;
    std::vector<char> used(T, 0);
    std::function<void(size_t)> rec = [&](size_t from) {
      if (!chosen.empty()) {
        std::vector<std::pair<int, int>> pairs;
        for (auto& [a, b] : chosen) pairs.emplace_back(terms[a], terms[b]);
        at.facts.push_back(find_disjoint_paths(gf, pairs).has_value());
      }
      for (size_t i = from; i < idx_pairs.size(); ++i) {
        auto [a, b] = idx_pairs[i];
        if (used[a] || used[b]) continue;
        used[a] = used[b] = 1;
        chosen.push_back(idx_pairs[i]);
        rec(i + 1);
        chosen.pop_back();
        used[a] = used[b] = 0;
      }
    };
    rec(0);
  }
  // annotated-treewidth level: the least k in [0, t] with tw(G, V_j) <= k,
  // or t+1 when the level cap is exceeded
  for (int j = 0; j < p.m; ++j) {
    int level = p.t + 1;
    for (int k = 0; k <= p.t; ++k)
      if (anntw_at_most(gf, V[j], k, p.width_cap)) {
        level = k;
        break;
      }
    at.facts.push_back(level);
  }
  return at;
}

/// The level-i annotated type.  R has one annotation set per quantifier
/// position (m set positions, then r first-order positions).  Level i fills
/// the i-th innermost position: first-order levels i in [1, r] range over
/// R[m+r-i], set levels i in (r, m+r] range over subsets of R[m+r-i].
inline AnnotatedType annotated_type(const Structure& s, const std::vector<std::set<int>>& R,
                                    int level, std::vector<std::set<int>> V, std::vector<int> v,
                                    const TypeParams& p) {
  if (static_cast<int>(R.size()) != p.m + p.r)
    throw std::invalid_argument("annotated_type: need one annotation per quantifier position");
  if (level < 0 || level > p.m + p.r) throw std::invalid_argument("annotated_type: bad level");
  if (level == 0) {
    AtomicType at = atomic_type(s, V, v, p);
    return {0, at.repr()};
  }
  const std::set<int>& range = R[p.m + p.r - level];
  std::set<std::string> children;
  if (level <= p.r) {
    if (static_cast<int>(v.size()) != p.r - level || static_cast<int>(V.size()) != p.m)
      throw std::invalid_argument("annotated_type: arity mismatch at FO level");
    v.push_back(0);
    for (int u : range) {
      v.back() = u;
      children.insert(annotated_type(s, R, level - 1, V, v, p).repr);
    }
  } else {
    if (!v.empty() || static_cast<int>(V.size()) != p.m + p.r - level)
      throw std::invalid_argument("annotated_type: arity mismatch at set level");
    if (static_cast<int>(range.size()) > p.max_subset_n)
      throw cap_error("annotated_type: set level over " + std::to_string(range.size()) +
                      " elements exceeds cap " + std::to_string(p.max_subset_n));
    V.emplace_back();
    for (auto& U : detail::subsets_canonical(std::vector<int>(range.begin(), range.end()))) {
      V.back() = U;
      children.insert(annotated_type(s, R, level - 1, V, v, p).repr);
    }
  }
  return detail::collect(level, std::move(children));
}

inline AnnotatedType annotated_type(const Structure& s, const std::vector<std::set<int>>& R,
                                    const TypeParams& p) {
  return annotated_type(s, R, p.m + p.r, {}, {}, p);
}

/// Semi-annotated level-i type with d first-order positions of which only the
/// outermost r are annotated: first-order levels i in [1, d-r] range over the
/// whole universe, levels i in (d-r, d] over R[m+d-i], set levels as before.
/// R carries m + r sets (the annotated positions only).
inline AnnotatedType semi_annotated_type(const Structure& s, const std::vector<std::set<int>>& R,
                                         int d, int level, std::vector<std::set<int>> V,
                                         std::vector<int> v, const TypeParams& p) {
  if (p.r > d) throw std::invalid_argument("semi_annotated_type: r must be at most d");
  if (static_cast<int>(R.size()) != p.m + p.r)
    throw std::invalid_argument("semi_annotated_type: need m + r annotation sets");
  if (level < 0 || level > p.m + d)
    throw std::invalid_argument("semi_annotated_type: bad level");
  if (level == 0) {
    TypeParams p0 = p;
    p0.r = d;
    AtomicType at = atomic_type(s, V, v, p0);
    return {0, at.repr()};
  }
  std::set<std::string> children;
  if (level <= d) {
    std::set<int> universe;
    for (int u = 0; u < s.n(); ++u) universe.insert(u);
    const std::set<int>& range = level <= d - p.r ? universe : R[p.m + d - level];
    v.push_back(0);
    for (int u : range) {
      v.back() = u;
      children.insert(semi_annotated_type(s, R, d, level - 1, V, v, p).repr);
    }
  } else {
    const std::set<int>& range = R[p.m + d - level];
    if (static_cast<int>(range.size()) > p.max_subset_n)
      throw cap_error("semi_annotated_type: set level too large");
    V.emplace_back();
    for (auto& U : detail::subsets_canonical(std::vector<int>(range.begin(), range.end()))) {
      V.back() = U;
      children.insert(semi_annotated_type(s, R, d, level - 1, V, v, p).repr);
    }
  }
  return detail::collect(level, std::move(children));
}

inline AnnotatedType semi_annotated_type(const Structure& s, const std::vector<std::set<int>>& R,
                                         int d, const TypeParams& p) {
  return semi_annotated_type(s, R, d, p.m + d, {}, {}, p);
}

/// Two annotated structures agree when their top-level types are equal; equal
/// types imply identical verdicts on every prenex sentence with m set and r
/// first-order quantifiers evaluated over the annotated ranges.
inline bool agreement_check(const Structure& s1, const std::vector<std::set<int>>& R1,
                            const Structure& s2, const std::vector<std::set<int>>& R2,
                            const TypeParams& p) {
  return annotated_type(s1, R1, p) == annotated_type(s2, R2, p);
}

// ---------- Φ-irrelevance ----------

/// Truth of a sentence over the annotated structure (S, R̄): its prenex
/// prefix positions range over the corresponding R sets.
inline bool eval_annotated(const Structure& s, const Formula& phi,
                           const std::vector<std::set<int>>& R, EvalOptions opt = {}) {
  PrenexForm pf = to_prenex(phi);
  if (pf.prefix.size() != R.size())
    throw std::invalid_argument("eval_annotated: sentence has " +
                                std::to_string(pf.prefix.size()) + " quantifiers but " +
                                std::to_string(R.size()) + " annotation sets were given");
  return evaluate_prenex(s, pf, R, opt);
}

/// Maps annotation sets through a vertex removal.
inline std::vector<std::set<int>> restrict_annotations(const Structure& before,
                                                       const Structure& after,
                                                       const std::vector<std::set<int>>& R,
                                                       const std::vector<std::set<int>>& Sm) {
  std::vector<std::set<int>> out;
  for (size_t i = 0; i < R.size(); ++i) {
    std::set<int> t;
    for (int v : R[i]) {
      if (Sm[i].count(v)) continue;
      int nv = after.index_of(before.vertex_names[v]);
      if (nv >= 0) t.insert(nv);
    }
    out.push_back(std::move(t));
  }
  return out;
}

/// (S₀,…,S_h) is Φ-irrelevant for (S, R₁,…,R_h) when R_i ∖ S_i avoids S₀ and
/// removing S₀ from the structure and S_i from each annotation preserves the
/// verdict of every sentence in Φ.
inline bool is_irrelevant(const Structure& s, const std::vector<std::set<int>>& R,
                          const std::vector<std::set<int>>& tuple,
                          const std::vector<Formula>& Phi, EvalOptions opt = {}) {
  if (tuple.size() != R.size() + 1)
    throw std::invalid_argument("is_irrelevant: tuple must be (S0, S1..Sh) with h = |R|");
  const std::set<int>& S0 = tuple[0];
  for (size_t i = 0; i < R.size(); ++i)
    for (int v : R[i])
      if (!tuple[i + 1].count(v) && S0.count(v)) return false;  // containment violated
  Structure reduced = remove_vertices(s, S0);
  std::vector<std::set<int>> Sm(tuple.begin() + 1, tuple.end());
  auto Rr = restrict_annotations(s, reduced, R, Sm);
  for (auto& phi : Phi)
    if (eval_annotated(s, phi, R, opt) != eval_annotated(reduced, phi, Rr, opt)) return false;
  return true;
}

/// Searches Z for a Φ-irrelevant tuple with S₀ ≠ ∅.  Stage 1 tries singleton
/// S₀ with each S_i ∈ {∅, S₀}; the widening stage enumerates every S₀ ⊆ Z
/// (size then lexicographic) with S_i = (R_i ∩ S₀) ∪ T over T ⊆ (R_i∩Z)∖S₀,
/// which is exhaustive: elements of S_i outside R_i are inert and the
/// containment condition forces R_i ∩ S₀ ⊆ S_i.
inline std::optional<std::vector<std::set<int>>> find_irrelevant_tuple(
    const Structure& s, const std::vector<std::set<int>>& R, const std::vector<Formula>& Phi,
    const std::set<int>& Z, EvalOptions opt = {}) {
  size_t h = R.size();
  auto try_tuple = [&](const std::vector<std::set<int>>& tup)
      -> std::optional<std::vector<std::set<int>>> {
    if (is_irrelevant(s, R, tup, Phi, opt)) return tup;
    return std::nullopt;
  };
  // stage 1: singleton S0, S_i in {∅, S0}
  for (int z : Z) {
    std::vector<std::set<int>> tup(h + 1);
    tup[0] = {z};
    for (uint32_t mask = 0; mask < (1u << h); ++mask) {
      for (size_t i = 0; i < h; ++i) tup[i + 1] = (mask >> i) & 1 ? tup[0] : std::set<int>{};
      if (auto r = try_tuple(tup)) return r;
    }
  }
  // widening: all S0 ⊆ Z, canonical order, minimal-plus-extras S_i
  if (static_cast<int>(Z.size()) > opt.max_subset_n)
    throw cap_error("find_irrelevant_tuple: |Z| exceeds cap");
  for (auto& S0 : detail::subsets_canonical(std::vector<int>(Z.begin(), Z.end()))) {
    if (S0.empty() || S0.size() == 1) continue;  // stage 1 covered singletons
    std::vector<std::vector<std::set<int>>> choices(h);
    for (size_t i = 0; i < h; ++i) {
      std::set<int> base, extras;
      for (int v : R[i])
        if (S0.count(v)) base.insert(v);
      for (int v : R[i])
        if (Z.count(v) && !S0.count(v)) extras.insert(v);
      for (auto& T : detail::subsets_canonical(std::vector<int>(extras.begin(), extras.end()))) {
        std::set<int> si = base;
        si.insert(T.begin(), T.end());
        choices[i].push_back(std::move(si));
      }
    }
    std::vector<std::set<int>> tup(h + 1);
    tup[0] = S0;
    std::function<std::optional<std::vector<std::set<int>>>(size_t)> rec =
        [&](size_t i) -> std::optional<std::vector<std::set<int>>> {
      if (i == h) return try_tuple(tup);
      for (auto& c : choices[i]) {
        tup[i + 1] = c;
        if (auto r = rec(i + 1)) return r;
      }
      return std::nullopt;
    };
    if (auto r = rec(0)) return r;
  }
  return std::nullopt;
}

}  // namespace cmsotw
