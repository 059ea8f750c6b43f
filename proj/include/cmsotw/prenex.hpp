#pragma once

#include "cmsotw/formula.hpp"

namespace cmsotw {

struct QuantEntry {
  Kind kind;  // one of the six quantifier kinds
  std::string var;
  SetKind set_kind = SetKind::Vertex;
  int k = 0;
  bool operator==(const QuantEntry&) const = default;
};

struct PrenexForm {
  std::vector<QuantEntry> prefix;
  Formula matrix;
};

namespace detail {

inline Kind dual(Kind k) {
  switch (k) {
    case Kind::ExistsFO: return Kind::ForallFO;
    case Kind::ForallFO: return Kind::ExistsFO;
    case Kind::ExistsSet: return Kind::ForallSet;
    case Kind::ForallSet: return Kind::ExistsSet;
    case Kind::ExistsSetU: return Kind::ForallSetU;
    case Kind::ForallSetU: return Kind::ExistsSetU;
    default: return k;
  }
}

inline bool existential(Kind k) {
  return k == Kind::ExistsFO || k == Kind::ExistsSet || k == Kind::ExistsSetU;
}

inline bool fo_quantifier(Kind k) { return k == Kind::ExistsFO || k == Kind::ForallFO; }

/// Within each maximal run of quantifiers of one direction, stably move set
/// quantifiers before FO quantifiers.  Same-direction neighbors commute, so
/// this preserves meaning; across a direction flip no reordering happens.
inline void set_first_within_runs(std::vector<QuantEntry>& prefix) {
  size_t i = 0;
  while (i < prefix.size()) {
    size_t j = i;
    while (j < prefix.size() && existential(prefix[j].kind) == existential(prefix[i].kind)) ++j;
    std::stable_sort(prefix.begin() + i, prefix.begin() + j,
                     [](const QuantEntry& a, const QuantEntry& b) {
                       return !fo_quantifier(a.kind) && fo_quantifier(b.kind);
                     });
    i = j;
  }
}

}  // namespace detail

/// Prenex normalization.  Binders must already be pairwise distinct (the
/// parser's alpha-renaming guarantees this), so quantifiers hoist across
/// and/or without capture.  Negation dualizes the whole prefix.
inline PrenexForm to_prenex(const Formula& f) {
  PrenexForm r;
  switch (f->kind) {
    case Kind::Not: {
      r = to_prenex(f->children[0]);
      for (auto& q : r.prefix) q.kind = detail::dual(q.kind);
      r.matrix = f_not(r.matrix);
      return r;
    }
    case Kind::And:
    case Kind::Or: {
      PrenexForm a = to_prenex(f->children[0]);
      PrenexForm b = to_prenex(f->children[1]);
      r.prefix = a.prefix;
      r.prefix.insert(r.prefix.end(), b.prefix.begin(), b.prefix.end());
      r.matrix = f->kind == Kind::And ? f_and(a.matrix, b.matrix) : f_or(a.matrix, b.matrix);
      detail::set_first_within_runs(r.prefix);
      return r;
    }
    case Kind::ExistsFO:
    case Kind::ForallFO:
    case Kind::ExistsSet:
    case Kind::ForallSet:
    case Kind::ExistsSetU:
    case Kind::ForallSetU: {
      r = to_prenex(f->children[0]);
      r.prefix.insert(r.prefix.begin(), {f->kind, f->var, f->set_kind, f->k});
      detail::set_first_within_runs(r.prefix);
      return r;
    }
    default:
      r.matrix = f;
      return r;
  }
}

inline Formula to_formula(const PrenexForm& pf) {
  Formula f = pf.matrix;
  for (auto it = pf.prefix.rbegin(); it != pf.prefix.rend(); ++it) {
    FormulaNode n;
    n.kind = it->kind;
    n.var = it->var;
    n.set_kind = it->set_kind;
    n.k = it->k;
    n.children = {f};
    f = mk(std::move(n));
  }
  return f;
}

}  // namespace cmsotw
