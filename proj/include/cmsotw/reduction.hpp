#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cmsotw/types.hpp"

namespace cmsotw {

/// Localizer verdicts: either the whole instance already has small width, or
/// a local window (Y with its designated removable core Z ⊆ Y) in which an
/// irrelevant tuple is promised to exist.
struct SmallWidth {};
struct Window {
  std::set<int> Y;
  std::set<int> Z;
};
using LocalizerResult = std::variant<SmallWidth, Window>;
using Localizer =
    std::function<LocalizerResult(const Structure&, const std::vector<std::set<int>>&)>;

struct localizer_contract_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Desk-scale localizer: reports SmallWidth when the treewidth is at most
/// `threshold`, otherwise hands back the identity window Y = Z = V.
inline Localizer toy_localizer(int threshold, int width_cap = 16) {
  return [threshold, width_cap](const Structure& s,
                                const std::vector<std::set<int>>&) -> LocalizerResult {
    if (treewidth_exact(gaifman(s), width_cap).width <= threshold) return SmallWidth{};
    std::set<int> all;
    for (int v = 0; v < s.n(); ++v) all.insert(v);
    return Window{all, all};
  };
}

/// One removal step: S₀..S_h recorded by vertex id so the trace survives
/// reindexing.
struct TraceStep {
  int iteration = 0;
  std::vector<std::vector<std::string>> removed;  // h+1 name lists
};

struct ReductionResult {
  Structure s;
  std::vector<std::set<int>> R;
  std::vector<TraceStep> trace;
};

namespace detail {

inline std::vector<std::vector<std::string>> tuple_names(const Structure& s,
                                                         const std::vector<std::set<int>>& tup) {
  std::vector<std::vector<std::string>> out;
  for (auto& si : tup) {
    std::vector<std::string> names;
    for (int v : si) names.push_back(s.vertex_names[v]);
    out.push_back(std::move(names));
  }
  return out;
}

inline std::pair<Structure, std::vector<std::set<int>>> apply_removal(
    const Structure& s, const std::vector<std::set<int>>& R,
    const std::vector<std::set<int>>& tup) {
  Structure reduced = remove_vertices(s, tup[0]);
  std::vector<std::set<int>> Sm(tup.begin() + 1, tup.end());
  return {reduced, restrict_annotations(s, reduced, R, Sm)};
}

}  // namespace detail

/// Iterated local-irrelevancy removal: ask the localizer for a window, find a
/// Ψ-irrelevant tuple with S₀ ≠ ∅ inside its Z, remove it, repeat until the
/// localizer reports SmallWidth.  A window without an irrelevant tuple is a
/// broken localizer contract and raises an error.
inline ReductionResult reduce_annotations(const Structure& s, const std::vector<std::set<int>>& R,
                                          const Localizer& localizer,
                                          const std::vector<Formula>& Psi,
                                          EvalOptions opt = {}) {
  ReductionResult res{s, R, {}};
  for (int iter = 1;; ++iter) {
    LocalizerResult lr = localizer(res.s, res.R);
    if (std::holds_alternative<SmallWidth>(lr)) return res;
    const Window& w = std::get<Window>(lr);
    auto tup = find_irrelevant_tuple(res.s, res.R, Psi, w.Z, opt);
    if (!tup || tup->at(0).empty())
      throw localizer_contract_error(
          "localizer returned a window but no irrelevant tuple with nonempty S0 exists in Z");
    res.trace.push_back({iter, detail::tuple_names(res.s, *tup)});
    auto [ns, nR] = detail::apply_removal(res.s, res.R, *tup);
    res.s = std::move(ns);
    res.R = std::move(nR);
  }
}

/// Re-applies a recorded trace to the original annotated structure.
inline std::pair<Structure, std::vector<std::set<int>>> replay_trace(
    const Structure& s, const std::vector<std::set<int>>& R,
    const std::vector<TraceStep>& trace) {
  Structure cur = s;
  std::vector<std::set<int>> curR = R;
  for (auto& step : trace) {
    std::vector<std::set<int>> tup;
    for (auto& names : step.removed) {
      std::set<int> si;
      for (auto& name : names) {
        int v = cur.index_of(name);
        if (v < 0) throw std::invalid_argument("trace names vertex absent from structure: " + name);
        si.insert(v);
      }
      tup.push_back(std::move(si));
    }
    auto [ns, nR] = detail::apply_removal(cur, curR, tup);
    cur = std::move(ns);
    curR = std::move(nR);
  }
  return {cur, curR};
}

struct DecideResult {
  bool verdict = false;
  ReductionResult reduction;
};

/// Two-step model checking: annotate every quantifier position with the full
/// universe, shrink the instance by irrelevancy removal with Ψ = {φ}, then
/// evaluate φ's prenex form over the surviving annotated ranges.
inline DecideResult decide(const Structure& s, const Formula& phi, const Localizer& localizer,
                           EvalOptions opt = {}) {
  PrenexForm pf = to_prenex(phi);
  for (auto& q : pf.prefix)
    if (is_set_quantifier(q.kind) && q.set_kind == SetKind::Edge)
      throw std::invalid_argument("decide: edge-set quantifiers are not supported");
  std::set<int> all;
  for (int v = 0; v < s.n(); ++v) all.insert(v);
  std::vector<std::set<int>> R(pf.prefix.size(), all);
  Formula prenexed = to_formula(pf);
  DecideResult res;
  res.reduction = reduce_annotations(s, R, localizer, {prenexed}, opt);
  res.verdict = evaluate_prenex(res.reduction.s, pf, res.reduction.R, opt);
  return res;
}

}  // namespace cmsotw
