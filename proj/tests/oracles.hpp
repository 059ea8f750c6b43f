// Independent brute-force oracles used to cross-check the library.  Nothing
// here shares search logic with the implementation under test.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "cmsotw/graph.hpp"
#include "cmsotw/structure.hpp"

namespace oracle {

using cmsotw::Graph;

/// All labeled graphs on n vertices, by edge bitmask.
inline std::vector<Graph> all_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<Graph> out;
  for (uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    Graph g(n);
    for (size_t e = 0; e < slots.size(); ++e)
      if (mask & (1u << e)) g.add_edge(slots[e].first, slots[e].second);
    out.push_back(std::move(g));
  }
  return out;
}

/// All simple paths from a to b (each as a vertex list).
inline std::vector<std::vector<int>> all_paths(const Graph& g, int a, int b) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur{a};
  std::vector<char> used(g.n(), 0);
  used[a] = 1;
  std::function<void(int)> dfs = [&](int v) {
    if (v == b) {
      out.push_back(cur);
      return;
    }
    for (int w : g.neighbors(v)) {
      if (used[w]) continue;
      used[w] = 1;
      cur.push_back(w);
      dfs(w);
      cur.pop_back();
      used[w] = 0;
    }
  };
  dfs(a);
  return out;
}

/// Disjoint-paths verdict by full cross-product enumeration of simple paths.
inline bool dp(const Graph& g, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::vector<std::vector<int>>> cand;
  for (auto& [a, b] : pairs) {
    cand.push_back(all_paths(g, a, b));
    if (cand.back().empty()) return false;
  }
  std::vector<int> pick(pairs.size(), 0);
  std::function<bool(size_t, std::set<int>)> rec = [&](size_t i, std::set<int> used) -> bool {
    if (i == pairs.size()) return true;
    for (auto& path : cand[i]) {
      bool clash = false;
      for (int v : path)
        if (used.count(v)) { clash = true; break; }
      if (clash) continue;
      std::set<int> next = used;
      next.insert(path.begin(), path.end());
      if (rec(i + 1, std::move(next))) return true;
    }
    return false;
  };
  return rec(0, {});
}

/// Exact treewidth as the best elimination ordering, found by plain
/// branch-and-bound over permutations (no subset DP).
inline int treewidth(const Graph& g) {
  int n = g.n();
  if (n == 0) return 0;
  std::vector<std::set<int>> adj(n);
  for (auto& [a, b] : g.edges()) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  int best = n - 1;
  std::vector<char> gone(n, 0);
  std::function<void(int, int, std::vector<std::set<int>>)> rec =
      [&](int left, int cur, std::vector<std::set<int>> a) {
        if (cur >= best) return;
        if (left == 0) {
          best = cur;
          return;
        }
        for (int v = 0; v < n; ++v) {
          if (gone[v]) continue;
          int deg = static_cast<int>(a[v].size());
          if (std::max(cur, deg) >= best) continue;
          auto na = a;
          std::vector<int> nb(na[v].begin(), na[v].end());
          for (int x : nb)
            for (int y : nb)
              if (x != y) na[x].insert(y);
          for (int w : nb) na[w].erase(v);
          na[v].clear();
          gone[v] = 1;
          rec(left - 1, std::max(cur, deg), std::move(na));
          gone[v] = 0;
        }
      };
  rec(n, 0, adj);
  return best;
}

/// Annotated treewidth by raw enumeration: every labeling of vertices into
/// "unused" or one of up to n blocks, validity checked after the fact, and
/// every subset of the feasible minor edges evaluated (no maximal-edge
/// shortcut).  Exponential in a worse way than the implementation — only for
/// very small graphs.
inline int annotated_treewidth(const Graph& g, const std::set<int>& X) {
  int n = g.n();
  if (X.empty()) return 0;
  int best = 0;
  std::vector<int> label(n, -1);  // -1 unused, else block id
  std::function<void(int)> assign = [&](int v) {
    if (v == n) {
      int nb = 0;
      for (int u = 0; u < n; ++u) nb = std::max(nb, label[u] + 1);
      // normalize: block ids must be used contiguously to avoid empty blocks
      std::vector<std::set<int>> blocks(nb);
      for (int u = 0; u < n; ++u)
        if (label[u] >= 0) blocks[label[u]].insert(u);
      for (auto& b : blocks)
        if (b.empty()) return;
      for (auto& b : blocks) {
        if (!g.is_connected_subset(b)) return;
        bool hit = false;
        for (int u : b)
          if (X.count(u)) { hit = true; break; }
        if (!hit) return;
      }
      std::vector<std::pair<int, int>> feasible;
      for (int a = 0; a < nb; ++a)
        for (int b = a + 1; b < nb; ++b) {
          bool adj = false;
          for (int x : blocks[a]) {
            for (int y : blocks[b])
              if (g.has_edge(x, y)) { adj = true; break; }
            if (adj) break;
          }
          if (adj) feasible.emplace_back(a, b);
        }
      for (uint32_t mask = 0; mask < (1u << feasible.size()); ++mask) {
        Graph h(nb);
        for (size_t e = 0; e < feasible.size(); ++e)
          if (mask & (1u << e)) h.add_edge(feasible[e].first, feasible[e].second);
        best = std::max(best, treewidth(h));
      }
      return;
    }
    for (int l = -1; l < n; ++l) {
      label[v] = l;
      assign(v + 1);
    }
    label[v] = -1;
  };
  assign(0);
  return best;
}

}  // namespace oracle
