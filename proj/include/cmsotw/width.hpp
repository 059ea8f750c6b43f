#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmsotw/graph.hpp"

namespace cmsotw {

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;            // sorted vertex lists
  std::vector<std::pair<int, int>> tree_edges;   // edges between bag indices

  /// max |bag| - 1, clamped at 0 so the empty graph has width 0.
  int width() const {
    int w = 0;
    for (auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
  }
};

/// Checks the three tree-decomposition conditions plus tree-ness.
inline std::optional<std::string> validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  int nb = static_cast<int>(td.bags.size());
  if (nb == 0) return "no bags";
  // tree shape
  if (static_cast<int>(td.tree_edges.size()) != nb - 1) return "tree edge count wrong";
  {
    std::vector<int> parent(nb);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto& [a, b] : td.tree_edges) {
      if (a < 0 || b < 0 || a >= nb || b >= nb) return "tree edge out of range";
      int ra = find(a), rb = find(b);
      if (ra == rb) return "tree has a cycle";
      parent[ra] = rb;
    }
  }
  // (1) vertex cover
  std::vector<char> covered(g.n(), 0);
  for (auto& b : td.bags)
    for (int v : b) {
      if (v < 0 || v >= g.n()) return "bag vertex out of range";
      covered[v] = 1;
    }
  for (int v = 0; v < g.n(); ++v)
    if (!covered[v]) return "vertex not covered by any bag";
  // (2) edge cover
  for (auto& [a, b] : g.edges()) {
    bool ok = false;
    for (auto& bag : td.bags) {
      bool ha = std::binary_search(bag.begin(), bag.end(), a);
      bool hb = std::binary_search(bag.begin(), bag.end(), b);
      if (ha && hb) { ok = true; break; }
    }
    if (!ok) return "edge not covered by any bag";
  }
  // (3) connectivity of occurrences
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> occ;
    for (int i = 0; i < nb; ++i)
      if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) occ.push_back(i);
    if (occ.empty()) continue;
    std::set<int> occs(occ.begin(), occ.end()), seen{occ[0]};
    std::vector<int> stack{occ[0]};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (auto& [a, b] : td.tree_edges) {
        int y = a == x ? b : b == x ? a : -1;
        if (y >= 0 && occs.count(y) && !seen.count(y)) {
          seen.insert(y);
          stack.push_back(y);
        }
      }
    }
    if (seen.size() != occs.size()) return "occurrences of a vertex not connected in tree";
  }
  return std::nullopt;
}

struct TreewidthResult {
  int width = 0;
  TreeDecomposition td;
};

namespace detail {

/// q(S, v): number of vertices outside S∪{v} reachable from v through S.
inline int elim_degree(const Graph& g, uint32_t S, int v) {
  uint32_t seen = 1u << v;
  std::vector<int> stack{v};
  int count = 0;
  uint32_t counted = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(x)) {
      uint32_t bit = 1u << w;
      if (S & bit) {
        if (!(seen & bit)) {
          seen |= bit;
          stack.push_back(w);
        }
      } else if (w != v && !(counted & bit)) {
        counted |= bit;
        ++count;
      }
    }
  }
  return count;
}

}  // namespace detail

/// Exact treewidth by dynamic programming over elimination-ordering prefixes,
/// with a witnessing tree decomposition built from the optimal ordering.
inline TreewidthResult treewidthExactImpl(const Graph& g) {
  int n = g.n();
  TreewidthResult res;
  if (n == 0) {
    res.width = 0;
    res.td.bags.push_back({});
    return res;
  }
  std::vector<uint8_t> f(1u << n, 0);
  for (uint32_t S = 1; S < (1u << n); ++S) {
    int best = 255;
    for (int v = 0; v < n; ++v) {
      if (!(S & (1u << v))) continue;
      uint32_t rest = S & ~(1u << v);
      int cand = std::max<int>(f[rest], detail::elim_degree(g, rest, v));
      best = std::min(best, cand);
    }
    f[S] = static_cast<uint8_t>(best);
  }
  res.width = f[(1u << n) - 1];

  // Recover an optimal elimination ordering (last-eliminated first in S-walk).
  std::vector<int> order;
  uint32_t S = (1u << n) - 1;
  while (S) {
    for (int v = 0; v < n; ++v) {
      if (!(S & (1u << v))) continue;
      uint32_t rest = S & ~(1u << v);
      if (std::max<int>(f[rest], detail::elim_degree(g, rest, v)) == f[S]) {
        order.push_back(v);
        S = rest;
        break;
      }
    }
  }
  std::reverse(order.begin(), order.end());  // elimination order, first first

  // Bags from fill-in elimination; bag(v_i) attaches to the bag of the
  // earliest-eliminated remaining neighbor.
  std::vector<std::set<int>> adj(n);
  for (auto& [a, b] : g.edges()) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::vector<int>> bags(n);
  std::vector<int> attach(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    std::vector<int> nb(adj[v].begin(), adj[v].end());
    bags[i] = nb;
    bags[i].push_back(v);
    std::sort(bags[i].begin(), bags[i].end());
    int first = -1;
    for (int w : nb)
      if (first == -1 || pos[w] < pos[first]) first = w;
    attach[i] = first == -1 ? (i + 1 < n ? i + 1 : -1) : pos[first];
    for (int a : nb)
      for (int b : nb)
        if (a != b) adj[a].insert(b);
    for (int w : nb) adj[w].erase(v);
    adj[v].clear();
  }
  res.td.bags = bags;
  for (int i = 0; i < n; ++i)
    if (attach[i] != -1) res.td.tree_edges.push_back({i, attach[i]});
  return res;
}

inline TreewidthResult treewidth_exact(const Graph& g, int cap = 16) {
  if (g.n() > cap)
    throw cap_error("treewidth_exact: graph has " + std::to_string(g.n()) +
                    " vertices, cap is " + std::to_string(cap));
  return treewidthExactImpl(g);
}

// ---------- cheap treewidth bounds used by the minor search ----------

inline bool is_forest(const Graph& g) {
  std::vector<int> parent(g.n());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto& [a, b] : g.edges()) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

/// tw(G) <= 2 iff G reduces to nothing under delete-degree-<=1 /
/// contract-degree-2 (series-parallel reduction).
inline bool tw_at_most_2(const Graph& g) {
  std::vector<std::set<int>> adj(g.n());
  for (auto& [a, b] : g.edges()) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<char> alive(g.n(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.n(); ++v) {
      if (!alive[v]) continue;
      if (adj[v].size() <= 1) {
        for (int w : adj[v]) adj[w].erase(v);
        adj[v].clear();
        alive[v] = 0;
        changed = true;
      } else if (adj[v].size() == 2) {
        int a = *adj[v].begin(), b = *std::next(adj[v].begin());
        adj[a].erase(v);
        adj[b].erase(v);
        adj[a].insert(b);
        adj[b].insert(a);
        adj[v].clear();
        alive[v] = 0;
        changed = true;
      }
    }
  }
  for (int v = 0; v < g.n(); ++v)
    if (alive[v]) return false;
  return true;
}

/// Min-degree elimination heuristic; returns an upper bound on tw(G).
inline int treewidth_upper_bound(const Graph& g) {
  std::vector<std::set<int>> adj(g.n());
  for (auto& [a, b] : g.edges()) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<char> alive(g.n(), 1);
  int ub = 0;
  for (int step = 0; step < g.n(); ++step) {
    int v = -1;
    for (int u = 0; u < g.n(); ++u)
      if (alive[u] && (v == -1 || adj[u].size() < adj[v].size())) v = u;
    ub = std::max(ub, static_cast<int>(adj[v].size()));
    std::vector<int> nb(adj[v].begin(), adj[v].end());
    for (int a : nb)
      for (int b : nb)
        if (a != b) adj[a].insert(b);
    for (int w : nb) adj[w].erase(v);
    adj[v].clear();
    alive[v] = 0;
  }
  return ub;
}

inline bool tw_at_most(const Graph& g, int k, int cap = 16) {
  if (k < 0) return false;
  if (k == 0) return g.edge_count() == 0;
  if (k == 1) return is_forest(g);
  if (k == 2) return tw_at_most_2(g);
  if (treewidth_upper_bound(g) <= k) return true;
  return treewidth_exact(g, cap).width <= k;
}

// ---------- X-rooted minors ----------

/// A collection of pairwise disjoint connected branch sets, each containing
/// at least one vertex of X, together with the edge set of the minor on them.
struct RootedMinorModel {
  std::vector<std::vector<int>> branch_sets;   // sorted vertex lists
  std::vector<std::pair<int, int>> minor_edges;

  Graph minor() const {
    Graph h(static_cast<int>(branch_sets.size()));
    for (auto& e : minor_edges) h.add_edge(e.first, e.second);
    return h;
  }
};

inline std::optional<std::string> validate_model(const Graph& g, const std::set<int>& X,
                                                 const RootedMinorModel& m) {
  std::set<int> used;
  for (auto& bs : m.branch_sets) {
    std::set<int> s(bs.begin(), bs.end());
    for (int v : s) {
      if (v < 0 || v >= g.n()) return "branch set vertex out of range";
      if (!used.insert(v).second) return "branch sets not disjoint";
    }
    if (!g.is_connected_subset(s)) return "branch set not connected";
    bool hits = false;
    for (int v : s)
      if (X.count(v)) { hits = true; break; }
    if (!hits) return "branch set misses X";
  }
  for (auto& [a, b] : m.minor_edges) {
    bool found = false;
    for (int u : m.branch_sets[a])
      for (int v : m.branch_sets[b])
        if (g.has_edge(u, v)) found = true;
    if (!found) return "minor edge without a supporting graph edge";
  }
  return std::nullopt;
}

namespace detail {

/// Enumerates every connected subset of `avail` containing `seed` once;
/// calls body(B).  Standard frontier-expansion with a banned set.
template <typename F>
void connected_subsets(const Graph& g, const std::vector<char>& avail, int seed, F&& body) {
  std::vector<int> B{seed};
  std::vector<char> in_b(g.n(), 0), banned(g.n(), 0);
  in_b[seed] = 1;
  std::vector<int> cand;
  for (int w : g.neighbors(seed))
    if (avail[w]) cand.push_back(w);
  std::function<bool(std::vector<int>)> rec = [&](std::vector<int> cands) -> bool {
    if (!body(B)) return false;
    for (size_t i = 0; i < cands.size(); ++i) {
      int v = cands[i];
      if (banned[v] || in_b[v]) continue;
      in_b[v] = 1;
      B.push_back(v);
      std::vector<int> next(cands.begin() + i + 1, cands.end());
      for (int w : g.neighbors(v))
        if (avail[w] && !in_b[w] && !banned[w] &&
            std::find(next.begin(), next.end(), w) == next.end() &&
            std::find(cands.begin(), cands.begin() + i, w) == cands.begin() + i)
          next.push_back(w);
      std::vector<int> newly_banned;
      for (size_t j = 0; j < i; ++j)
        if (!banned[cands[j]]) {
          banned[cands[j]] = 1;
          newly_banned.push_back(cands[j]);
        }
      bool cont = rec(std::move(next));
      for (int w : newly_banned) banned[w] = 0;
      B.pop_back();
      in_b[v] = 0;
      if (!cont) return false;
    }
    return true;
  };
  rec(std::move(cand));
}

}  // namespace detail

/// Streams every family of disjoint connected X-hitting branch sets
/// (non-covering families included), with the all-feasible-edges minor.
/// Callback returns false to stop.  Exponential; guarded by `cap`.
inline void enumerate_rooted_minors(const Graph& g, const std::set<int>& X,
                                    const std::function<bool(const RootedMinorModel&)>& cb,
                                    int cap = 12) {
  if (g.n() > cap)
    throw cap_error("enumerate_rooted_minors: " + std::to_string(g.n()) + " vertices, cap " +
                    std::to_string(cap));
  std::vector<int> state(g.n(), 0);  // 0 undecided, -1 unused, >=1 block id
  std::vector<std::vector<int>> blocks;
  std::function<bool()> rec = [&]() -> bool {
    int u = -1;
    for (int v = 0; v < g.n(); ++v)
      if (state[v] == 0) { u = v; break; }
    if (u == -1) {
      RootedMinorModel m;
      m.branch_sets = blocks;
      int nb = static_cast<int>(blocks.size());
      for (int a = 0; a < nb; ++a)
        for (int b = a + 1; b < nb; ++b) {
          bool adj = false;
          for (int x : blocks[a]) {
            for (int y : blocks[b])
              if (g.has_edge(x, y)) { adj = true; break; }
            if (adj) break;
          }
          if (adj) m.minor_edges.push_back({a, b});
        }
      return cb(m);
    }
    // u unused
    state[u] = -1;
    if (!rec()) return false;
    state[u] = 0;
    // u seeds a new block
    bool cont = true;
    std::vector<char> avail(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) avail[v] = state[v] == 0;
    detail::connected_subsets(g, avail, u, [&](const std::vector<int>& B) {
      bool hits = false;
      for (int v : B)
        if (X.count(v)) { hits = true; break; }
      if (hits) {
        int id = static_cast<int>(blocks.size()) + 1;
        for (int v : B) state[v] = id;
        auto sb = B;
        std::sort(sb.begin(), sb.end());
        blocks.push_back(sb);
        cont = rec();
        blocks.pop_back();
        for (int v : B) state[v] = 0;
      }
      return cont;
    });
    return cont;
  };
  rec();
}

namespace detail {

/// The maximum over X-rooted minors is attained at partitions of the union
/// of the components meeting X into connected X-hitting blocks with all
/// feasible edges: absorbing an unused vertex into an adjacent branch set
/// only adds minor edges, and treewidth is monotone under edge and vertex
/// addition.  Enumerates those partitions; cb gets the quotient graph and
/// returns false to stop.
inline void covering_partitions(const Graph& g, const std::set<int>& X,
                                const std::function<bool(const Graph&)>& cb) {
  // restrict to components meeting X
  auto comp = g.components();
  std::set<int> live_comps;
  for (int v : X) live_comps.insert(comp[v]);
  std::vector<int> keep;
  for (int v = 0; v < g.n(); ++v)
    if (live_comps.count(comp[v])) keep.push_back(v);
  std::vector<int> old_to_new;
  Graph gs = g.induced(keep, &old_to_new);
  std::vector<char> in_x(gs.n(), 0);
  for (int v : X) in_x[old_to_new[v]] = 1;

  std::vector<int> block(gs.n(), -1);
  int nblocks = 0;
  std::function<bool()> rec = [&]() -> bool {
    int u = -1;
    for (int v = 0; v < gs.n(); ++v)
      if (block[v] == -1) { u = v; break; }
    if (u == -1) {
      Graph h(nblocks);
      for (auto& [a, b] : gs.edges())
        if (block[a] != block[b]) h.add_edge(block[a], block[b]);
      return cb(h);
    }
    // dead-end check: the unassigned region around u must reach X
    {
      std::vector<char> seen(gs.n(), 0);
      std::vector<int> stack{u};
      seen[u] = 1;
      bool reach = in_x[u];
      while (!stack.empty() && !reach) {
        int x = stack.back();
        stack.pop_back();
        for (int w : gs.neighbors(x))
          if (block[w] == -1 && !seen[w]) {
            seen[w] = 1;
            if (in_x[w]) { reach = true; break; }
            stack.push_back(w);
          }
      }
      if (!reach) return true;  // no completion from here, skip branch
    }
    std::vector<char> avail(gs.n(), 0);
    for (int v = 0; v < gs.n(); ++v) avail[v] = block[v] == -1;
    bool cont = true;
    connected_subsets(gs, avail, u, [&](const std::vector<int>& B) {
      bool hits = false;
      for (int v : B)
        if (in_x[v]) { hits = true; break; }
      if (hits) {
        for (int v : B) block[v] = nblocks;
        ++nblocks;
        cont = rec();
        --nblocks;
        for (int v : B) block[v] = -1;
      }
      return cont;
    });
    return cont;
  };
  rec();
}

}  // namespace detail

/// Annotated treewidth tw(G, X): maximum treewidth of an X-rooted minor.
inline int annotated_treewidth(const Graph& g, const std::set<int>& X, int cap = 16) {
  if (X.empty()) return 0;  // only the empty minor; tw of the empty graph is 0
  if (g.n() > cap)
    throw cap_error("annotated_treewidth: " + std::to_string(g.n()) + " vertices, cap " +
                    std::to_string(cap));
  int global_ub = treewidth_exact(g, cap).width;  // tw(G,X) <= tw(G)
  int best = 0;
  detail::covering_partitions(g, X, [&](const Graph& h) {
    if (treewidth_upper_bound(h) > best) {
      best = std::max(best, treewidthExactImpl(h).width);
      if (best >= global_ub) return false;
    }
    return true;
  });
  return best;
}

/// tw(G, X) <= k, short-circuiting on the first witness above k.
inline bool anntw_at_most(const Graph& g, const std::set<int>& X, int k, int cap = 16) {
  if (k < 0) return false;
  if (X.empty()) return true;
  if (g.n() > cap)
    throw cap_error("anntw_at_most: " + std::to_string(g.n()) + " vertices, cap " +
                    std::to_string(cap));
  if (tw_at_most(g, k, cap)) return true;  // tw(G,X) <= tw(G)
  bool ok = true;
  detail::covering_partitions(g, X, [&](const Graph& h) {
    if (!tw_at_most(h, k, cap)) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

}  // namespace cmsotw
