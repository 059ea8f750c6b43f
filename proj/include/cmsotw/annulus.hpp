#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmsotw/graph_io.hpp"
#include "cmsotw/semantics.hpp"
#include "cmsotw/structure.hpp"

namespace cmsotw {

/// Plane annulus fixture: the concentric embedding is carried by an integer
/// radial coordinate per vertex (`ring`); cycle C_i sits on one ring value.
struct Fixture {
  Structure s;
  std::vector<std::vector<int>> cycles;  // outer to inner, vertex index lists
  std::vector<std::vector<int>> rails;   // C1-side endpoint first
  std::vector<int> ring;                 // per-vertex radial coordinate

  int p() const { return static_cast<int>(cycles.size()); }
  int q() const { return static_cast<int>(rails.size()); }
};

/// The standard fixture: p concentric cycles crossed by q rails, cycle i and
/// rail j meeting in the single vertex (i, j).
inline Fixture annulus_grid_fixture(int p, int q) {
  Fixture f;
  f.s = generate_annulus_grid(p, q);
  f.ring.assign(p * q, 0);
  for (int i = 0; i < p; ++i) {
    std::vector<int> c;
    for (int j = 0; j < q; ++j) {
      c.push_back(i * q + j);
      f.ring[i * q + j] = i;
    }
    f.cycles.push_back(c);
  }
  for (int j = 0; j < q; ++j) {
    std::vector<int> r;
    for (int i = 0; i < p; ++i) r.push_back(i * q + j);
    f.rails.push_back(r);
  }
  return f;
}

namespace detail {

inline bool is_cycle_in(const Graph& g, const std::vector<int>& c) {
  int n = static_cast<int>(c.size());
  if (n < 3) return false;
  for (int i = 0; i < n; ++i)
    if (!g.has_edge(c[i], c[(i + 1) % n])) return false;
  return true;
}

inline bool is_path_in(const Graph& g, const std::vector<int>& p) {
  if (p.empty()) return false;
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (!g.has_edge(p[i], p[i + 1])) return false;
  return true;
}

inline bool pairwise_disjoint(const std::vector<std::vector<int>>& lists) {
  std::set<int> seen;
  for (auto& l : lists)
    for (int v : l)
      if (!seen.insert(v).second) return false;
  return true;
}

}  // namespace detail

/// First violated railed-annulus condition, or nullopt.
inline std::optional<std::string> validate_annulus(const Fixture& f) {
  const Graph& g = f.s.g;
  if (f.p() < 3 || f.q() < 3) return "need at least 3 cycles and 3 rails";
  if (static_cast<int>(f.ring.size()) != g.n()) return "ring data does not cover the universe";
  if (!detail::pairwise_disjoint(f.cycles)) return "cycles share a vertex";
  if (!detail::pairwise_disjoint(f.rails)) return "rails share a vertex";
  for (auto& c : f.cycles) {
    if (!detail::is_cycle_in(g, c)) return "cycle list is not a cycle of the graph";
    for (size_t i = 1; i < c.size(); ++i)
      if (f.ring[c[i]] != f.ring[c[0]]) return "cycle spans several rings";
  }
  for (int i = 0; i + 1 < f.p(); ++i)
    if (f.ring[f.cycles[i][0]] >= f.ring[f.cycles[i + 1][0]])
      return "cycles not ordered outer to inner";
  for (auto& r : f.rails) {
    if (!detail::is_path_in(g, r)) return "rail list is not a path of the graph";
    if (f.ring[r.front()] > f.ring[r.back()]) return "rail not oriented from the outer side";
  }
  for (int i = 0; i < f.p(); ++i) {
    std::set<int> cv(f.cycles[i].begin(), f.cycles[i].end());
    for (int j = 0; j < f.q(); ++j) {
      // the intersection must be a non-empty contiguous run of the rail
      std::vector<char> hit;
      for (int v : f.rails[j]) hit.push_back(cv.count(v) > 0);
      int first = -1, last = -1;
      for (size_t k = 0; k < hit.size(); ++k)
        if (hit[k]) {
          if (first < 0) first = static_cast<int>(k);
          last = static_cast<int>(k);
        }
      if (first < 0)
        return "cycle " + std::to_string(i + 1) + " misses rail " + std::to_string(j + 1);
      for (int k = first; k <= last; ++k)
        if (!hit[k])
          return "cycle " + std::to_string(i + 1) + " meets rail " + std::to_string(j + 1) +
                 " in a disconnected set";
    }
  }
  return std::nullopt;
}

/// Vertices drawn on or between cycles C_i and C_j (1-based, inclusive):
/// everything whose radial coordinate lies in the cycles' ring interval.
inline std::set<int> influence(const Fixture& f, int i, int j) {
  if (i < 1 || j > f.p() || i > j) throw std::invalid_argument("influence: bad cycle range");
  int lo = f.ring[f.cycles[i - 1][0]];
  int hi = f.ring[f.cycles[j - 1][0]];
  std::set<int> out;
  for (int v = 0; v < f.s.n(); ++v)
    if (f.ring[v] >= lo && f.ring[v] <= hi) out.insert(v);
  return out;
}

/// One block of an (s,h)-refinement: the sub-annulus between two cycles.
struct RefinementBlock {
  std::vector<int> w;          // index word in [0, s-1]^h
  int first_cycle = 0;         // 1-based, inclusive
  int last_cycle = 0;
};

/// Splits the cycle sequence into s^h consecutive blocks of p' = p / s^h
/// cycles each; block A_w̄ covers cycles [1 + p'(n_w̄ - 1), p'·n_w̄] with
/// n_w̄ = 1 + Σ_i w_i·s^(h-i).
inline std::vector<RefinementBlock> refine(const Fixture& f, int s, int h) {
  if (s < 1 || h < 0) throw std::invalid_argument("refine: need s >= 1, h >= 0");
  long long blocks = 1;
  for (int i = 0; i < h; ++i) blocks *= s;
  if (f.p() % blocks != 0 || f.p() / blocks < 3)
    throw std::invalid_argument("refine: p must be s^h * p' with p' >= 3");
  int pp = static_cast<int>(f.p() / blocks);
  std::vector<RefinementBlock> out;
  std::vector<int> w(h, 0);
  while (true) {
    long long n = 1;
    long long pw = 1;
    for (int i = h - 1; i >= 0; --i) {
      n += w[i] * pw;
      pw *= s;
    }
    out.push_back({w, static_cast<int>(1 + pp * (n - 1)), static_cast<int>(pp * n)});
    int i = h - 1;
    while (i >= 0 && w[i] == s - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  return out;
}

/// Crops the fixture to the cycles of one refinement block (or any cycle
/// range): keeps vertices in the range's influence, truncates the rails.
inline Fixture crop(const Fixture& f, int first_cycle, int last_cycle) {
  std::set<int> keep_set = influence(f, first_cycle, last_cycle);
  std::set<int> drop;
  for (int v = 0; v < f.s.n(); ++v)
    if (!keep_set.count(v)) drop.insert(v);
  Fixture out;
  out.s = remove_vertices(f.s, drop);
  auto remap = [&](const std::vector<int>& vs) {
    std::vector<int> r;
    for (int v : vs) {
      int nv = out.s.index_of(f.s.vertex_names[v]);
      if (nv >= 0) r.push_back(nv);
    }
    return r;
  };
  for (int i = first_cycle - 1; i < last_cycle; ++i) out.cycles.push_back(remap(f.cycles[i]));
  for (auto& r : f.rails) out.rails.push_back(remap(r));
  out.ring.assign(out.s.n(), 0);
  for (int v = 0; v < f.s.n(); ++v) {
    int nv = out.s.index_of(f.s.vertex_names[v]);
    if (nv >= 0) out.ring[nv] = f.ring[v];
  }
  return out;
}

/// Leftmost range of `w` consecutive cycles whose influence avoids X.
inline std::optional<std::pair<int, int>> find_buffer(const Fixture& f, const std::set<int>& X,
                                                      int w) {
  if (w < 1 || w > f.p()) throw std::invalid_argument("find_buffer: bad width");
  for (int i = 1; i + w - 1 <= f.p(); ++i) {
    std::set<int> infl = influence(f, i, i + w - 1);
    bool clear = true;
    for (int v : X)
      if (infl.count(v)) { clear = false; break; }
    if (clear) return std::make_pair(i, i + w - 1);
  }
  return std::nullopt;
}

// ---------- linkages ----------

/// Pairwise vertex-disjoint paths of at least one edge each.
struct Linkage {
  std::vector<std::vector<int>> paths;

  std::set<std::pair<int, int>> pattern() const {
    std::set<std::pair<int, int>> out;
    for (auto& p : paths)
      out.insert({std::min(p.front(), p.back()), std::max(p.front(), p.back())});
    return out;
  }
};

inline std::optional<std::string> validate_linkage(const Graph& g, const Linkage& l) {
  if (!detail::pairwise_disjoint(l.paths)) return "paths not vertex-disjoint";
  for (auto& p : l.paths) {
    if (p.size() < 2) return "linkage path needs at least one edge";
    if (!detail::is_path_in(g, p)) return "list is not a path of the graph";
    std::set<int> uniq(p.begin(), p.end());
    if (uniq.size() != p.size()) return "path repeats a vertex";
  }
  return std::nullopt;
}

/// Realizes a pattern of terminal pairs by disjoint paths avoiding
/// `forbidden`.  Terminals must be pairwise distinct and outside the
/// forbidden set.
inline std::optional<Linkage> find_linkage(const Graph& g,
                                           const std::vector<std::pair<int, int>>& pattern,
                                           const std::set<int>& forbidden = {}) {
  std::set<int> seen;
  for (auto& [a, b] : pattern) {
    if (a == b) throw std::invalid_argument("find_linkage: degenerate terminal pair");
    if (!seen.insert(a).second || !seen.insert(b).second)
      throw std::invalid_argument("find_linkage: terminals must be pairwise distinct");
    if (forbidden.count(a) || forbidden.count(b))
      throw std::invalid_argument("find_linkage: terminal in forbidden set");
  }
  auto paths = find_disjoint_paths(g, pattern, forbidden);
  if (!paths) return std::nullopt;
  return Linkage{*paths};
}

inline bool linkage_equivalent(const Linkage& a, const Linkage& b) {
  return a.pattern() == b.pattern();
}

// ---------- fixture files ----------

inline json fixture_to_json(const Fixture& f) {
  json j = structure_to_json(f.s);
  auto names = [&](const std::vector<int>& vs) {
    std::vector<std::string> out;
    for (int v : vs) out.push_back(f.s.vertex_names[v]);
    return out;
  };
  j["cycles"] = json::array();
  for (auto& c : f.cycles) j["cycles"].push_back(names(c));
  j["rails"] = json::array();
  for (auto& r : f.rails) j["rails"].push_back(names(r));
  j["ring"] = json::object();
  for (int v = 0; v < f.s.n(); ++v) j["ring"][f.s.vertex_names[v]] = f.ring[v];
  return j;
}

inline Fixture fixture_from_json(const json& j) {
  Fixture f;
  f.s = structure_from_json(j);
  auto idx = [&](const json& names) {
    std::vector<int> out;
    for (auto& n : names) {
      int v = f.s.index_of(n.get<std::string>());
      if (v < 0) throw std::invalid_argument("fixture names unknown vertex: " + n.get<std::string>());
      out.push_back(v);
    }
    return out;
  };
  for (auto& c : j.at("cycles")) f.cycles.push_back(idx(c));
  for (auto& r : j.at("rails")) f.rails.push_back(idx(r));
  f.ring.assign(f.s.n(), 0);
  for (auto& [name, v] : j.at("ring").items()) {
    int u = f.s.index_of(name);
    if (u < 0) throw std::invalid_argument("ring entry for unknown vertex: " + name);
    f.ring[u] = v.get<int>();
  }
  return f;
}

inline Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return fixture_from_json(j);
}

inline void save_fixture(const Fixture& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << fixture_to_json(f).dump(2) << "\n";
}

}  // namespace cmsotw
