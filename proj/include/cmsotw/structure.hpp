#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmsotw/graph.hpp"

namespace cmsotw {

/// Names of the unary colors and the constants of a colored-graph
/// vocabulary.  The binary edge relation is implicit.  Order is fixed and
/// drives every downstream enumeration.
struct Vocabulary {
  std::vector<std::string> colors;
  std::vector<std::string> constants;

  bool operator==(const Vocabulary&) const = default;
};

/// A finite colored graph with constants.  The universe is an ordered vertex
/// list; vertex identity is the string id, all internal computation uses the
/// index in that list.  Immutable by convention once built.
struct Structure {
  std::vector<std::string> vertex_names;
  Graph g;
  Vocabulary voc;
  std::map<std::string, std::set<int>> colors;  // name -> vertex indices
  std::map<std::string, int> constants;         // name -> vertex index

  int n() const { return g.n(); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(vertex_names.size()); ++i)
      if (vertex_names[i] == name) return i;
    return -1;
  }

  const std::set<int>* color(const std::string& name) const {
    auto it = colors.find(name);
    return it == colors.end() ? nullptr : &it->second;
  }
};

/// First violated well-formedness invariant, or nullopt.
inline std::optional<std::string> validate(const Structure& s) {
  {
    std::set<std::string> seen;
    for (auto& v : s.vertex_names)
      if (!seen.insert(v).second) return "duplicate vertex id: " + v;
  }
  if (static_cast<int>(s.vertex_names.size()) != s.g.n())
    return "vertex name list does not match graph size";
  for (auto& [a, b] : s.g.edges())
    if (a == b) return "anti-reflexive: loop at " + s.vertex_names[a];
  for (auto& [name, vs] : s.colors) {
    for (int v : vs)
      if (v < 0 || v >= s.n()) return "color " + name + " contains vertex outside universe";
  }
  for (auto& [name, v] : s.constants) {
    if (v < 0 || v >= s.n()) return "constant " + name + " mapped outside universe";
  }
  for (auto& c : s.voc.colors)
    if (!s.colors.count(c)) return "vocabulary color " + c + " has no interpretation";
  for (auto& c : s.voc.constants)
    if (!s.constants.count(c)) return "vocabulary constant " + c + " has no interpretation";
  return std::nullopt;
}

/// Gaifman graph.  For colored-graph vocabularies this is just (V, E):
/// colors are unary and add no edges.
inline Graph gaifman(const Structure& s) { return s.g; }

/// Incidence graph I(G) = (V ∪ E, {{v,e} | v ∈ e}).  The first |V(G)|
/// vertices are the vertex side, the rest the edge side in edge order.
struct IncidenceGraph {
  Graph g;
  int vertex_side;  // indices [0, vertex_side) are original vertices
};

inline IncidenceGraph incidence_graph(const Graph& g) {
  IncidenceGraph r;
  r.vertex_side = g.n();
  r.g = Graph(g.n() + g.edge_count());
  for (int i = 0; i < g.edge_count(); ++i) {
    auto [a, b] = g.edges()[i];
    r.g.add_edge(a, g.n() + i);
    r.g.add_edge(b, g.n() + i);
  }
  return r;
}

/// Apex transform: keep edges with both ends inside the apex tuple or both
/// outside, root constant c_i at the i-th apex, and color its outside
/// neighborhood C_i.
inline Structure apex_transform(const Structure& s, const std::vector<std::string>& apexes) {
  std::vector<int> av;
  std::set<int> aset;
  for (auto& name : apexes) {
    int v = s.index_of(name);
    if (v < 0) throw std::invalid_argument("apex outside universe: " + name);
    if (!aset.insert(v).second) throw std::invalid_argument("duplicate apex: " + name);
    av.push_back(v);
  }
  Structure r;
  r.vertex_names = s.vertex_names;
  r.g = Graph(s.n());
  for (auto& [a, b] : s.g.edges()) {
    bool ain = aset.count(a), bin = aset.count(b);
    if (ain == bin) r.g.add_edge(a, b);
  }
  for (int i = 0; i < static_cast<int>(av.size()); ++i) {
    std::string ci = "c" + std::to_string(i + 1);
    std::string Ci = "C" + std::to_string(i + 1);
    r.voc.constants.push_back(ci);
    r.voc.colors.push_back(Ci);
    r.constants[ci] = av[i];
    std::set<int> nb;
    for (int w : s.g.neighbors(av[i]))
      if (!aset.count(w)) nb.insert(w);
    r.colors[Ci] = nb;
  }
  return r;
}

namespace detail {
inline Structure plain(int n) {
  Structure s;
  s.g = Graph(n);
  for (int i = 0; i < n; ++i) s.vertex_names.push_back(std::to_string(i));
  return s;
}
}  // namespace detail

inline Structure generate_path(int n) {
  if (n < 1) throw std::invalid_argument("path needs >= 1 vertex");
  Structure s = detail::plain(n);
  for (int i = 0; i + 1 < n; ++i) s.g.add_edge(i, i + 1);
  return s;
}

inline Structure generate_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs >= 3 vertices");
  Structure s = detail::plain(n);
  for (int i = 0; i < n; ++i) s.g.add_edge(i, (i + 1) % n);
  return s;
}

inline Structure generate_clique(int n) {
  if (n < 1) throw std::invalid_argument("clique needs >= 1 vertex");
  Structure s = detail::plain(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.g.add_edge(i, j);
  return s;
}

/// n x n grid, row-major ids, with a "perimeter" color.
inline Structure generate_grid(int n) {
  if (n < 1) throw std::invalid_argument("grid needs n >= 1");
  Structure s = detail::plain(n * n);
  auto id = [n](int r, int c) { return r * n + c; };
  std::set<int> perim;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (c + 1 < n) s.g.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < n) s.g.add_edge(id(r, c), id(r + 1, c));
      if (r == 0 || c == 0 || r == n - 1 || c == n - 1) perim.insert(id(r, c));
    }
  s.voc.colors.push_back("perimeter");
  s.colors["perimeter"] = perim;
  return s;
}

/// p concentric cycles of q vertices crossed by q radial rails.  Vertex at
/// (ring i, spoke j) has index i*q + j and id "<i>_<j>"; cycle i and rail j
/// meet in exactly the one vertex (i, j).
inline Structure generate_annulus_grid(int p, int q) {
  if (p < 3 || q < 3) throw std::invalid_argument("annulus grid needs p,q >= 3");
  Structure s;
  s.g = Graph(p * q);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) s.vertex_names.push_back(std::to_string(i) + "_" + std::to_string(j));
  auto id = [q](int i, int j) { return i * q + j; };
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      s.g.add_edge(id(i, j), id(i, (j + 1) % q));
      if (i + 1 < p) s.g.add_edge(id(i, j), id(i + 1, j));
    }
  return s;
}

/// Fixture generator front door used by the CLI.
inline Structure generate(const std::string& family, const std::vector<int>& params) {
  auto need = [&](size_t k) {
    if (params.size() != k) throw std::invalid_argument("wrong parameter count for " + family);
  };
  if (family == "path") { need(1); return generate_path(params[0]); }
  if (family == "cycle") { need(1); return generate_cycle(params[0]); }
  if (family == "clique") { need(1); return generate_clique(params[0]); }
  if (family == "grid") { need(1); return generate_grid(params[0]); }
  if (family == "annulus-grid") { need(2); return generate_annulus_grid(params[0], params[1]); }
  throw std::invalid_argument("unknown family: " + family);
}

/// Restriction of a structure to the vertices NOT in `remove`.  Vertex ids
/// are preserved; indices are renumbered in universe order.
inline Structure remove_vertices(const Structure& s, const std::set<int>& remove) {
  std::vector<int> keep;
  for (int v = 0; v < s.n(); ++v)
    if (!remove.count(v)) keep.push_back(v);
  std::vector<int> old_to_new;
  Structure r;
  r.g = s.g.induced(keep, &old_to_new);
  for (int v : keep) r.vertex_names.push_back(s.vertex_names[v]);
  r.voc = s.voc;
  for (auto& [name, vs] : s.colors) {
    std::set<int> t;
    for (int v : vs)
      if (old_to_new[v] >= 0) t.insert(old_to_new[v]);
    r.colors[name] = t;
  }
  for (auto& [name, v] : s.constants) {
    if (old_to_new[v] < 0)
      throw std::invalid_argument("cannot remove constant vertex " + name);
    r.constants[name] = old_to_new[v];
  }
  return r;
}

}  // namespace cmsotw
