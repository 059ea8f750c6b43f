#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmsotw {

/// Error raised when an input exceeds a configured size cap.  Callers are
/// expected to either raise the cap explicitly or treat the input as out of
/// range; nothing in the library silently truncates.
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph on vertices 0..n-1.  Loops are representable
/// (validate() reports them) but every algorithm assumes a loop-free graph.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}

  int n() const { return static_cast<int>(adj_.size()); }

  void add_vertex() { adj_.emplace_back(); }

  void add_edge(int a, int b) {
    if (a < 0 || b < 0 || a >= n() || b >= n())
      throw std::out_of_range("edge endpoint out of range");
    auto e = norm(a, b);
    if (std::find(edges_.begin(), edges_.end(), e) != edges_.end()) return;
    edges_.push_back(e);
    adj_[a].push_back(b);
    if (a != b) adj_[b].push_back(a);
    std::sort(adj_[a].begin(), adj_[a].end());
    std::sort(adj_[b].begin(), adj_[b].end());
  }

  bool has_edge(int a, int b) const {
    if (a < 0 || b < 0 || a >= n() || b >= n()) return false;
    const auto& nb = adj_[a];
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  const std::vector<int>& neighbors(int v) const { return adj_[v]; }

  /// Edges normalized (a <= b), in insertion order.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// Index of edge {a,b} in edges(), or -1.
  int edge_index(int a, int b) const {
    auto e = norm(a, b);
    auto it = std::find(edges_.begin(), edges_.end(), e);
    return it == edges_.end() ? -1 : static_cast<int>(it - edges_.begin());
  }

  bool has_loop() const {
    for (auto& [a, b] : edges_)
      if (a == b) return true;
    return false;
  }

  /// Induced subgraph on `keep` (ascending); old index -> new index map
  /// returned through `old_to_new` (-1 for dropped vertices).
  Graph induced(const std::vector<int>& keep, std::vector<int>* old_to_new = nullptr) const {
    std::vector<int> map(n(), -1);
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) map[keep[i]] = i;
    Graph g(static_cast<int>(keep.size()));
    for (auto& [a, b] : edges_)
      if (map[a] >= 0 && map[b] >= 0) g.add_edge(map[a], map[b]);
    if (old_to_new) *old_to_new = std::move(map);
    return g;
  }

  /// Component id per vertex.
  std::vector<int> components() const {
    std::vector<int> comp(n(), -1);
    int c = 0;
    for (int s = 0; s < n(); ++s) {
      if (comp[s] != -1) continue;
      std::queue<int> q;
      q.push(s);
      comp[s] = c;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj_[v])
          if (comp[w] == -1) {
            comp[w] = c;
            q.push(w);
          }
      }
      ++c;
    }
    return comp;
  }

  int component_count() const {
    auto c = components();
    return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
  }

  /// BFS distance from a to b, -1 if disconnected.
  int distance(int a, int b) const {
    if (a == b) return 0;
    std::vector<int> d(n(), -1);
    std::queue<int> q;
    d[a] = 0;
    q.push(a);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj_[v])
        if (d[w] == -1) {
          d[w] = d[v] + 1;
          if (w == b) return d[w];
          q.push(w);
        }
    }
    return -1;
  }

  bool is_connected_subset(const std::set<int>& s) const {
    if (s.empty()) return true;
    std::set<int> seen;
    std::queue<int> q;
    q.push(*s.begin());
    seen.insert(*s.begin());
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj_[v])
        if (s.count(w) && !seen.count(w)) {
          seen.insert(w);
          q.push(w);
        }
    }
    return seen.size() == s.size();
  }

  bool operator==(const Graph& o) const {
    if (n() != o.n()) return false;
    auto a = edges_, b = o.edges_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

 private:
  static std::pair<int, int> norm(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
};

}  // namespace cmsotw
