#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcurv {

using Edge = std::pair<int, int>;

struct graph_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Immutable undirected graph, 0-based vertex ids, sorted adjacency lists,
// no loops or multi-edges. Disconnected graphs are representable; operations
// that need shortest-path distances reject them.
class Graph {
 public:
  static Graph from_edge_list(int n, const std::vector<Edge>& edges) {
    if (n < 1) throw graph_error("graph needs at least one vertex");
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw graph_error("edge endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
      if (u == v) throw graph_error("loop edge at vertex " + std::to_string(u));
      adj[static_cast<std::size_t>(u)].insert(v);
      adj[static_cast<std::size_t>(v)].insert(u);
    }
    Graph g;
    g.n_ = n;
    g.adj_.reserve(adj.size());
    for (auto& s : adj) g.adj_.emplace_back(s.begin(), s.end());
    g.connected_ = g.compute_connected();
    return g;
  }

  int vertex_count() const { return n_; }

  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

  bool has_edge(int u, int v) const {
    const auto& a = neighbors(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> es;
    for (int u = 0; u < n_; ++u)
      for (int v : neighbors(u))
        if (u < v) es.emplace_back(u, v);
    return es;
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& a : adj_) m += a.size();
    return m / 2;
  }

  bool is_connected() const { return connected_; }

  std::vector<int> degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) d[static_cast<std::size_t>(v)] = static_cast<int>(neighbors(v).size());
    return d;
  }

  std::vector<int> leaves() const {
    std::vector<int> ls;
    for (int v = 0; v < n_; ++v)
      if (neighbors(v).size() == 1) ls.push_back(v);
    return ls;
  }

  bool is_tree() const { return connected_ && edge_count() == static_cast<std::size_t>(n_) - 1; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  bool compute_connected() const {
    if (n_ == 0) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int count = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : neighbors(u)) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          ++count;
          q.push(v);
        }
      }
    }
    return count == n_;
  }

  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  bool connected_ = false;
};

// Bridges in deterministic order (each pair u < v, list sorted), found with
// the iterative lowpoint algorithm.
inline std::vector<Edge> find_bridges(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<Edge> bridges;
  int timer = 0;

  struct Frame {
    int v;
    int parent;
    std::size_t next;
  };
  std::vector<Frame> stack;

  for (int start = 0; start < n; ++start) {
    if (disc[static_cast<std::size_t>(start)] != -1) continue;
    stack.push_back({start, -1, 0});
    disc[static_cast<std::size_t>(start)] = low[static_cast<std::size_t>(start)] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& adj = g.neighbors(f.v);
      if (f.next < adj.size()) {
        int to = adj[f.next++];
        if (to == f.parent) {
          // skip one edge back to the parent; parallel edges cannot occur
          f.parent = -2;
          continue;
        }
        if (disc[static_cast<std::size_t>(to)] != -1) {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(to)]);
        } else {
          disc[static_cast<std::size_t>(to)] = low[static_cast<std::size_t>(to)] = timer++;
          stack.push_back({to, f.v, 0});
        }
      } else {
        int v = f.v;
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().v;
          low[static_cast<std::size_t>(p)] =
              std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
          if (low[static_cast<std::size_t>(v)] > disc[static_cast<std::size_t>(p)])
            bridges.emplace_back(std::min(p, v), std::max(p, v));
        }
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

inline bool is_bridge(const Graph& g, Edge e) {
  if (e.first > e.second) std::swap(e.first, e.second);
  auto bs = find_bridges(g);
  return std::binary_search(bs.begin(), bs.end(), e);
}

// Vertex (a, b) of g1 x g2 is flattened to a * n2 + b.
inline Graph cartesian_product(const Graph& g1, const Graph& g2) {
  const int n1 = g1.vertex_count(), n2 = g2.vertex_count();
  std::vector<Edge> edges;
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) {
      for (int a2 : g1.neighbors(a))
        if (a2 > a) edges.emplace_back(a * n2 + b, a2 * n2 + b);
      for (int b2 : g2.neighbors(b))
        if (b2 > b) edges.emplace_back(a * n2 + b, a * n2 + b2);
    }
  return Graph::from_edge_list(n1 * n2, edges);
}

struct CutResult {
  Graph part1;  // component containing the bridge edge's first endpoint
  Graph part2;
  std::vector<int> orig1;  // orig1[i] = original id of part1 vertex i (ascending)
  std::vector<int> orig2;
};

// Split g at a bridge. Errors if e is not a bridge.
inline CutResult cut(const Graph& g, Edge e) {
  if (!g.has_edge(e.first, e.second)) throw graph_error("cut: edge not in graph");
  if (!is_bridge(g, e)) throw graph_error("cut: edge is not a bridge");
  const int n = g.vertex_count();
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  std::queue<int> q;
  q.push(e.first);
  side[static_cast<std::size_t>(e.first)] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.neighbors(u)) {
      if ((u == e.first && v == e.second) || (u == e.second && v == e.first)) continue;
      if (side[static_cast<std::size_t>(v)] == -1) {
        side[static_cast<std::size_t>(v)] = 0;
        q.push(v);
      }
    }
  }

  CutResult res;
  std::vector<int> local(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (side[static_cast<std::size_t>(v)] == 0) {
      local[static_cast<std::size_t>(v)] = static_cast<int>(res.orig1.size());
      res.orig1.push_back(v);
    } else {
      local[static_cast<std::size_t>(v)] = static_cast<int>(res.orig2.size());
      res.orig2.push_back(v);
    }
  }
  std::vector<Edge> e1, e2;
  for (const auto& [u, v] : g.edges()) {
    if (u == e.first && v == e.second) continue;
    if (u == e.second && v == e.first) continue;
    int lu = local[static_cast<std::size_t>(u)], lv = local[static_cast<std::size_t>(v)];
    if (side[static_cast<std::size_t>(u)] == 0)
      e1.emplace_back(lu, lv);
    else
      e2.emplace_back(lu, lv);
  }
  res.part1 = Graph::from_edge_list(static_cast<int>(res.orig1.size()), e1);
  res.part2 = Graph::from_edge_list(static_cast<int>(res.orig2.size()), e2);
  return res;
}

}  // namespace dcurv
