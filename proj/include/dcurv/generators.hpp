#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcurv/graph.hpp"

namespace dcurv {

// Bounded draw built on the standardized mt19937_64 stream so that seeded
// output is identical across platforms (std::uniform_int_distribution is not).
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("bounded_draw: empty range");
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline Graph path_graph(int n) {
  if (n < 1) throw graph_error("path needs n >= 1");
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph::from_edge_list(n, es);
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw graph_error("cycle needs n >= 3");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph::from_edge_list(n, es);
}

inline Graph complete_graph(int n) {
  if (n < 1) throw graph_error("complete graph needs n >= 1");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph::from_edge_list(n, es);
}

// Center is vertex 0, leaves 1..n-1.
inline Graph star_graph(int n) {
  if (n < 2) throw graph_error("star needs n >= 2");
  std::vector<Edge> es;
  for (int i = 1; i < n; ++i) es.emplace_back(0, i);
  return Graph::from_edge_list(n, es);
}

inline Graph complete_bipartite_graph(int a, int b) {
  if (a < 1 || b < 1) throw graph_error("complete bipartite needs both parts nonempty");
  std::vector<Edge> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) es.emplace_back(i, a + j);
  return Graph::from_edge_list(a + b, es);
}

inline Graph hypercube_graph(int dim) {
  if (dim < 0 || dim > 20) throw graph_error("hypercube dimension out of range [0, 20]");
  int n = 1 << dim;
  std::vector<Edge> es;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < dim; ++b) {
      int w = v ^ (1 << b);
      if (v < w) es.emplace_back(v, w);
    }
  return Graph::from_edge_list(n, es);
}

// Uniform random labeled tree via Prufer decoding; deterministic given seed.
inline Graph random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw graph_error("random tree needs n >= 1");
  if (n == 1) return Graph::from_edge_list(1, {});
  if (n == 2) return Graph::from_edge_list(2, {{0, 1}});
  std::mt19937_64 rng(seed);
  std::vector<int> seq(static_cast<std::size_t>(n - 2));
  for (auto& x : seq) x = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n)));

  std::vector<int> deg(static_cast<std::size_t>(n), 1);
  for (int x : seq) ++deg[static_cast<std::size_t>(x)];
  std::vector<Edge> es;
  int ptr = 0;
  while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
  int leaf = ptr;
  for (int x : seq) {
    es.emplace_back(leaf, x);
    if (--deg[static_cast<std::size_t>(x)] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
      leaf = ptr;
    }
  }
  es.emplace_back(leaf, n - 1);
  return Graph::from_edge_list(n, es);
}

// Erdos-Renyi draw resampled until connected; deterministic given the rng state.
inline Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
  if (n < 1) throw graph_error("random graph needs n >= 1");
  for (;;) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < p) es.emplace_back(i, j);
      }
    Graph g = Graph::from_edge_list(n, es);
    if (g.is_connected()) return g;
  }
}

struct GraphFamily {
  enum class Kind { Path, Cycle, Complete, Star, CompleteBipartite, Hypercube, RandomTree };
  Kind kind;
  std::vector<std::int64_t> params;
};

inline Graph generate(const GraphFamily& f) {
  using Kind = GraphFamily::Kind;
  auto arity = [&](std::size_t want, const char* usage) {
    if (f.params.size() != want) throw graph_error(std::string("family parameters: expected ") + usage);
  };
  switch (f.kind) {
    case Kind::Path:
      arity(1, "path <n>");
      return path_graph(static_cast<int>(f.params[0]));
    case Kind::Cycle:
      arity(1, "cycle <n>");
      return cycle_graph(static_cast<int>(f.params[0]));
    case Kind::Complete:
      arity(1, "complete <n>");
      return complete_graph(static_cast<int>(f.params[0]));
    case Kind::Star:
      arity(1, "star <n>");
      return star_graph(static_cast<int>(f.params[0]));
    case Kind::CompleteBipartite:
      arity(2, "complete_bipartite <a> <b>");
      return complete_bipartite_graph(static_cast<int>(f.params[0]), static_cast<int>(f.params[1]));
    case Kind::Hypercube:
      arity(1, "hypercube <dim>");
      return hypercube_graph(static_cast<int>(f.params[0]));
    case Kind::RandomTree:
      arity(2, "random_tree <n> <seed>");
      return random_tree(static_cast<int>(f.params[0]), static_cast<std::uint64_t>(f.params[1]));
  }
  throw graph_error("unknown graph family");
}

inline GraphFamily::Kind parse_family_kind(const std::string& name) {
  using Kind = GraphFamily::Kind;
  if (name == "path") return Kind::Path;
  if (name == "cycle") return Kind::Cycle;
  if (name == "complete") return Kind::Complete;
  if (name == "star") return Kind::Star;
  if (name == "complete_bipartite") return Kind::CompleteBipartite;
  if (name == "hypercube") return Kind::Hypercube;
  if (name == "random_tree") return Kind::RandomTree;
  throw graph_error("unknown graph family: " + name);
}

}  // namespace dcurv
