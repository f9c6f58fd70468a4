#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcurv/curvature.hpp"
#include "dcurv/distance.hpp"
#include "dcurv/graph.hpp"
#include "dcurv/graph_io.hpp"

namespace dcurv {

inline constexpr int kEnumerateCap = 7;

// Labeled enumeration of all connected graphs on exactly n vertices, in
// edge-mask order. 2^C(n,2) masks with a connectivity filter; duplicates
// across isomorphism classes are deliberate (see distance_fingerprint).
inline std::uint64_t enumerate_connected(int n, const std::function<void(const Graph&)>& fn) {
  if (n < 1 || n > kEnumerateCap)
    throw std::invalid_argument("enumerate_connected: n must be in 1.." + std::to_string(kEnumerateCap));
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const int m = static_cast<int>(pairs.size());

  std::uint64_t count = 0;
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n));
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
    std::fill(adj.begin(), adj.end(), 0u);
    for (int b = 0; b < m; ++b) {
      if (mask >> b & 1) {
        adj[static_cast<std::size_t>(pairs[static_cast<std::size_t>(b)].first)] |=
            1u << pairs[static_cast<std::size_t>(b)].second;
        adj[static_cast<std::size_t>(pairs[static_cast<std::size_t>(b)].second)] |=
            1u << pairs[static_cast<std::size_t>(b)].first;
      }
    }
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint32_t next = 0;
      while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        next |= adj[static_cast<std::size_t>(v)];
      }
      frontier = next & ~seen;
      seen |= next;
    }
    if (seen != (n >= 32 ? ~0u : (1u << n) - 1)) continue;

    std::vector<Edge> edges;
    for (int b = 0; b < m; ++b)
      if (mask >> b & 1) edges.push_back(pairs[static_cast<std::size_t>(b)]);
    fn(Graph::from_edge_list(n, edges));
    ++count;
  }
  return count;
}

// Isomorphism-invariant collapse key: the multiset of sorted distance rows.
inline std::string distance_fingerprint(const IntMatrix& d) {
  std::vector<std::vector<std::int64_t>> rows;
  rows.reserve(static_cast<std::size_t>(d.size()));
  for (int i = 0; i < d.size(); ++i) {
    std::vector<std::int64_t> r(static_cast<std::size_t>(d.size()));
    for (int j = 0; j < d.size(); ++j) r[static_cast<std::size_t>(j)] = d(i, j);
    std::sort(r.begin(), r.end());
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end());
  std::ostringstream os;
  os << d.size() << ':';
  for (const auto& r : rows) {
    for (auto x : r) os << x << ',';
    os << ';';
  }
  return os.str();
}

struct SearchRecord {
  std::uint64_t index = 0;
  std::string graph6;
  int n = 0;
  bool solvable = false;
  int nullity = 0;
  std::optional<RatVector> certificate;  // present iff not solvable, re-verified
};

namespace search_detail {

// Bareiss fraction-free determinant; valid up to ~8x8 hop-count matrices
// without overflow. Nonzero means the curvature system is uniquely solvable,
// which skips the big-rational elimination for the overwhelming majority of
// enumerated graphs.
inline std::int64_t det64_bareiss(const IntMatrix& d) {
  const int n = d.size();
  std::vector<std::int64_t> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = d(i, j);
  std::int64_t prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[static_cast<std::size_t>(k * n + k)] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[static_cast<std::size_t>(i * n + k)] != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<std::size_t>(k * n + j)], a[static_cast<std::size_t>(p * n + j)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[static_cast<std::size_t>(i * n + j)] =
            (a[static_cast<std::size_t>(i * n + j)] * a[static_cast<std::size_t>(k * n + k)] -
             a[static_cast<std::size_t>(i * n + k)] * a[static_cast<std::size_t>(k * n + j)]) /
            prev;
    prev = a[static_cast<std::size_t>(k * n + k)];
  }
  return sign * a[static_cast<std::size_t>((n - 1) * n + (n - 1))];
}

}  // namespace search_detail

inline SearchRecord classify_graph(const Graph& g, std::uint64_t index) {
  SearchRecord rec;
  rec.index = index;
  rec.graph6 = serialize_graph6(g);
  rec.n = g.vertex_count();

  IntMatrix d = distance_matrix(g);
  if (rec.n >= 2 && rec.n <= 8 && search_detail::det64_bareiss(d) != 0) {
    rec.solvable = true;
    rec.nullity = 0;
    return rec;
  }

  CurvatureReport rep = curvature_from_matrix(d);
  rec.solvable = rep.solvable();
  rec.nullity = rep.nullity();
  if (!rep.solvable()) {
    // re-verify the certificate before it is emitted anywhere
    Rational mass = 0;
    for (int i = 0; i < rec.n; ++i) {
      Rational s = 0;
      for (int j = 0; j < rec.n; ++j) s += Rational(d(i, j)) * rep.certificate[static_cast<std::size_t>(j)];
      if (s != 0) throw std::logic_error("classify_graph: certificate not in kernel");
      mass += rep.certificate[static_cast<std::size_t>(i)];
    }
    if (mass == 0) throw std::logic_error("classify_graph: certificate orthogonal to 1");
    rec.certificate = rep.certificate;
  }
  return rec;
}

}  // namespace dcurv
