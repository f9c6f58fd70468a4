#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "dcurv/graph.hpp"
#include "dcurv/linalg.hpp"

namespace dcurv {

struct disconnected_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Symmetric nonnegative integer matrix of shortest-path hop counts.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

  int size() const { return n_; }

  std::int64_t& operator()(int i, int j) { return d_[idx(i, j)]; }
  std::int64_t operator()(int i, int j) const { return d_[idx(i, j)]; }

  std::int64_t row_sum(int i) const {
    std::int64_t s = 0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j);
    return s;
  }

  std::int64_t max_entry() const {
    std::int64_t m = 0;
    for (auto x : d_) m = std::max(m, x);
    return m;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) { return a.n_ == b.n_ && a.d_ == b.d_; }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<std::int64_t> d_;
};

// Exact BFS distances from every source. No infinity sentinel: disconnected
// input is a typed error.
inline IntMatrix distance_matrix(const Graph& g) {
  if (!g.is_connected()) throw disconnected_error("distance_matrix: graph is disconnected");
  const int n = g.vertex_count();
  IntMatrix d(n);
  std::vector<std::int64_t> dist(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.neighbors(u)) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          q.push(v);
        }
      }
    }
    for (int j = 0; j < n; ++j) d(s, j) = dist[static_cast<std::size_t>(j)];
  }
  return d;
}

inline int diameter(const Graph& g) {
  return static_cast<int>(distance_matrix(g).max_entry());
}

inline RatMatrix to_rational(const IntMatrix& d) {
  RatMatrix m(d.size(), d.size());
  for (int i = 0; i < d.size(); ++i)
    for (int j = 0; j < d.size(); ++j) m(i, j) = Rational(d(i, j));
  return m;
}

}  // namespace dcurv
