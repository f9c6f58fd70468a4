#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dcurv/curvature.hpp"
#include "dcurv/distance.hpp"
#include "dcurv/graph.hpp"
#include "dcurv/linalg.hpp"

namespace dcurv {

enum class BlockLayout { Bridged, Merged };

// Joint layout after bridging or merging: the G1 attachment vertex sits at
// block index n1-1 and the G2 attachment vertex right after it (bridged) or
// identified with it (merged). y is the attachment column of D1; z is the
// attachment column of D2 (full for bridged, without its leading 0 for merged).
struct BlockDecomposition {
  int n1 = 0;
  int n2 = 0;
  IntMatrix d1;  // G1 distances, attachment last
  IntMatrix d2;  // G2 distances, attachment first
  std::vector<std::int64_t> y;
  std::vector<std::int64_t> z;
  BlockLayout layout = BlockLayout::Bridged;

  int combined_size() const { return layout == BlockLayout::Bridged ? n1 + n2 : n1 + n2 - 1; }
};

struct OpResult {
  Graph combined;
  BlockDecomposition blocks;
  std::vector<int> perm1;  // original G1 vertex id -> combined index
  std::vector<int> perm2;  // original G2 vertex id -> combined index
};

namespace ops_detail {

inline int swapped(int x, int a, int b) { return x == a ? b : (x == b ? a : x); }

inline IntMatrix permuted_distance_matrix(const Graph& g, int attach, bool attach_last) {
  IntMatrix d = distance_matrix(g);
  const int n = g.vertex_count();
  int other = attach_last ? n - 1 : 0;
  if (attach == other) return d;
  IntMatrix p(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = d(swapped(i, attach, other), swapped(j, attach, other));
  return p;
}

inline void check_vertex(const Graph& g, int v, const char* which) {
  if (v < 0 || v >= g.vertex_count())
    throw graph_error(std::string(which) + " attachment vertex out of range");
}

}  // namespace ops_detail

// Join two connected graphs with a new edge. The user's attachment vertices
// are permuted to the canonical block positions; the permutations are returned.
inline OpResult bridge(const Graph& g1, int u, const Graph& g2, int v) {
  if (!g1.is_connected() || !g2.is_connected()) throw graph_error("bridge: inputs must be connected");
  ops_detail::check_vertex(g1, u, "G1");
  ops_detail::check_vertex(g2, v, "G2");
  const int n1 = g1.vertex_count(), n2 = g2.vertex_count();

  OpResult res;
  res.perm1.resize(static_cast<std::size_t>(n1));
  res.perm2.resize(static_cast<std::size_t>(n2));
  for (int i = 0; i < n1; ++i) res.perm1[static_cast<std::size_t>(i)] = ops_detail::swapped(i, u, n1 - 1);
  for (int j = 0; j < n2; ++j) res.perm2[static_cast<std::size_t>(j)] = n1 + ops_detail::swapped(j, v, 0);

  std::vector<Edge> edges;
  for (const auto& [a, b] : g1.edges())
    edges.emplace_back(res.perm1[static_cast<std::size_t>(a)], res.perm1[static_cast<std::size_t>(b)]);
  for (const auto& [a, b] : g2.edges())
    edges.emplace_back(res.perm2[static_cast<std::size_t>(a)], res.perm2[static_cast<std::size_t>(b)]);
  edges.emplace_back(n1 - 1, n1);
  res.combined = Graph::from_edge_list(n1 + n2, edges);

  res.blocks.n1 = n1;
  res.blocks.n2 = n2;
  res.blocks.layout = BlockLayout::Bridged;
  res.blocks.d1 = ops_detail::permuted_distance_matrix(g1, u, /*attach_last=*/true);
  res.blocks.d2 = ops_detail::permuted_distance_matrix(g2, v, /*attach_last=*/false);
  res.blocks.y.resize(static_cast<std::size_t>(n1));
  for (int i = 0; i < n1; ++i) res.blocks.y[static_cast<std::size_t>(i)] = res.blocks.d1(i, n1 - 1);
  res.blocks.z.resize(static_cast<std::size_t>(n2));
  for (int j = 0; j < n2; ++j) res.blocks.z[static_cast<std::size_t>(j)] = res.blocks.d2(0, j);
  return res;
}

// Bridge and contract the new edge: attachment vertices become one vertex at
// block index n1-1.
inline OpResult merge(const Graph& g1, int u, const Graph& g2, int v) {
  if (!g1.is_connected() || !g2.is_connected()) throw graph_error("merge: inputs must be connected");
  ops_detail::check_vertex(g1, u, "G1");
  ops_detail::check_vertex(g2, v, "G2");
  const int n1 = g1.vertex_count(), n2 = g2.vertex_count();

  OpResult res;
  res.perm1.resize(static_cast<std::size_t>(n1));
  res.perm2.resize(static_cast<std::size_t>(n2));
  for (int i = 0; i < n1; ++i) res.perm1[static_cast<std::size_t>(i)] = ops_detail::swapped(i, u, n1 - 1);
  for (int j = 0; j < n2; ++j) {
    int w = ops_detail::swapped(j, v, 0);
    res.perm2[static_cast<std::size_t>(j)] = w == 0 ? n1 - 1 : n1 - 1 + w;
  }

  std::vector<Edge> edges;
  for (const auto& [a, b] : g1.edges())
    edges.emplace_back(res.perm1[static_cast<std::size_t>(a)], res.perm1[static_cast<std::size_t>(b)]);
  for (const auto& [a, b] : g2.edges())
    edges.emplace_back(res.perm2[static_cast<std::size_t>(a)], res.perm2[static_cast<std::size_t>(b)]);
  res.combined = Graph::from_edge_list(n1 + n2 - 1, edges);

  res.blocks.n1 = n1;
  res.blocks.n2 = n2;
  res.blocks.layout = BlockLayout::Merged;
  res.blocks.d1 = ops_detail::permuted_distance_matrix(g1, u, /*attach_last=*/true);
  res.blocks.d2 = ops_detail::permuted_distance_matrix(g2, v, /*attach_last=*/false);
  res.blocks.y.resize(static_cast<std::size_t>(n1));
  for (int i = 0; i < n1; ++i) res.blocks.y[static_cast<std::size_t>(i)] = res.blocks.d1(i, n1 - 1);
  res.blocks.z.resize(static_cast<std::size_t>(n2 - 1));
  for (int j = 1; j < n2; ++j) res.blocks.z[static_cast<std::size_t>(j - 1)] = res.blocks.d2(0, j);
  return res;
}

// Distance matrix of the combined graph straight from the block identities:
//   bridged:  d(u_i, v_j) = y_i + 1 + z_j
//   merged:   d(u_i, v_j) = y_i + z_{j-1}
inline IntMatrix assemble_distance_matrix(const BlockDecomposition& b) {
  const int n = b.combined_size();
  IntMatrix d(n);
  if (b.layout == BlockLayout::Bridged) {
    for (int i = 0; i < b.n1; ++i)
      for (int j = 0; j < b.n1; ++j) d(i, j) = b.d1(i, j);
    for (int i = 0; i < b.n2; ++i)
      for (int j = 0; j < b.n2; ++j) d(b.n1 + i, b.n1 + j) = b.d2(i, j);
    for (int i = 0; i < b.n1; ++i)
      for (int j = 0; j < b.n2; ++j) {
        std::int64_t v = b.y[static_cast<std::size_t>(i)] + 1 + b.z[static_cast<std::size_t>(j)];
        d(i, b.n1 + j) = v;
        d(b.n1 + j, i) = v;
      }
  } else {
    for (int i = 0; i < b.n1; ++i)
      for (int j = 0; j < b.n1; ++j) d(i, j) = b.d1(i, j);
    for (int i = 1; i < b.n2; ++i)
      for (int j = 1; j < b.n2; ++j) d(b.n1 - 1 + i, b.n1 - 1 + j) = b.d2(i, j);
    for (int i = 0; i < b.n1; ++i)
      for (int j = 1; j < b.n2; ++j) {
        std::int64_t v = b.y[static_cast<std::size_t>(i)] + b.z[static_cast<std::size_t>(j - 1)];
        d(i, b.n1 - 1 + j) = v;
        d(b.n1 - 1 + j, i) = v;
      }
  }
  return d;
}

// Reindex a vector given in a factor's original labeling into its block slots.
inline RatVector permute_to_block(const std::vector<int>& perm, const RatVector& orig, int base, int size) {
  if (orig.size() != perm.size()) throw std::invalid_argument("permute_to_block: dimension mismatch");
  RatVector out(static_cast<std::size_t>(size));
  for (std::size_t i = 0; i < perm.size(); ++i)
    out[static_cast<std::size_t>(perm[i] - base)] = orig[i];
  return out;
}

struct TransportCoefficients {
  Rational alpha;
  Rational s;
  Rational scale;
};

struct PredictedCurvature {
  RatVector w;
  TransportCoefficients coeffs;
};

namespace ops_detail {

inline void require_nonneg_curvature(const IntMatrix& d, const RatVector& w, const char* which) {
  try {
    verify_curvature(d, w, /*require_nonneg=*/true);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(which) + ": " + e.what());
  }
}

inline Rational sum(const RatVector& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

}  // namespace ops_detail

// Transport of nonnegative curvatures across a new bridge. w1, w2 are given
// in block layout (attachment of G1 last, of G2 first). The result solves
// D_G w = (n1+n2) 1 exactly and is verified before being returned.
inline PredictedCurvature predicted_bridge_curvature(const RatVector& w1, const RatVector& w2,
                                                     const BlockDecomposition& b) {
  if (b.layout != BlockLayout::Bridged)
    throw std::invalid_argument("predicted_bridge_curvature: expected a bridged decomposition");
  ops_detail::require_nonneg_curvature(b.d1, w1, "w1");
  ops_detail::require_nonneg_curvature(b.d2, w2, "w2");
  const Rational t1 = ops_detail::sum(w1), t2 = ops_detail::sum(w2);
  if (t1 <= 0 || t2 <= 0) throw std::invalid_argument("predicted_bridge_curvature: totals must be positive");

  const int n1 = b.n1, n2 = b.n2, n = n1 + n2;
  TransportCoefficients co;
  co.alpha = t2 / t1;
  co.s = -t2 / 2;
  co.scale = Rational(n) / (co.alpha * n1 + n2 + t2 / 2);

  RatVector w(static_cast<std::size_t>(n));
  for (int i = 0; i < n1; ++i) w[static_cast<std::size_t>(i)] = co.alpha * w1[static_cast<std::size_t>(i)];
  for (int j = 0; j < n2; ++j) w[static_cast<std::size_t>(n1 + j)] = w2[static_cast<std::size_t>(j)];
  w[static_cast<std::size_t>(n1 - 1)] += co.s;
  w[static_cast<std::size_t>(n1)] += co.s;
  for (auto& x : w) x *= co.scale;

  verify_curvature(assemble_distance_matrix(b), w, /*require_nonneg=*/false);

  // endpoint closed forms and the sign pattern
  Rational denom = n1 * t2 + n2 * t1 + t1 * t2 / 2;
  Rational at_u = (t2 * n) / denom * (w1[static_cast<std::size_t>(n1 - 1)] - t1 / 2);
  Rational at_v = (t1 * n) / denom * (w2[0] - t2 / 2);
  if (w[static_cast<std::size_t>(n1 - 1)] != at_u || w[static_cast<std::size_t>(n1)] != at_v)
    throw std::logic_error("predicted_bridge_curvature: endpoint closed form mismatch");
  for (int i = 0; i < n; ++i) {
    const Rational& x = w[static_cast<std::size_t>(i)];
    if (i == n1 - 1 || i == n1) {
      if (x > 0) throw std::logic_error("predicted_bridge_curvature: endpoint must be nonpositive");
    } else if (x < 0) {
      throw std::logic_error("predicted_bridge_curvature: interior entry must be nonnegative");
    }
  }
  return {std::move(w), co};
}

// Bridging two copies of a constant-curvature graph: closed-form values at
// the bridge endpoints and everywhere else.
inline std::pair<Rational, Rational> corollary_two_copies(const Rational& k, int n) {
  if (k <= 0) throw std::invalid_argument("corollary_two_copies: curvature must be positive");
  if (n < 2) throw std::invalid_argument("corollary_two_copies: needs n >= 2");
  Rational endpoint = Rational(2 - n) * 2 * k / (4 + k);
  Rational interior = 4 * k / (4 + k);
  return {endpoint, interior};
}

// Transport of nonnegative curvatures across a vertex identification.
// w is G1's curvature (block layout, merged vertex last), g is G2's
// (block layout, merged vertex first).
inline PredictedCurvature predicted_merge_curvature(const RatVector& w, const RatVector& g,
                                                    const BlockDecomposition& b) {
  if (b.layout != BlockLayout::Merged)
    throw std::invalid_argument("predicted_merge_curvature: expected a merged decomposition");
  ops_detail::require_nonneg_curvature(b.d1, w, "w");
  ops_detail::require_nonneg_curvature(b.d2, g, "g");
  const Rational tw = ops_detail::sum(w), tg = ops_detail::sum(g);
  if (tw <= 0 || tg <= 0) throw std::invalid_argument("predicted_merge_curvature: totals must be positive");

  const int n1 = b.n1, n2 = b.n2, n = n1 + n2 - 1;
  TransportCoefficients co;
  co.s = -tg;
  co.alpha = tg / tw;
  co.scale = Rational(n) / (co.alpha * n1 + n2);

  RatVector out(static_cast<std::size_t>(n));
  for (int i = 0; i < n1; ++i) out[static_cast<std::size_t>(i)] = co.alpha * w[static_cast<std::size_t>(i)];
  for (int j = 1; j < n2; ++j) out[static_cast<std::size_t>(n1 - 1 + j)] = g[static_cast<std::size_t>(j)];
  out[static_cast<std::size_t>(n1 - 1)] += co.s + g[0];
  for (auto& x : out) x *= co.scale;

  verify_curvature(assemble_distance_matrix(b), out, /*require_nonneg=*/false);

  Rational gbar_norm = tg - g[0];
  Rational merged_expected =
      (tg * w[static_cast<std::size_t>(n1 - 1)] - tw * gbar_norm) / (tg * n1 + tw * n2) * n;
  if (out[static_cast<std::size_t>(n1 - 1)] != merged_expected)
    throw std::logic_error("predicted_merge_curvature: merged-vertex closed form mismatch");
  for (int i = 0; i < n; ++i)
    if (i != n1 - 1 && out[static_cast<std::size_t>(i)] < 0)
      throw std::logic_error("predicted_merge_curvature: entry away from merged vertex must be nonnegative");
  return {std::move(out), co};
}

struct CutCurvatures {
  CutResult parts;
  RatVector w1;  // curvature of parts.part1, local labeling
  RatVector w2;
  int attach1 = 0;  // local index of the removed edge's endpoint in each part
  int attach2 = 0;
};

// Removing a bridge from a nonnegatively curved graph leaves both components
// nonnegatively curved; the transported vectors are rescaled restrictions
// with the attachment entry bumped by the opposite side's total.
inline CutCurvatures cut_curvatures(const Graph& g, Edge e, const RatVector& w) {
  IntMatrix dg = distance_matrix(g);
  verify_curvature(dg, w, /*require_nonneg=*/true);
  CutCurvatures res;
  res.parts = cut(g, e);  // validates that e is a bridge
  const int n1 = res.parts.part1.vertex_count();
  const int n2 = res.parts.part2.vertex_count();
  if (n1 < 2 || n2 < 2)
    throw graph_error("cut_curvatures: a single-vertex component admits no curvature");

  auto transport = [&](const Graph& part, const std::vector<int>& orig, int attach_orig,
                       const Rational& other_total, int& attach_local) {
    RatVector wi(static_cast<std::size_t>(part.vertex_count()));
    for (std::size_t i = 0; i < orig.size(); ++i) wi[i] = w[static_cast<std::size_t>(orig[i])];
    attach_local = static_cast<int>(std::find(orig.begin(), orig.end(), attach_orig) - orig.begin());
    IntMatrix di = distance_matrix(part);
    Rational y_dot = 0;
    for (int i = 0; i < part.vertex_count(); ++i) y_dot += Rational(di(i, attach_local)) * wi[static_cast<std::size_t>(i)];
    if (y_dot <= 0) throw std::logic_error("cut_curvatures: attachment pairing must be positive");
    wi[static_cast<std::size_t>(attach_local)] += other_total;
    Rational f = Rational(part.vertex_count()) / y_dot;
    for (auto& x : wi) x *= f;
    verify_curvature(di, wi, /*require_nonneg=*/true);
    return wi;
  };

  Rational total1 = 0, total2 = 0;
  for (int v : res.parts.orig1) total1 += w[static_cast<std::size_t>(v)];
  for (int v : res.parts.orig2) total2 += w[static_cast<std::size_t>(v)];

  res.w1 = transport(res.parts.part1, res.parts.orig1, e.first, total2, res.attach1);
  res.w2 = transport(res.parts.part2, res.parts.orig2, e.second, total1, res.attach2);
  return res;
}

namespace ops_detail {

inline void require_null_vector(const IntMatrix& d, const RatVector& v, const char* which) {
  if (v.size() != static_cast<std::size_t>(d.size()))
    throw std::invalid_argument(std::string(which) + ": dimension mismatch");
  for (int i = 0; i < d.size(); ++i) {
    Rational s = 0;
    for (int j = 0; j < d.size(); ++j) s += Rational(d(i, j)) * v[static_cast<std::size_t>(j)];
    if (s != 0) throw std::invalid_argument(std::string(which) + ": not in the kernel");
  }
}

}  // namespace ops_detail

// Kernel of the bridged distance matrix: zero-padded embeddings of the factor
// kernels, valid whenever both factors admit curvatures.
inline std::vector<RatVector> bridged_null_basis(const std::vector<RatVector>& null1,
                                                 const std::vector<RatVector>& null2,
                                                 const BlockDecomposition& b) {
  if (b.layout != BlockLayout::Bridged)
    throw std::invalid_argument("bridged_null_basis: expected a bridged decomposition");
  for (const auto& v : null1) {
    ops_detail::require_null_vector(b.d1, v, "null1");
    if (dot(v, constant_vector(b.n1, Rational(1))) != 0)
      throw std::invalid_argument("bridged_null_basis: G1 does not admit a curvature (kernel not 1-orthogonal)");
  }
  for (const auto& v : null2) {
    ops_detail::require_null_vector(b.d2, v, "null2");
    if (dot(v, constant_vector(b.n2, Rational(1))) != 0)
      throw std::invalid_argument("bridged_null_basis: G2 does not admit a curvature (kernel not 1-orthogonal)");
  }
  if (rank(to_rational(b.d1)) != b.n1 - static_cast<int>(null1.size()) ||
      rank(to_rational(b.d2)) != b.n2 - static_cast<int>(null2.size()))
    throw std::invalid_argument("bridged_null_basis: supplied vectors do not span the kernel");

  const int n = b.n1 + b.n2;
  std::vector<RatVector> basis;
  for (const auto& v : null1) {
    RatVector e(static_cast<std::size_t>(n));
    for (int i = 0; i < b.n1; ++i) e[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    basis.push_back(std::move(e));
  }
  for (const auto& v : null2) {
    RatVector e(static_cast<std::size_t>(n));
    for (int j = 0; j < b.n2; ++j) e[static_cast<std::size_t>(b.n1 + j)] = v[static_cast<std::size_t>(j)];
    basis.push_back(std::move(e));
  }

  IntMatrix dg = assemble_distance_matrix(b);
  for (const auto& v : basis) ops_detail::require_null_vector(dg, v, "embedded basis");
  if (rank(to_rational(dg)) != n - static_cast<int>(basis.size()))
    throw std::logic_error("bridged_null_basis: embedded vectors do not span null D_G");
  return basis;
}

// Merging two graphs whose systems D x = 1 are unsolvable yields another such
// graph; zeta certifies it: D_H zeta = 0 while <zeta, 1> = <xi, 1> != 0.
inline RatVector merged_no_solution_certificate(const RatVector& eta, const RatVector& xi,
                                                const BlockDecomposition& b) {
  if (b.layout != BlockLayout::Merged)
    throw std::invalid_argument("merged_no_solution_certificate: expected a merged decomposition");
  ops_detail::require_null_vector(b.d1, eta, "eta");
  ops_detail::require_null_vector(b.d2, xi, "xi");
  Rational te = ops_detail::sum(eta), tx = ops_detail::sum(xi);
  if (te == 0) throw std::invalid_argument("merged_no_solution_certificate: <eta, 1> must be nonzero");
  if (tx == 0) throw std::invalid_argument("merged_no_solution_certificate: <xi, 1> must be nonzero");

  const int n1 = b.n1, n2 = b.n2, n = n1 + n2 - 1;
  Rational s = -tx;
  Rational alpha = tx / te;

  RatVector zeta(static_cast<std::size_t>(n));
  for (int i = 0; i < n1; ++i) zeta[static_cast<std::size_t>(i)] = alpha * eta[static_cast<std::size_t>(i)];
  for (int j = 1; j < n2; ++j) zeta[static_cast<std::size_t>(n1 - 1 + j)] = xi[static_cast<std::size_t>(j)];
  zeta[static_cast<std::size_t>(n1 - 1)] += s + xi[0];

  IntMatrix dh = assemble_distance_matrix(b);
  ops_detail::require_null_vector(dh, zeta, "zeta");
  if (ops_detail::sum(zeta) != tx)
    throw std::logic_error("merged_no_solution_certificate: <zeta, 1> disagrees with <xi, 1>");
  return zeta;
}

}  // namespace dcurv
