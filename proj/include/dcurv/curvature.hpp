#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dcurv/distance.hpp"
#include "dcurv/graph.hpp"
#include "dcurv/linalg.hpp"

namespace dcurv {

enum class CurvatureKind { Unique, AffineFamily, NoSolution };
enum class WitnessStatus { Found, Absent, Unknown };

// Exact feasibility of { p + N t >= 0 } over rational t, by Fourier-Motzkin
// elimination. Columns of N are the kernel basis, p the particular solution.
namespace fm_detail {

struct Inequality {
  RatVector c;  // coefficients over the remaining variables
  Rational r;   // meaning: sum_j c[j] t_j >= r
};

inline void normalize(Inequality& q) {
  Rational scale = 0;
  for (const auto& x : q.c)
    if (x != 0) {
      scale = abs(x);
      break;
    }
  if (scale == 0) scale = abs(q.r);
  if (scale == 0) return;
  for (auto& x : q.c) x /= scale;
  q.r /= scale;
}

inline std::vector<Inequality> dedup(std::vector<Inequality> sys) {
  std::set<std::pair<RatVector, Rational>> seen;
  std::vector<Inequality> out;
  for (auto& q : sys) {
    normalize(q);
    bool all_zero = std::all_of(q.c.begin(), q.c.end(), [](const Rational& x) { return x == 0; });
    if (all_zero && q.r <= 0) continue;  // trivially true
    if (seen.emplace(q.c, q.r).second) out.push_back(std::move(q));
  }
  return out;
}

}  // namespace fm_detail

struct FeasibilityResult {
  WitnessStatus status = WitnessStatus::Unknown;
  RatVector witness;  // meaningful when status == Found
};

inline constexpr int kFourierMotzkinNullityCap = 8;

inline FeasibilityResult nonnegative_point(const RatVector& particular,
                                           const std::vector<RatVector>& basis) {
  using fm_detail::Inequality;
  const std::size_t n = particular.size();
  const int k = static_cast<int>(basis.size());

  if (k == 0) {
    bool ok = std::all_of(particular.begin(), particular.end(),
                          [](const Rational& x) { return x >= 0; });
    return ok ? FeasibilityResult{WitnessStatus::Found, particular}
              : FeasibilityResult{WitnessStatus::Absent, {}};
  }
  if (k > kFourierMotzkinNullityCap) return {WitnessStatus::Unknown, {}};

  // levels[m] constrains variables t_0 .. t_{m-1}
  std::vector<std::vector<Inequality>> levels(static_cast<std::size_t>(k) + 1);
  auto& top = levels[static_cast<std::size_t>(k)];
  top.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Inequality q;
    q.c.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) q.c[static_cast<std::size_t>(j)] = basis[static_cast<std::size_t>(j)][i];
    q.r = -particular[i];
    top.push_back(std::move(q));
  }
  top = fm_detail::dedup(std::move(top));

  constexpr std::size_t kRowCap = 1u << 20;
  for (int m = k; m >= 1; --m) {
    const auto& cur = levels[static_cast<std::size_t>(m)];
    // split on the sign of the coefficient of t_{m-1}
    std::vector<std::pair<Rational, Inequality>> lower, upper;
    std::vector<Inequality> next;
    for (const auto& q : cur) {
      const Rational& cm = q.c[static_cast<std::size_t>(m - 1)];
      Inequality rest{RatVector(q.c.begin(), q.c.begin() + (m - 1)), q.r};
      if (cm > 0)
        lower.emplace_back(cm, std::move(rest));
      else if (cm < 0)
        upper.emplace_back(cm, std::move(rest));
      else
        next.push_back(std::move(rest));
    }
    if (lower.size() * upper.size() + next.size() > kRowCap)
      throw std::runtime_error("fourier-motzkin: inequality blowup beyond cap");
    for (const auto& [cl, ql] : lower) {
      for (const auto& [cu, qu] : upper) {
        // sL + cL t >= rL (cL > 0) and sU + cU t >= rU (cU < 0)
        // combine as (-cU) * lower + cL * upper, which cancels t
        Inequality q;
        q.c.resize(static_cast<std::size_t>(m - 1));
        for (int j = 0; j < m - 1; ++j)
          q.c[static_cast<std::size_t>(j)] =
              (-cu) * ql.c[static_cast<std::size_t>(j)] + cl * qu.c[static_cast<std::size_t>(j)];
        q.r = (-cu) * ql.r + cl * qu.r;
        next.push_back(std::move(q));
      }
    }
    levels[static_cast<std::size_t>(m - 1)] = fm_detail::dedup(std::move(next));
  }

  for (const auto& q : levels[0])
    if (q.r > 0) return {WitnessStatus::Absent, {}};

  // Feasible: back-substitute, taking interval midpoints for determinism.
  RatVector t(static_cast<std::size_t>(k));
  for (int m = 1; m <= k; ++m) {
    std::optional<Rational> lo, hi;
    for (const auto& q : levels[static_cast<std::size_t>(m)]) {
      const Rational& cm = q.c[static_cast<std::size_t>(m - 1)];
      if (cm == 0) continue;
      Rational rest = q.r;
      for (int j = 0; j < m - 1; ++j) rest -= q.c[static_cast<std::size_t>(j)] * t[static_cast<std::size_t>(j)];
      Rational bound = rest / cm;
      if (cm > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    Rational val = 0;
    if (lo && hi)
      val = (*lo + *hi) / 2;
    else if (lo)
      val = std::max(*lo, Rational(0));
    else if (hi)
      val = std::min(*hi, Rational(0));
    t[static_cast<std::size_t>(m - 1)] = val;
  }

  RatVector witness = particular;
  for (int j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i)
      witness[i] += basis[static_cast<std::size_t>(j)][i] * t[static_cast<std::size_t>(j)];
  for (const auto& x : witness)
    if (x < 0) throw std::logic_error("fourier-motzkin: back-substitution produced negative entry");
  return {WitnessStatus::Found, std::move(witness)};
}

// Classification of D w = n 1 for one graph, all values exact.
struct CurvatureReport {
  int n = 0;
  CurvatureKind kind = CurvatureKind::NoSolution;
  RatVector w;                         // particular solution, free variables zero
  std::vector<RatVector> null_basis;   // kernel of D
  RatVector certificate;               // NoSolution: D c = 0, <c, 1> != 0
  Rational total;                      // <w, 1>, invariant across solutions
  WitnessStatus witness_status = WitnessStatus::Unknown;
  std::optional<RatVector> nonneg_witness;
  std::optional<Rational> constant_value;  // c when c*1 solves D w = n 1

  bool solvable() const { return kind != CurvatureKind::NoSolution; }
  int nullity() const { return static_cast<int>(null_basis.size()); }

  // x with D x = 1
  RatVector normalized() const {
    RatVector x = w;
    for (auto& v : x) v /= n;
    return x;
  }
};

inline FeasibilityResult nonnegative_witness(const CurvatureReport& r) {
  if (!r.solvable()) throw std::invalid_argument("nonnegative_witness: no curvature exists");
  return nonnegative_point(r.w, r.null_basis);
}

inline CurvatureReport curvature_from_matrix(const IntMatrix& d) {
  const int n = d.size();
  LinearSolution sol = solve_symmetric(to_rational(d), constant_vector(n, Rational(n)));

  CurvatureReport rep;
  rep.n = n;
  rep.null_basis = std::move(sol.null_basis);
  if (sol.kind == SolutionKind::Inconsistent) {
    rep.kind = CurvatureKind::NoSolution;
    rep.certificate = std::move(sol.certificate);
    return rep;
  }
  rep.kind = rep.null_basis.empty() ? CurvatureKind::Unique : CurvatureKind::AffineFamily;
  rep.w = std::move(sol.particular);
  rep.total = 0;
  for (const auto& x : rep.w) rep.total += x;

  FeasibilityResult fr = nonnegative_point(rep.w, rep.null_basis);
  rep.witness_status = fr.status;
  if (fr.status == WitnessStatus::Found) rep.nonneg_witness = std::move(fr.witness);

  Rational c = rep.total / n;
  bool constant = true;
  for (int i = 0; i < n && constant; ++i)
    if (c * Rational(d.row_sum(i)) != n) constant = false;
  if (constant) rep.constant_value = c;
  return rep;
}

inline CurvatureReport curvature(const Graph& g) { return curvature_from_matrix(distance_matrix(g)); }

inline Rational total_curvature(const CurvatureReport& r) {
  if (!r.solvable()) throw std::invalid_argument("total_curvature: no curvature exists");
  return r.total;
}

// Bapat: on a tree, D (2 - deg) = (n-1) 1, so w = n/(n-1) (2 - deg).
inline RatVector bapat_tree_curvature(const Graph& g) {
  if (!g.is_tree()) throw graph_error("bapat_tree_curvature: input is not a tree");
  const int n = g.vertex_count();
  if (n < 2) throw graph_error("bapat_tree_curvature: needs n >= 2");
  std::vector<int> deg = g.degrees();
  IntMatrix d = distance_matrix(g);
  for (int i = 0; i < n; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < n; ++j) s += d(i, j) * (2 - deg[static_cast<std::size_t>(j)]);
    if (s != n - 1) throw std::logic_error("bapat identity failed; distance computation is broken");
  }
  RatVector w(static_cast<std::size_t>(n));
  Rational scale = Rational(n) / Rational(n - 1);
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = scale * (2 - deg[static_cast<std::size_t>(i)]);
  return w;
}

// Proposition: a nonnegative curvature never concentrates more than half of
// the total at one vertex.
inline bool vertex_half_total_check(const RatVector& w) {
  Rational maxi = 0, total = 0;
  for (const auto& x : w) {
    if (x < 0) throw std::invalid_argument("vertex_half_total_check: negative entry");
    maxi = std::max(maxi, x);
    total += x;
  }
  return maxi * 2 <= total;
}

struct BonnetMyersReport {
  Rational bound;  // 2n / ||w||_1
  int diam = 0;
  Rational k_min;  // K = min_i w_i
  bool sharp = false;  // diam * K == 2 exactly
};

inline void verify_curvature(const IntMatrix& d, const RatVector& w, bool require_nonneg) {
  const int n = d.size();
  if (w.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("curvature vector has wrong dimension");
  for (int i = 0; i < n; ++i) {
    Rational s = 0;
    for (int j = 0; j < n; ++j) s += Rational(d(i, j)) * w[static_cast<std::size_t>(j)];
    if (s != n) throw std::invalid_argument("vector does not satisfy D w = n 1");
  }
  if (require_nonneg)
    for (const auto& x : w)
      if (x < 0) throw std::invalid_argument("curvature vector has a negative entry");
}

inline BonnetMyersReport bonnet_myers(const Graph& g, const RatVector& w) {
  IntMatrix d = distance_matrix(g);
  verify_curvature(d, w, /*require_nonneg=*/true);
  BonnetMyersReport rep;
  rep.diam = static_cast<int>(d.max_entry());
  rep.k_min = w[0];
  for (const auto& x : w) rep.k_min = std::min(rep.k_min, x);
  Rational norm1 = one_norm(w);
  rep.bound = Rational(2 * g.vertex_count()) / norm1;
  rep.sharp = Rational(rep.diam) * rep.k_min == 2;
  return rep;
}

// Cartesian-product curvature floor: K = K1 K2 / (K1 + K2); the product is
// sharp exactly when (diam1 + diam2) K == 2.
inline std::pair<Rational, bool> product_sharpness(const Rational& k1, const Rational& k2, int diam1,
                                                   int diam2) {
  if (k1 <= 0 || k2 <= 0) throw std::invalid_argument("product_sharpness: curvatures must be positive");
  Rational k = (k1 * k2) / (k1 + k2);
  return {k, Rational(diam1 + diam2) * k == 2};
}

}  // namespace dcurv
