#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcurv/curvature.hpp"
#include "dcurv/distance.hpp"
#include "dcurv/graph.hpp"

namespace dcurv {

struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class FloatMatrix {
 public:
  FloatMatrix() = default;
  explicit FloatMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

  static FloatMatrix from(const IntMatrix& d) {
    FloatMatrix m(d.size());
    for (int i = 0; i < d.size(); ++i)
      for (int j = 0; j < d.size(); ++j) m(i, j) = static_cast<double>(d(i, j));
    return m;
  }

  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[idx(i, j)]; }
  double operator()(int i, int j) const { return a_[idx(i, j)]; }

  bool is_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  double frobenius_norm() const {
    double s = 0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<double> a_;
};

inline constexpr int kEigenSizeCap = 1024;

struct EigenResult {
  std::vector<double> values;                // descending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k], unit norm
};

// Cyclic Jacobi sweeps; terminates when every off-diagonal entry is below
// tol * ||M||_F.
inline EigenResult symmetric_eigen(FloatMatrix a, double tol = 1e-12) {
  const int n = a.size();
  if (n < 1) throw std::invalid_argument("symmetric_eigen: empty matrix");
  if (n > kEigenSizeCap) throw std::invalid_argument("symmetric_eigen: size cap exceeded");
  if (!a.is_symmetric()) throw std::invalid_argument("symmetric_eigen: matrix not symmetric");

  FloatMatrix v(n);
  for (int i = 0; i < n; ++i) v(i, i) = 1.0;

  const double norm = a.frobenius_norm();
  const double threshold = tol * (norm > 0 ? norm : 1.0);
  const int max_sweeps = 64;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off_max = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off_max = std::max(off_max, std::abs(a(p, q)));
    if (off_max <= threshold) break;
    if (sweep == max_sweeps - 1) throw convergence_error("symmetric_eigen: jacobi sweeps exhausted");

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= threshold * 1e-3) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(p, i) = a(i, p);
          a(i, q) = s * aip + c * aiq;
          a(q, i) = a(i, q);
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) > a(y, y); });

  EigenResult res;
  res.values.reserve(static_cast<std::size_t>(n));
  res.vectors.reserve(static_cast<std::size_t>(n));
  for (int k : order) {
    res.values.push_back(a(k, k));
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = v(i, k);
    res.vectors.push_back(std::move(col));
  }
  return res;
}

struct PerronResult {
  double lambda1 = 0;
  std::vector<double> eta;  // unit 2-norm, entrywise positive
  int iterations = 0;
  double residual = 0;
};

inline constexpr double kPerronResidualTarget = 1e-10;

// Power iteration from the normalized all-one vector. Stops once successive
// Rayleigh quotients settle within tol and the 2-norm residual is at target.
inline PerronResult perron(const IntMatrix& d, double tol = 1e-12, int max_iter = 100000) {
  const int n = d.size();
  if (n < 2) throw std::invalid_argument("perron: needs n >= 2");

  std::vector<double> v(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> dv(static_cast<std::size_t>(n));
  double rho_prev = 0;
  double rho = 0, res = 0;
  int it = 0;
  for (it = 1; it <= max_iter; ++it) {
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += static_cast<double>(d(i, j)) * v[static_cast<std::size_t>(j)];
      dv[static_cast<std::size_t>(i)] = s;
    }
    rho = 0;
    for (int i = 0; i < n; ++i) rho += v[static_cast<std::size_t>(i)] * dv[static_cast<std::size_t>(i)];
    double r2 = 0;
    for (int i = 0; i < n; ++i) {
      double e = dv[static_cast<std::size_t>(i)] - rho * v[static_cast<std::size_t>(i)];
      r2 += e * e;
    }
    res = std::sqrt(r2);
    if (it > 1 && std::abs(rho - rho_prev) < tol * std::max(1.0, std::abs(rho)) &&
        res <= kPerronResidualTarget)
      break;
    rho_prev = rho;
    double norm = 0;
    for (double x : dv) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0) throw convergence_error("perron: zero iterate");
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = dv[static_cast<std::size_t>(i)] / norm;
  }
  if (it > max_iter)
    throw convergence_error("perron: no convergence after " + std::to_string(max_iter) +
                            " iterations (residual " + std::to_string(res) + ")");
  return {rho, std::move(v), it, res};
}

struct SpectralReport {
  double lambda1 = 0;
  std::vector<double> eta;
  double lambda2 = 0;
  double residual = 0;
  Rational row_sum_min, row_sum_max, row_sum_avg;
};

inline SpectralReport spectral_report(const IntMatrix& d, double tol = 1e-12) {
  PerronResult pr = perron(d, tol);
  EigenResult eig = symmetric_eigen(FloatMatrix::from(d), tol);
  SpectralReport rep;
  rep.lambda1 = pr.lambda1;
  rep.eta = std::move(pr.eta);
  rep.lambda2 = eig.values[1];
  rep.residual = pr.residual;
  std::int64_t mn = d.row_sum(0), mx = mn, total = 0;
  for (int i = 0; i < d.size(); ++i) {
    std::int64_t s = d.row_sum(i);
    mn = std::min(mn, s);
    mx = std::max(mx, s);
    total += s;
  }
  rep.row_sum_min = Rational(mn);
  rep.row_sum_max = Rational(mx);
  rep.row_sum_avg = Rational(total) / d.size();
  return rep;
}

// Tolerance-aware verdict for strict inequalities evaluated in floating
// point: a margin smaller than tol is reported Indeterminate, not decided.
enum class BoundCheck { Holds, Indeterminate, Fails };

inline BoundCheck check_strict_greater(double lhs, double rhs, double tol) {
  if (lhs > rhs + tol) return BoundCheck::Holds;
  if (lhs < rhs - tol) return BoundCheck::Fails;
  return BoundCheck::Indeterminate;
}

struct SolvabilityCondition {
  double lhs = 0;
  double rhs = 0;
  bool satisfied = false;
  std::string note;
};

// Sufficient spectral condition for D x = 1 to be solvable:
//   1 - <eta, 1/sqrt(n)>^2 < |lambda2| / (lambda1 - lambda2).
inline SolvabilityCondition solvability_condition(const IntMatrix& d, double tol = 1e-9) {
  const int n = d.size();
  if (n < 2) throw std::invalid_argument("solvability_condition: needs n >= 2");
  EigenResult eig = symmetric_eigen(FloatMatrix::from(d));
  const double l1 = eig.values[0], l2 = eig.values[1];
  if (l1 - l2 <= 0) throw convergence_error("solvability_condition: perron root not separated");
  double mass = 0;
  for (double x : eig.vectors[0]) mass += x;
  SolvabilityCondition out;
  out.lhs = 1.0 - (mass * mass) / n;
  out.rhs = std::abs(l2) / (l1 - l2);
  out.satisfied = out.lhs < out.rhs - tol;
  out.note =
      "sufficient only; with lambda2 < 0 the matrix is already invertible, and with "
      "lambda2 = 0 the right side vanishes so the condition cannot hold";
  return out;
}

struct TreeBoundReport {
  int n = 0;
  int l = 0;  // leaf count
  double lambda1 = 0;
  double lhs = 0;         // <eta, 1>^2
  double rhs_proof = 0;   // (n/2) lambda/(lambda-l+2) + (n-l-1)/(lambda-l+2)
  double rhs_stated = 0;  // same with lambda-l+1 in the first denominator
  BoundCheck status_proof = BoundCheck::Indeterminate;
  BoundCheck status_stated = BoundCheck::Indeterminate;
  bool holds_proof = false;
  bool holds_stated = false;
  bool applicable = true;  // false when l = n (the two-vertex tree)
};

// Leaf-count lower bound for <eta,1>^2 on trees. Both right-hand-side
// variants are evaluated; holds_proof carries the contract.
inline TreeBoundReport tree_leaf_bound(const Graph& t, double tol = 1e-9) {
  if (!t.is_tree()) throw graph_error("tree_leaf_bound: input is not a tree");
  const int n = t.vertex_count();
  if (n < 2) throw graph_error("tree_leaf_bound: needs n >= 2");

  TreeBoundReport rep;
  rep.n = n;
  rep.l = static_cast<int>(t.leaves().size());
  PerronResult pr = perron(distance_matrix(t));
  rep.lambda1 = pr.lambda1;
  double mass = 0;
  for (double x : pr.eta) mass += x;
  rep.lhs = mass * mass;

  rep.applicable = rep.l <= n - 1;
  if (!rep.applicable) return rep;  // l = n happens only for the single edge

  const double den_proof = rep.lambda1 - rep.l + 2;
  const double den_stated = rep.lambda1 - rep.l + 1;
  if (den_proof <= 0) throw std::logic_error("tree_leaf_bound: lambda - l + 2 must be positive");
  rep.rhs_proof = (n / 2.0) * (rep.lambda1 / den_proof) + (n - rep.l - 1) / den_proof;
  rep.rhs_stated = (n / 2.0) * (rep.lambda1 / den_stated) + (n - rep.l - 1) / den_proof;
  rep.status_proof = check_strict_greater(rep.lhs, rep.rhs_proof, tol);
  rep.status_stated = check_strict_greater(rep.lhs, rep.rhs_stated, tol);
  rep.holds_proof = rep.status_proof == BoundCheck::Holds;
  rep.holds_stated = rep.status_stated == BoundCheck::Holds;
  return rep;
}

struct MassCheck {
  double value = 0;  // <eta, 1>^2
  bool holds = false;
};

inline MassCheck perron_mass_check(const IntMatrix& d, double tol = 1e-9) {
  PerronResult pr = perron(d);
  double mass = 0;
  for (double x : pr.eta) mass += x;
  double value = mass * mass;
  return {value, value >= d.size() / 2.0 - tol};
}

}  // namespace dcurv
