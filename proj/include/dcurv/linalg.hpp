#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dcurv/rational.hpp"

namespace dcurv {

using RatVector = std::vector<Rational>;

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return a_[idx(i, j)]; }
  const Rational& operator()(int i, int j) const { return a_[idx(i, j)]; }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

inline Rational dot(const RatVector& u, const RatVector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

inline Rational one_norm(const RatVector& v) {
  Rational s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

inline RatVector matvec(const RatMatrix& a, const RatVector& x) {
  if (static_cast<std::size_t>(a.cols()) != x.size())
    throw std::invalid_argument("matvec: dimension mismatch");
  RatVector y(static_cast<std::size_t>(a.rows()));
  for (int i = 0; i < a.rows(); ++i) {
    Rational s = 0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

inline RatVector constant_vector(int n, const Rational& c) {
  return RatVector(static_cast<std::size_t>(n), c);
}

inline RatVector unit_vector(int n, int k) {
  RatVector e(static_cast<std::size_t>(n));
  e[static_cast<std::size_t>(k)] = 1;
  return e;
}

struct RrefResult {
  RatMatrix r;
  std::vector<int> pivot_cols;
  int rank = 0;
};

// Unique reduced row echelon form by exact Gauss-Jordan elimination.
inline RrefResult rref(RatMatrix a) {
  const int nr = a.rows(), nc = a.cols();
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < nc && row < nr; ++col) {
    int p = -1;
    for (int i = row; i < nr; ++i) {
      if (a(i, col) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < nc; ++j) std::swap(a(p, j), a(row, j));
    Rational inv = a(row, col);
    for (int j = col; j < nc; ++j) a(row, j) /= inv;
    for (int i = 0; i < nr; ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (int j = col; j < nc; ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return RrefResult{std::move(a), std::move(pivots), row};
}

inline int rank(const RatMatrix& a) { return rref(a).rank; }

// Kernel basis from the RREF free columns, ordered by free-column index.
inline std::vector<RatVector> null_space_basis(const RatMatrix& a) {
  const int nc = a.cols();
  RrefResult rr = rref(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(nc), false);
  for (int c : rr.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<RatVector> basis;
  for (int fc = 0; fc < nc; ++fc) {
    if (is_pivot[static_cast<std::size_t>(fc)]) continue;
    RatVector v(static_cast<std::size_t>(nc));
    v[static_cast<std::size_t>(fc)] = 1;
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
      v[static_cast<std::size_t>(rr.pivot_cols[r])] = -rr.r(static_cast<int>(r), fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

enum class SolutionKind { Consistent, Inconsistent };

struct LinearSolution {
  SolutionKind kind = SolutionKind::Inconsistent;
  RatVector particular;               // Consistent: free variables pinned to zero
  std::vector<RatVector> null_basis;  // kernel of A
  RatVector certificate;              // Inconsistent, symmetric A: A c = 0, <c,b> != 0
  int nullity() const { return static_cast<int>(null_basis.size()); }
};

// Exact solve of A x = b for symmetric A. Symmetry makes row space equal
// column space, so when b is not in Im A some kernel vector has <v,b> != 0
// and serves as an unsolvability certificate.
inline LinearSolution solve_symmetric(const RatMatrix& a, const RatVector& b) {
  const int n = a.rows();
  if (!a.is_symmetric()) throw std::invalid_argument("solve_symmetric: matrix not symmetric");
  if (static_cast<std::size_t>(n) != b.size())
    throw std::invalid_argument("solve_symmetric: dimension mismatch");

  RatMatrix aug(n, n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[static_cast<std::size_t>(i)];
  }
  RrefResult rr = rref(std::move(aug));

  LinearSolution sol;
  sol.null_basis = null_space_basis(a);

  bool inconsistent = !rr.pivot_cols.empty() && rr.pivot_cols.back() == n;
  if (inconsistent) {
    sol.kind = SolutionKind::Inconsistent;
    for (const auto& v : sol.null_basis) {
      if (dot(v, b) != 0) {
        sol.certificate = v;
        break;
      }
    }
    if (sol.certificate.empty())
      throw std::logic_error("solve_symmetric: inconsistent system without kernel certificate");
    return sol;
  }

  sol.kind = SolutionKind::Consistent;
  sol.particular.assign(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r) {
    int pc = rr.pivot_cols[r];
    if (pc < n) sol.particular[static_cast<std::size_t>(pc)] = rr.r(static_cast<int>(r), n);
  }
  return sol;
}

}  // namespace dcurv
