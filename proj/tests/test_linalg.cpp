#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dcurv/distance.hpp"
#include "dcurv/generators.hpp"
#include "dcurv/linalg.hpp"
#include "oracles.hpp"

using namespace dcurv;

namespace {

RatMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
  RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

RatMatrix random_symmetric(std::mt19937_64& rng, int n) {
  RatMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      long long v = static_cast<long long>(bounded_draw(rng, 11)) - 5;
      a(i, j) = v;
      a(j, i) = v;
    }
  return a;
}

}  // namespace

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(rat(12, 11)) == "12/11");
  CHECK(to_string(rat(-6, 11)) == "-6/11");
  CHECK(to_string(rat(6, 3)) == "2");
  CHECK(to_string(Rational(0)) == "0");
  CHECK(parse_rational("12/11") == rat(12, 11));
  CHECK(parse_rational("-4") == rat(-4));
  CHECK(parse_rational("2/4") == rat(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("rref basics") {
  RrefResult id = rref(RatMatrix::identity(3));
  CHECK(id.rank == 3);
  CHECK(id.r == RatMatrix::identity(3));

  RrefResult zero = rref(RatMatrix(2, 2));
  CHECK(zero.rank == 0);
  CHECK(zero.r == RatMatrix(2, 2));

  RatMatrix dc4 = to_rational(distance_matrix(cycle_graph(4)));
  CHECK(rref(dc4).rank == 3);

  // idempotence
  RrefResult once = rref(dc4);
  RrefResult twice = rref(once.r);
  CHECK(once.r == twice.r);
  CHECK(once.pivot_cols == twice.pivot_cols);
}

TEST_CASE("solve_symmetric on the named systems") {
  // D(K2) x = 1
  RatMatrix dk2 = from_rows({{0, 1}, {1, 0}});
  LinearSolution s = solve_symmetric(dk2, {1, 1});
  CHECK(s.kind == SolutionKind::Consistent);
  CHECK(s.particular == RatVector{1, 1});
  CHECK(s.null_basis.empty());

  // D(C4) x = 1: one-dimensional kernel spanned by the alternating vector
  RatMatrix dc4 = to_rational(distance_matrix(cycle_graph(4)));
  LinearSolution c = solve_symmetric(dc4, constant_vector(4, Rational(1)));
  CHECK(c.kind == SolutionKind::Consistent);
  CHECK(matvec(dc4, c.particular) == constant_vector(4, Rational(1)));
  REQUIRE(c.null_basis.size() == 1);
  RatVector alt{1, -1, 1, -1};
  Rational ratio = c.null_basis[0][0] / alt[0];
  for (int i = 0; i < 4; ++i) CHECK(c.null_basis[0][static_cast<std::size_t>(i)] == ratio * alt[static_cast<std::size_t>(i)]);

  // the one-vertex system 0 x = 1 is inconsistent with certificate (1)
  RatMatrix z(1, 1);
  LinearSolution k1 = solve_symmetric(z, {1});
  CHECK(k1.kind == SolutionKind::Inconsistent);
  CHECK(k1.certificate == RatVector{1});

  CHECK_THROWS_AS(solve_symmetric(from_rows({{0, 1}, {2, 0}}), RatVector{1, 1}), std::invalid_argument);
}

TEST_CASE("null space bases") {
  RatMatrix dc4 = to_rational(distance_matrix(cycle_graph(4)));
  auto b = null_space_basis(dc4);
  REQUIRE(b.size() == 1);
  CHECK(matvec(dc4, b[0]) == RatVector(4, Rational(0)));

  RatMatrix dp3 = to_rational(distance_matrix(path_graph(3)));
  CHECK(null_space_basis(dp3).empty());  // det(D(P3)) = 4

  auto z = null_space_basis(RatMatrix(2, 2));
  REQUIRE(z.size() == 2);
  CHECK(z[0] == RatVector{1, 0});
  CHECK(z[1] == RatVector{0, 1});
}

TEST_CASE("rank, dot, one_norm") {
  CHECK(rank(to_rational(distance_matrix(complete_graph(4)))) == 4);  // spectrum 3, -1, -1, -1
  RatVector w{rat(12, 11), rat(12, 11), rat(-6, 11), rat(-6, 11), rat(12, 11), rat(12, 11)};
  CHECK(dot(constant_vector(6, Rational(1)), w) == rat(36, 11));
  CHECK(one_norm(RatVector(4, Rational(0))) == 0);
  CHECK(one_norm(w) == rat(60, 11));
  CHECK_THROWS_AS(dot(RatVector{1}, RatVector{1, 2}), std::invalid_argument);
}

TEST_CASE("random symmetric systems: exact resubstitution, rank-nullity, certificates") {
  std::mt19937_64 rng(314159);
  for (int trial = 0; trial < 120; ++trial) {
    int n = 1 + static_cast<int>(bounded_draw(rng, 10));
    RatMatrix a = random_symmetric(rng, n);
    RatVector b(static_cast<std::size_t>(n));
    for (auto& x : b) x = static_cast<long long>(bounded_draw(rng, 11)) - 5;

    LinearSolution s = solve_symmetric(a, b);
    CHECK(rref(a).rank + static_cast<int>(s.null_basis.size()) == n);
    for (const auto& v : s.null_basis) CHECK(matvec(a, v) == RatVector(static_cast<std::size_t>(n), Rational(0)));

    if (s.kind == SolutionKind::Consistent) {
      CHECK(matvec(a, s.particular) == b);
    } else {
      CHECK(matvec(a, s.certificate) == RatVector(static_cast<std::size_t>(n), Rational(0)));
      CHECK(dot(s.certificate, b) != 0);
    }
  }
}

TEST_CASE("solver agrees with an independently coded elimination") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(bounded_draw(rng, 6));
    RatMatrix a = random_symmetric(rng, n);
    RatVector b(static_cast<std::size_t>(n));
    for (auto& x : b) x = static_cast<long long>(bounded_draw(rng, 11)) - 5;

    LinearSolution s = solve_symmetric(a, b);
    oracle::NaiveSolve ns = oracle::naive_solve(a, b);
    CHECK((s.kind == SolutionKind::Consistent) == ns.consistent);
    CHECK(rref(a).rank == ns.rank);
    if (ns.consistent) CHECK(matvec(a, ns.x) == b);  // both solutions solve the same system
  }
}
