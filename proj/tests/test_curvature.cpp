#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dcurv/curvature.hpp"
#include "dcurv/generators.hpp"
#include "dcurv/ops.hpp"

using namespace dcurv;

namespace {
Graph bridged_c3_c3() { return bridge(cycle_graph(3), 2, cycle_graph(3), 0).combined; }
}  // namespace

TEST_CASE("curvature of the bridged triangles is the reference vector") {
  CurvatureReport r = curvature(bridged_c3_c3());
  CHECK(r.kind == CurvatureKind::Unique);
  CHECK(r.w == RatVector{rat(12, 11), rat(12, 11), rat(-6, 11), rat(-6, 11), rat(12, 11), rat(12, 11)});
  CHECK(r.total == rat(36, 11));
  CHECK(r.witness_status == WitnessStatus::Absent);
}

TEST_CASE("curvature of C4 is an affine family") {
  CurvatureReport r = curvature(cycle_graph(4));
  CHECK(r.kind == CurvatureKind::AffineFamily);
  CHECK(r.w == RatVector{2, 0, 2, 0});  // free variable pinned to zero
  CHECK(r.nullity() == 1);
  CHECK(r.total == 4);
  REQUIRE(r.nonneg_witness.has_value());
  CHECK(*r.nonneg_witness == RatVector{1, 1, 1, 1});
  REQUIRE(r.constant_value.has_value());
  CHECK(*r.constant_value == 1);
  CHECK(matvec(to_rational(distance_matrix(cycle_graph(4))), r.w) == constant_vector(4, Rational(4)));
}

TEST_CASE("the one-vertex graph has no curvature") {
  CurvatureReport r = curvature(complete_graph(1));
  CHECK(r.kind == CurvatureKind::NoSolution);
  CHECK(r.certificate == RatVector{1});
  CHECK_THROWS_AS(total_curvature(r), std::invalid_argument);
  CHECK_THROWS_AS(nonnegative_witness(r), std::invalid_argument);
}

TEST_CASE("total curvature of the named graphs") {
  CHECK(total_curvature(curvature(complete_graph(4))) == rat(16, 3));  // 4 * 4/3
  CHECK(total_curvature(curvature(cycle_graph(6))) == 4);              // 6 * 2/3
  CHECK(total_curvature(curvature(bridged_c3_c3())) == rat(36, 11));
}

TEST_CASE("normalized solution solves D x = 1") {
  Graph g = complete_graph(4);
  CurvatureReport r = curvature(g);
  CHECK(matvec(to_rational(distance_matrix(g)), r.normalized()) == constant_vector(4, Rational(1)));
}

TEST_CASE("nonnegative witnesses") {
  CHECK(*curvature(cycle_graph(4)).nonneg_witness == RatVector{1, 1, 1, 1});
  CHECK(curvature(bridged_c3_c3()).witness_status == WitnessStatus::Absent);
  CHECK(*curvature(path_graph(3)).nonneg_witness == RatVector{rat(3, 2), 0, rat(3, 2)});
}

TEST_CASE("feasibility search reports unknown beyond the kernel cap") {
  // Q4's distance matrix has kernel dimension 2^4 - 1 - 4 = 11 > 8
  CurvatureReport r = curvature(hypercube_graph(4));
  CHECK(r.kind == CurvatureKind::AffineFamily);
  CHECK(r.nullity() == 11);
  CHECK(r.witness_status == WitnessStatus::Unknown);
  CHECK_FALSE(r.nonneg_witness.has_value());
  // the constant solution is still detected
  REQUIRE(r.constant_value.has_value());
  CHECK(*r.constant_value == rat(1, 2));  // row sums 4 * 2^3 = 32, n = 16
}

TEST_CASE("feasibility search over a two-dimensional kernel") {
  // bridged C4-C4 has nullity 2 and the zero endpoints force both parameters
  Graph g = bridge(cycle_graph(4), 3, cycle_graph(4), 0).combined;
  CurvatureReport r = curvature(g);
  CHECK(r.nullity() == 2);
  REQUIRE(r.nonneg_witness.has_value());
  for (const auto& x : *r.nonneg_witness) CHECK(x >= 0);
  verify_curvature(distance_matrix(g), *r.nonneg_witness, true);
}

TEST_CASE("bapat vector on trees") {
  CHECK(bapat_tree_curvature(path_graph(3)) == RatVector{rat(3, 2), 0, rat(3, 2)});
  CHECK(bapat_tree_curvature(star_graph(4)) ==
        RatVector{rat(-4, 3), rat(4, 3), rat(4, 3), rat(4, 3)});
  CHECK(bapat_tree_curvature(complete_graph(2)) == RatVector{2, 2});
  CHECK_THROWS_AS(bapat_tree_curvature(cycle_graph(4)), graph_error);
  CHECK_THROWS_AS(bapat_tree_curvature(complete_graph(1)), graph_error);
}

TEST_CASE("bapat agrees with the direct solve on trees") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph t = random_tree(3 + static_cast<int>(seed) * 3, seed);
    CurvatureReport r = curvature(t);
    CHECK(r.kind == CurvatureKind::Unique);  // tree distance matrices are invertible
    CHECK(r.w == bapat_tree_curvature(t));
  }
}

TEST_CASE("half-total bound") {
  CHECK(vertex_half_total_check(RatVector{rat(2, 3), rat(2, 3), rat(2, 3), rat(2, 3), rat(2, 3), rat(2, 3)}));
  CHECK(vertex_half_total_check(RatVector{2, 2}));                 // boundary
  CHECK(vertex_half_total_check(RatVector{rat(3, 2), 0, rat(3, 2)}));  // boundary attained
  CHECK_FALSE(vertex_half_total_check(RatVector{3, 1, 1}));
  CHECK_THROWS_AS(vertex_half_total_check(RatVector{-1, 2}), std::invalid_argument);
}

TEST_CASE("bonnet-myers reports") {
  BonnetMyersReport k2 = bonnet_myers(complete_graph(2), RatVector{2, 2});
  CHECK(k2.k_min == 2);
  CHECK(k2.diam == 1);
  CHECK(k2.sharp);

  BonnetMyersReport c4 = bonnet_myers(cycle_graph(4), RatVector{1, 1, 1, 1});
  CHECK(c4.k_min == 1);
  CHECK(c4.diam == 2);
  CHECK(c4.sharp);
  CHECK(c4.bound == 2);

  RatVector w6(6, rat(2, 3));
  BonnetMyersReport c6 = bonnet_myers(cycle_graph(6), w6);
  CHECK(c6.k_min == rat(2, 3));
  CHECK(c6.diam == 3);
  CHECK(c6.sharp);

  // odd cycles are not sharp
  CurvatureReport c5 = curvature(cycle_graph(5));
  REQUIRE(c5.nonneg_witness.has_value());
  CHECK_FALSE(bonnet_myers(cycle_graph(5), *c5.nonneg_witness).sharp);

  // (2,0,2,0) is also a valid nonnegative curvature of C4, just not sharp
  CHECK_FALSE(bonnet_myers(cycle_graph(4), RatVector{2, 0, 2, 0}).sharp);

  CHECK_THROWS_AS(bonnet_myers(cycle_graph(4), RatVector{1, 1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(bonnet_myers(cycle_graph(4), RatVector{3, -1, 3, -1}), std::invalid_argument);
}

TEST_CASE("product sharpness closed form") {
  auto [k1, s1] = product_sharpness(2, 2, 1, 1);  // K2 x K2 = C4
  CHECK(k1 == 1);
  CHECK(s1);
  auto [k2, s2] = product_sharpness(1, 1, 2, 2);  // C4 x C4
  CHECK(k2 == rat(1, 2));
  CHECK(s2);
  auto [k3, s3] = product_sharpness(2, rat(2, 3), 1, 3);  // K2 x C6
  CHECK(k3 == rat(1, 2));
  CHECK(s3);
  CHECK_THROWS_AS(product_sharpness(0, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("bapat identity holds for many random trees") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(bounded_draw(rng, 199));
    Graph t = random_tree(n, rng());
    IntMatrix d = distance_matrix(t);
    std::vector<int> deg = t.degrees();
    for (int i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += d(i, j) * (2 - deg[static_cast<std::size_t>(j)]);
      REQUIRE(s == n - 1);
    }
  }
}

TEST_CASE("solvability is equivalent to a 1-orthogonal kernel") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(bounded_draw(rng, 9));
    Graph g = random_connected_graph(n, 0.4, rng);
    CurvatureReport r = curvature(g);
    bool orthogonal = true;
    for (const auto& v : r.null_basis)
      if (dot(v, constant_vector(n, Rational(1))) != 0) orthogonal = false;
    CHECK(r.solvable() == orthogonal);
  }
}

TEST_CASE("total curvature is invariant across the affine family") {
  Graph g = bridge(cycle_graph(4), 0, cycle_graph(6), 2).combined;
  CurvatureReport r = curvature(g);
  REQUIRE(r.solvable());
  REQUIRE(r.nullity() >= 1);
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    RatVector moved = r.w;
    for (const auto& v : r.null_basis) {
      Rational t = rat(static_cast<long long>(bounded_draw(rng, 19)) - 9,
                       1 + static_cast<long long>(bounded_draw(rng, 7)));
      for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += t * v[i];
    }
    CHECK(dot(moved, constant_vector(r.n, Rational(1))) == r.total);
  }
}
