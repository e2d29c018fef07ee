#include <doctest.h>

#include <cmath>

#include "projclust/coresets.hpp"
#include "projclust/geometry.hpp"
#include "support/oracles.hpp"

using namespace projclust;

namespace {

PointSet make_points(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> data;
  for (const auto& r : rows) data.emplace_back(r);
  return PointSet::from_rows(data);
}

}  // namespace

TEST_CASE("optimal_center: rho=2 is the exact centroid") {
  const PointSet pts = make_points({{0, 0}, {2, 0}});
  const CenterOracle oracle = optimal_center(pts, Norm::lp(2));
  CHECK(oracle.center[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(oracle.center[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(oracle.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("optimal_center: rho=inf is the MEB center") {
  const PointSet pts = make_points({{-1, 0}, {1, 0}});
  const CenterOracle oracle = optimal_center(pts, Norm::inf());
  CHECK(oracle.center.norm() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(oracle.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("optimal_center: rho=1 matches a fine grid search") {
  const PointSet pts = make_points({{0, 0}, {1, 0}, {0, 1}});
  const CenterOracle oracle = optimal_center(pts, Norm::lp(1));
  const double grid = test::grid_search_center_value(pts, Norm::lp(1), -0.1, 1.1, 1e-3);
  // The iterative center can only beat the grid, up to grid resolution.
  CHECK(oracle.value <= grid + 1e-9);
  CHECK(oracle.value == doctest::Approx(grid).epsilon(1e-4));
}

TEST_CASE("optimal_center: rho=1 with duplicated anchor at the median") {
  // Majority mass at one point pins the geometric median there.
  const PointSet pts = make_points({{0, 0}, {0, 0}, {0, 0}, {4, 0}, {0, 5}});
  const CenterOracle oracle = optimal_center(pts, Norm::lp(1));
  CHECK(oracle.center.norm() <= 1e-6);
}

TEST_CASE("optimal_center: rho=4 matches a grid search and has flat gradient") {
  const PointSet pts = make_points({{0, 0}, {1.5, 0.2}, {0.3, 1.1}, {-0.4, 0.5}});
  const CenterOracle oracle = optimal_center(pts, Norm::lp(4));
  const double grid = test::grid_search_center_value(pts, Norm::lp(4), -0.5, 1.6, 2e-3);
  CHECK(oracle.value <= grid + 1e-9);
  CHECK(oracle.value == doctest::Approx(grid).epsilon(1e-4));
}

TEST_CASE("optimal_center: value consistent with objective()") {
  for (int seed = 0; seed < 3; ++seed) {
    const PointSet pts = test::gaussian_points(25, 6, 4000 + seed);
    for (const Norm& rho : {Norm::lp(1), Norm::lp(2), Norm::lp(3), Norm::inf()}) {
      const CenterOracle oracle = optimal_center(pts, rho);
      CHECK(oracle.value ==
            doctest::Approx(objective(pts, {QFlat::point(oracle.center)}, rho)).epsilon(1e-9));
    }
  }
}

TEST_CASE("greedy_center_coreset: single point") {
  const PointSet pts = make_points({{3, 4}});
  const CenterOracle oracle = optimal_center(pts, Norm::lp(2));
  const Coreset coreset = greedy_center_coreset(pts, Norm::lp(2), 0.1, oracle);
  REQUIRE(coreset.indices.size() == 1);
  CHECK(coreset.witness[0] == doctest::Approx(3.0));
}

TEST_CASE("greedy_center_coreset: symmetric pair reaches the midpoint in one step") {
  const PointSet pts = make_points({{0, 0}, {2, 0}});
  const CenterOracle oracle = optimal_center(pts, Norm::lp(2));
  const Coreset coreset = greedy_center_coreset(pts, Norm::lp(2), 0.2, oracle);
  CHECK(coreset.indices == std::vector<int>{0, 1});
  REQUIRE(coreset.trace.size() == 1);
  CHECK(coreset.witness[0] == doctest::Approx(1.0).epsilon(1e-12));
  const double final_cost = objective(pts, {QFlat::point(coreset.witness)}, Norm::lp(2));
  CHECK(final_cost <= (1.0 + 0.2) * oracle.value + 1e-12);
}

TEST_CASE("greedy_center_coreset: contraction, final quality, size on random instances") {
  const double eps = 0.1;
  const double cap = std::ceil((4.0 / eps) * std::log(4.0 / eps));
  CHECK(cap == 148.0);
  for (int seed = 0; seed < 5; ++seed) {
    const PointSet pts = test::gaussian_points(100, 20, 5000 + seed);
    const CenterOracle oracle = optimal_center(pts, Norm::lp(2));
    const Coreset coreset = greedy_center_coreset(pts, Norm::lp(2), eps, oracle);

    CHECK(coreset.indices.size() <=
          static_cast<std::size_t>(cap));
    const double final_cost = objective(pts, {QFlat::point(coreset.witness)}, Norm::lp(2));
    CHECK(final_cost <= (1.0 + eps) * oracle.value * (1.0 + 1e-9));

    // Per-step contraction of the distance to the optimal center.
    int start = 0;
    double best = (pts.point(0) - oracle.center).norm();
    for (Eigen::Index i = 1; i < pts.size(); ++i) {
      const double di = (pts.point(i) - oracle.center).norm();
      if (di < best) {
        best = di;
        start = static_cast<int>(i);
      }
    }
    (void)start;
    double prev = best;
    for (const auto& row : coreset.trace) {
      CHECK(row.center_distance <= (1.0 - eps / 2.0) * prev + 1e-9);
      prev = row.center_distance;
    }
  }
}

TEST_CASE("greedy_center_coreset: witness in the affine hull; works for rho=1 and inf") {
  for (const Norm& rho : {Norm::lp(1), Norm::inf()}) {
    const PointSet pts = test::gaussian_points(40, 8, 6000);
    const CenterOracle oracle = optimal_center(pts, rho);
    const Coreset coreset = greedy_center_coreset(pts, rho, 0.25, oracle);
    const double final_cost = objective(pts, {QFlat::point(coreset.witness)}, rho);
    CHECK(final_cost <= (1.0 + 0.25) * oracle.value * (1.0 + 1e-9));
    CHECK(affine_hull_residual(pts, coreset.indices, coreset.witness) <= 1e-8);
  }
}

TEST_CASE("greedy_center_coreset: all points coincident") {
  const PointSet pts = make_points({{1, 1}, {1, 1}, {1, 1}});
  const CenterOracle oracle = optimal_center(pts, Norm::lp(2));
  const Coreset coreset = greedy_center_coreset(pts, Norm::lp(2), 0.5, oracle);
  CHECK(coreset.indices.size() == 1);
  CHECK((coreset.witness - pts.point(0)).norm() <= 1e-12);
}

TEST_CASE("frank_wolfe_coreset: simplex instance has g(centroid) = n-1") {
  const SimplexInstance simplex(12);
  const PointSet pts = simplex.materialize();
  CHECK(frank_wolfe_objective(pts, pts.centroid()) == doctest::Approx(11.0).epsilon(1e-12));
}

TEST_CASE("frank_wolfe_coreset: two points, one step lands on the centroid") {
  const PointSet pts = make_points({{0, 0}, {2, 0}});
  const Coreset coreset = frank_wolfe_coreset(pts, 0.6);
  CHECK((coreset.witness - pts.centroid()).norm() <= 1e-12);
  CHECK(frank_wolfe_objective(pts, coreset.witness) ==
        doctest::Approx(frank_wolfe_objective(pts, pts.centroid())).epsilon(1e-12));
}

TEST_CASE("frank_wolfe_coreset: gap bound, monotone trace, size, affine hull") {
  const double eps = 0.1;
  for (int seed = 0; seed < 5; ++seed) {
    const PointSet pts = test::gaussian_points(100, 20, 7000 + seed);
    const Coreset coreset = frank_wolfe_coreset(pts, eps);

    // 2*ceil(1/eps) iterates => at most that many distinct vertices.
    CHECK(coreset.indices.size() <= 20);

    const double g_opt = frank_wolfe_objective(pts, pts.centroid());
    const double g_final = frank_wolfe_objective(pts, coreset.witness);
    CHECK(g_final <= (1.0 + 16.0 * eps) * g_opt);

    const double r = meb(pts).radius;
    CHECK(g_final - g_opt <= 16.0 * eps * r * r);

    for (std::size_t i = 1; i < coreset.trace.size(); ++i)
      CHECK(coreset.trace[i].center_distance <=
            coreset.trace[i - 1].center_distance + 1e-9);

    CHECK(affine_hull_residual(pts, coreset.indices, coreset.witness) <= 1e-8);
  }
}

TEST_CASE("frank_wolfe_coreset: simplex instance visits exactly the step budget") {
  const SimplexInstance simplex(100);
  const PointSet pts = simplex.materialize();
  const Coreset coreset = frank_wolfe_coreset(pts, 0.1);
  CHECK(coreset.indices.size() <= 20);
  const double g_opt = frank_wolfe_objective(pts, pts.centroid());
  CHECK(frank_wolfe_objective(pts, coreset.witness) <= (1.0 + 1.6) * g_opt);
}

TEST_CASE("meb_coreset: collinear pair is exact") {
  const PointSet pts = make_points({{0, 0}, {4, 0}});
  const Coreset coreset = meb_coreset(pts, 0.3);
  CHECK(coreset.indices.size() == 2);
  CHECK(coreset.witness[0] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("meb_coreset: regular polygon witness radius within 1.5x") {
  const int n = 16;
  Eigen::MatrixXd m(n, 2);
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / n;
    m(i, 0) = std::cos(a);
    m(i, 1) = std::sin(a);
  }
  const PointSet pts{m};
  const Coreset coreset = meb_coreset(pts, 0.5);
  double witness_radius = 0.0;
  for (int i = 0; i < n; ++i)
    witness_radius = std::max(witness_radius, (pts.point(i) - coreset.witness).norm());
  CHECK(witness_radius <= 1.5 * meb(pts).radius + 1e-12);
  CHECK(coreset.indices.size() <= 4);  // ceil(2/0.5)
}

TEST_CASE("meb_coreset: identical points") {
  const PointSet pts = make_points({{7, 7}, {7, 7}});
  const Coreset coreset = meb_coreset(pts, 0.2);
  CHECK(coreset.indices.size() == 1);
  CHECK((coreset.witness - pts.point(0)).norm() <= 1e-12);
}

TEST_CASE("meb_coreset: random instances meet the guarantee and the size cap") {
  const double eps = 0.2;
  for (int seed = 0; seed < 5; ++seed) {
    const PointSet pts = test::gaussian_points(100, 15, 8000 + seed);
    const Coreset coreset = meb_coreset(pts, eps);
    CHECK(coreset.indices.size() <= static_cast<std::size_t>(std::ceil(2.0 / eps)));
    double witness_radius = 0.0;
    for (Eigen::Index i = 0; i < pts.size(); ++i)
      witness_radius = std::max(witness_radius, (pts.point(i) - coreset.witness).norm());
    CHECK(witness_radius <= (1.0 + eps) * meb(pts).radius * (1.0 + 1e-9));
  }
}

TEST_CASE("simplex_lower_bound: frozen values at n=4, c=2, rho=2") {
  const SimplexLowerBound bound = simplex_lower_bound(4, 2, Norm::lp(2));
  CHECK(bound.delta_o == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(bound.delta_oprime == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(bound.ratio == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-9));

  // Direct coordinate check: distance from o' to an excluded vertex.
  Eigen::VectorXd oprime(4);
  oprime << 0.5, 0.5, 0, 0;
  const SimplexInstance simplex(4);
  CHECK((oprime - simplex.point(2)).norm() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
}

TEST_CASE("simplex_lower_bound: matches objective() on a materialized instance") {
  const SimplexInstance simplex(40);
  const PointSet pts = simplex.materialize();
  const SimplexLowerBound bound = simplex_lower_bound(40, 7, Norm::lp(3));
  Eigen::VectorXd o = Eigen::VectorXd::Constant(40, 1.0 / 40.0);
  Eigen::VectorXd oprime = Eigen::VectorXd::Zero(40);
  oprime.head(7).setConstant(1.0 / 7.0);
  CHECK(objective(pts, {QFlat::point(o)}, Norm::lp(3)) ==
        doctest::Approx(bound.delta_o).epsilon(1e-9));
  CHECK(objective(pts, {QFlat::point(oprime)}, Norm::lp(3)) ==
        doctest::Approx(bound.delta_oprime).epsilon(1e-9));
}

TEST_CASE("simplex_lower_bound: ratio tends to 1 for c = n-1") {
  double prev = std::numeric_limits<double>::infinity();
  for (Eigen::Index n : {8, 32, 128}) {
    const SimplexLowerBound bound = simplex_lower_bound(n, n - 1, Norm::lp(2));
    CHECK(bound.ratio < prev);
    prev = bound.ratio;
  }
  CHECK(prev < 1.01);
}

TEST_CASE("simplex_lower_bound: small spans stay strictly suboptimal") {
  // c < 1/(3 eps) vertices cannot reach (1+eps): the restricted optimum o'
  // keeps a visible gap.
  const SimplexLowerBound bound = simplex_lower_bound(10000, 10, Norm::lp(2));
  CHECK(bound.ratio > 1.0 + 0.02);
}

TEST_CASE("simplex_lower_bound: input validation") {
  CHECK_THROWS_AS(simplex_lower_bound(4, 0, Norm::lp(2)), std::invalid_argument);
  CHECK_THROWS_AS(simplex_lower_bound(4, 4, Norm::lp(2)), std::invalid_argument);
  CHECK_THROWS_AS(simplex_lower_bound(4, 2, Norm::inf()), std::invalid_argument);
}
