#include <doctest.h>

#include <cmath>

#include "projclust/geometry.hpp"
#include "projclust/rng.hpp"
#include "support/oracles.hpp"

using namespace projclust;

namespace {

PointSet make_points(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> data;
  for (const auto& r : rows) data.emplace_back(r);
  return PointSet::from_rows(data);
}

}  // namespace

TEST_CASE("point_to_flat_distance: coordinate plane") {
  Eigen::VectorXd p(3);
  p << 0, 0, 1;
  Eigen::MatrixXd basis(3, 2);
  basis << 1, 0, 0, 1, 0, 0;
  QFlat plane(Eigen::VectorXd::Zero(3), basis);
  CHECK(point_to_flat_distance(p, plane) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("point_to_flat_distance: 3-4-5 to a point") {
  Eigen::VectorXd p(2);
  p << 3, 4;
  QFlat origin = QFlat::point(Eigen::VectorXd::Zero(2));
  CHECK(point_to_flat_distance(p, origin) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("point_to_flat_distance: line through origin, residual (0,1,1)") {
  Eigen::VectorXd p(3);
  p << 1, 1, 1;
  Eigen::MatrixXd dir(3, 1);
  dir << 1, 0, 0;
  QFlat line(Eigen::VectorXd::Zero(3), dir);
  CHECK(point_to_flat_distance(p, line) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("point_to_flat_distance: dimension mismatch rejected") {
  Eigen::VectorXd p(3);
  p << 1, 1, 1;
  QFlat origin = QFlat::point(Eigen::VectorXd::Zero(2));
  CHECK_THROWS_AS(point_to_flat_distance(p, origin), std::invalid_argument);
}

TEST_CASE("distance never exceeds distance to random points on the flat") {
  CounterRng rng(7, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const PointSet cloud = test::gaussian_points(6, 5, 100 + trial);
    const QFlat flat = test::random_qflat(cloud, 2, rng);
    Eigen::VectorXd p(5);
    for (Eigen::Index i = 0; i < 5; ++i) p[i] = rng.normal();
    const double dist = point_to_flat_distance(p, flat);
    for (int s = 0; s < 10; ++s) {
      const Eigen::VectorXd x = test::random_point_on_flat(flat, rng);
      CHECK(dist <= (p - x).norm() + 1e-9);
    }
  }
}

TEST_CASE("objective: symmetric pair") {
  const PointSet pts = make_points({{0, 0}, {2, 0}});
  Eigen::VectorXd mid(2);
  mid << 1, 0;
  std::vector<QFlat> flats{QFlat::point(mid)};
  CHECK(objective(pts, flats, Norm::lp(2)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(objective(pts, flats, Norm::inf()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("objective: two clusters under the max norm") {
  const PointSet pts = make_points({{0, 0}, {1, 0}, {10, 0}, {11, 0}});
  Eigen::VectorXd a(2), b(2);
  a << 0.5, 0;
  b << 10.5, 0;
  std::vector<QFlat> flats{QFlat::point(a), QFlat::point(b)};
  CHECK(objective(pts, flats, Norm::inf()) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("objective: empty flat list rejected") {
  const PointSet pts = make_points({{0, 0}});
  CHECK_THROWS_AS(objective(pts, {}, Norm::lp(2)), std::invalid_argument);
}

TEST_CASE("objective: rho=64 approximates rho=inf") {
  for (int seed = 0; seed < 5; ++seed) {
    const PointSet pts = test::gaussian_points(16, 4, 500 + seed);
    const QFlat center = QFlat::point(pts.centroid());
    const double v_inf = objective(pts, {center}, Norm::inf());
    const double v_64 = objective(pts, {center}, Norm::lp(64));
    CHECK(std::abs(v_64 - v_inf) <= 0.1 * v_inf);
  }
}

TEST_CASE("meb: antipodal pair") {
  const Ball ball = meb(make_points({{-1, 0}, {1, 0}}));
  CHECK(ball.radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ball.center.norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("meb: unit equilateral triangle has circumradius 1/sqrt(3)") {
  const PointSet pts = make_points({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}});
  CHECK(meb(pts).radius == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("meb: single point") {
  const Ball ball = meb(make_points({{5, 5}}));
  CHECK(ball.radius == 0.0);
  CHECK(ball.center[0] == doctest::Approx(5.0));
}

TEST_CASE("meb: matches subset-enumeration oracle on random instances") {
  for (int seed = 0; seed < 10; ++seed) {
    const PointSet pts = test::gaussian_points(7, 3, 900 + seed);
    const Ball fast = meb(pts);
    const Ball slow = test::oracle_meb(pts);
    CHECK(fast.radius == doctest::Approx(slow.radius).epsilon(1e-8));
  }
}

TEST_CASE("meb: radius equals max distance; no smaller perturbed ball encloses") {
  CounterRng rng(11, 2);
  for (int seed = 0; seed < 5; ++seed) {
    const PointSet pts = test::gaussian_points(40, 6, 1400 + seed);
    const Ball ball = meb(pts);
    double max_dist = 0.0;
    for (Eigen::Index i = 0; i < pts.size(); ++i)
      max_dist = std::max(max_dist, (pts.point(i) - ball.center).norm());
    CHECK(ball.radius == doctest::Approx(max_dist).epsilon(1e-9));

    const double shrunk = ball.radius - 1e-6;
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd center = ball.center;
      for (Eigen::Index i = 0; i < center.size(); ++i) center[i] += 1e-4 * rng.normal();
      bool encloses = true;
      for (Eigen::Index i = 0; i < pts.size() && encloses; ++i)
        encloses = (pts.point(i) - center).norm() <= shrunk;
      CHECK_FALSE(encloses);
    }
  }
}

TEST_CASE("meb: iterative path agrees with oracle at moderate dimension") {
  // d > 10 exercises the core-refinement branch.
  for (int seed = 0; seed < 3; ++seed) {
    const PointSet pts = test::gaussian_points(60, 15, 2000 + seed);
    const Ball ball = meb(pts);
    // Witness optimality: radius within 1e-6 of any candidate from the
    // two-point/three-point oracle cannot be computed here; instead check
    // enclosure plus local optimality against coordinate perturbations.
    double max_dist = 0.0;
    for (Eigen::Index i = 0; i < pts.size(); ++i)
      max_dist = std::max(max_dist, (pts.point(i) - ball.center).norm());
    CHECK(ball.radius == doctest::Approx(max_dist).epsilon(1e-12));
    CounterRng rng(33, seed);
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd center = ball.center;
      for (Eigen::Index i = 0; i < center.size(); ++i) center[i] += 1e-3 * rng.normal();
      double worst = 0.0;
      for (Eigen::Index i = 0; i < pts.size(); ++i)
        worst = std::max(worst, (pts.point(i) - center).norm());
      CHECK(worst >= ball.radius * (1.0 - 1e-6));
    }
  }
}

TEST_CASE("meb: all points identical") {
  const PointSet pts = make_points({{2, 3}, {2, 3}, {2, 3}});
  const Ball ball = meb(pts);
  CHECK(ball.radius == 0.0);
  CHECK(ball.center[1] == doctest::Approx(3.0));
}

TEST_CASE("best_fit_flat_l2: q=0 is the centroid") {
  const PointSet pts = make_points({{0, 0}, {2, 0}});
  const QFlat flat = best_fit_flat_l2(pts, 0);
  CHECK(flat.anchor()[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(flat.anchor()[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("best_fit_flat_l2: collinear points give a zero-residual line") {
  const PointSet pts = make_points({{0, 0}, {1, 1}, {2, 2}});
  const QFlat flat = best_fit_flat_l2(pts, 1);
  CHECK(objective(pts, {flat}, Norm::lp(2)) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(flat.anchor()[0] == doctest::Approx(1.0));
  CHECK(std::abs(flat.basis()(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("best_fit_flat_l2: unit square corners, q=1 objective is 1") {
  const PointSet pts = make_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const QFlat flat = best_fit_flat_l2(pts, 1);
  CHECK(objective(pts, {flat}, Norm::lp(2)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("best_fit_flat_l2: q >= d rejected") {
  const PointSet pts = make_points({{0, 0}, {1, 1}});
  CHECK_THROWS_AS(best_fit_flat_l2(pts, 2), std::invalid_argument);
}

TEST_CASE("best_fit_flat_l2: objective squared equals scatter eigenvalue tail") {
  for (int seed = 0; seed < 5; ++seed) {
    const PointSet pts = test::gaussian_points(12, 5, 1700 + seed);
    for (Eigen::Index q = 0; q <= 3; ++q) {
      const QFlat flat = best_fit_flat_l2(pts, q);
      const double obj = objective(pts, {flat}, Norm::lp(2));
      Eigen::MatrixXd centered = pts.data().rowwise() - pts.centroid().transpose();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(centered.transpose() * centered);
      double tail = 0.0;  // eigenvalues ascending: the d-q smallest
      for (Eigen::Index i = 0; i < pts.dim() - q; ++i) tail += es.eigenvalues()[i];
      CHECK(obj * obj == doctest::Approx(tail).epsilon(1e-6));
    }
  }
}

TEST_CASE("best_fit_flat_l2: no worse than 100 random flats") {
  CounterRng rng(5, 9);
  const PointSet pts = test::gaussian_points(15, 4, 2500);
  for (Eigen::Index q = 0; q <= 2; ++q) {
    const double best = objective(pts, {best_fit_flat_l2(pts, q)}, Norm::lp(2));
    for (int trial = 0; trial < 100; ++trial) {
      const QFlat rand_flat = test::random_qflat(pts, q, rng);
      CHECK(best <= objective(pts, {rand_flat}, Norm::lp(2)) + 1e-9);
    }
  }
}

TEST_CASE("best_fit_flat_l2: identical points complete the basis from axes") {
  const PointSet pts = make_points({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
  const QFlat flat = best_fit_flat_l2(pts, 2);
  CHECK(flat.q() == 2);
  CHECK(point_to_flat_distance(pts.point(0), flat) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("span_basis: single point normalizes") {
  const PointSet pts = make_points({{2, 0}});
  const std::vector<int> idx{0};
  const Eigen::MatrixXd basis = span_basis(pts, idx);
  REQUIRE(basis.cols() == 1);
  CHECK(basis(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("span_basis: collinear-with-origin points give rank 1") {
  const PointSet pts = make_points({{1, 0}, {2, 0}});
  const std::vector<int> idx{0, 1};
  CHECK(span_basis(pts, idx).cols() == 1);
}

TEST_CASE("span_basis: two independent points span the plane") {
  const PointSet pts = make_points({{1, 0, 0}, {0, 3, 0}});
  const std::vector<int> idx{0, 1};
  const Eigen::MatrixXd basis = span_basis(pts, idx);
  REQUIRE(basis.cols() == 2);
  for (Eigen::Index j = 0; j < 2; ++j) CHECK(basis(2, j) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Norm: parsing") {
  CHECK(Norm::parse("2").p() == 2);
  CHECK(Norm::parse("inf").is_inf());
  CHECK_THROWS_AS(Norm::parse("0"), std::invalid_argument);
  CHECK_THROWS_AS(Norm::parse("two"), std::invalid_argument);
}
