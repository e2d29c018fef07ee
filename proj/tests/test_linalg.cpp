#include <doctest.h>

#include "projclust/linalg.hpp"
#include "projclust/rng.hpp"

using namespace projclust;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

}  // namespace

TEST_CASE("orthonormal_columns: random full-rank input") {
  for (int seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXd V = random_matrix(20, 8, seed);
    const Eigen::MatrixXd Q = orthonormal_columns(V);
    REQUIRE(Q.cols() == 8);
    CHECK(orthonormality_error(Q) < 1e-12);
    // Same span: V projects onto Q losslessly.
    CHECK((V - Q * (Q.transpose() * V)).norm() < 1e-9 * V.norm());
  }
}

TEST_CASE("orthonormal_columns: detects rank deficiency") {
  Eigen::MatrixXd V = random_matrix(10, 3, 77);
  Eigen::MatrixXd dependent(10, 5);
  dependent << V, V.col(0) + V.col(1), 2.0 * V.col(2);
  const Eigen::MatrixXd Q = orthonormal_columns(dependent);
  CHECK(Q.cols() == 3);
  CHECK(orthonormality_error(Q) < 1e-12);
}

TEST_CASE("orthonormal_columns: zero matrix yields empty basis") {
  CHECK(orthonormal_columns(Eigen::MatrixXd::Zero(4, 3)).cols() == 0);
}

TEST_CASE("orthonormal_columns: near-dependent columns stay orthonormal") {
  Eigen::MatrixXd V = random_matrix(30, 2, 99);
  Eigen::MatrixXd tricky(30, 3);
  tricky << V.col(0), V.col(0) + 1e-7 * V.col(1), V.col(1);
  const Eigen::MatrixXd Q = orthonormal_columns(tricky);
  CHECK(orthonormality_error(Q) < 1e-12);
}

TEST_CASE("complete_basis: extends a partial basis to q columns") {
  const Eigen::MatrixXd partial = orthonormal_columns(random_matrix(6, 2, 5));
  const Eigen::MatrixXd full = complete_basis(partial, 5);
  REQUIRE(full.cols() == 5);
  CHECK(orthonormality_error(full) < 1e-12);
  CHECK((full.leftCols(2) - partial).norm() < 1e-12);
}

TEST_CASE("complete_basis: q beyond ambient dimension rejected") {
  const Eigen::MatrixXd partial(3, 0);
  CHECK_THROWS_AS(complete_basis(partial, 4), std::invalid_argument);
}
