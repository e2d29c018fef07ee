#pragma once

#include <Eigen/Dense>

namespace projclust {

// Rank tolerance used by every orthonormalization in the library, relative
// to the largest input column norm.
inline constexpr double kRankTol = 1e-10;

// Orthonormal basis of the column span of V, computed by modified
// Gram-Schmidt with one re-orthogonalization pass. Columns whose residual
// falls below tol * max_column_norm are dropped, so the result has full
// column rank.
Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& V, double tol = kRankTol);

// Extends `basis` (orthonormal columns, d x r) to q columns by appending
// coordinate axes and re-running Gram-Schmidt. Requires q <= d.
Eigen::MatrixXd complete_basis(const Eigen::MatrixXd& basis, Eigen::Index q);

// Max deviation of B^T B from the identity; 0 for a perfectly orthonormal B.
double orthonormality_error(const Eigen::MatrixXd& B);

}  // namespace projclust
