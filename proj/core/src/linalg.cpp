#include "projclust/linalg.hpp"

#include <stdexcept>

namespace projclust {

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& V, double tol) {
  const Eigen::Index d = V.rows();
  if (V.cols() == 0) return Eigen::MatrixXd(d, 0);

  double max_norm = 0.0;
  for (Eigen::Index j = 0; j < V.cols(); ++j) max_norm = std::max(max_norm, V.col(j).norm());
  if (max_norm == 0.0) return Eigen::MatrixXd(d, 0);
  const double threshold = tol * max_norm;

  Eigen::MatrixXd Q(d, V.cols());
  Eigen::Index rank = 0;
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    Eigen::VectorXd v = V.col(j);
    // Two MGS sweeps; the second pass removes the residue the first leaves
    // behind when columns are nearly dependent.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (Eigen::Index i = 0; i < rank; ++i) {
        v.noalias() -= Q.col(i) * Q.col(i).dot(v);
      }
    }
    const double nrm = v.norm();
    if (nrm > threshold) {
      Q.col(rank++) = v / nrm;
    }
  }
  return Q.leftCols(rank);
}

Eigen::MatrixXd complete_basis(const Eigen::MatrixXd& basis, Eigen::Index q) {
  const Eigen::Index d = basis.rows();
  if (q > d) throw std::invalid_argument("complete_basis: q exceeds ambient dimension");
  if (basis.cols() >= q) return basis.leftCols(q);

  Eigen::MatrixXd candidates(d, basis.cols() + d);
  candidates.leftCols(basis.cols()) = basis;
  candidates.rightCols(d) = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd full = orthonormal_columns(candidates);
  if (full.cols() < q) throw std::runtime_error("complete_basis: could not reach requested rank");
  return full.leftCols(q);
}

double orthonormality_error(const Eigen::MatrixXd& B) {
  if (B.cols() == 0) return 0.0;
  Eigen::MatrixXd G = B.transpose() * B;
  G -= Eigen::MatrixXd::Identity(B.cols(), B.cols());
  return G.cwiseAbs().maxCoeff();
}

}  // namespace projclust
