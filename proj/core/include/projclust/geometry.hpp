#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace projclust {

// An ordered list of n points in d coordinates, rows = points. Point ids are
// the row indices 0..n-1 and stay stable across every operation that
// reorders, subsets or projects.
class PointSet {
 public:
  explicit PointSet(Eigen::MatrixXd points);
  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  Eigen::Index size() const { return points_.rows(); }
  Eigen::Index dim() const { return points_.cols(); }
  Eigen::VectorXd point(Eigen::Index i) const { return points_.row(i).transpose(); }
  const Eigen::MatrixXd& data() const { return points_; }

  // Sub-point-set; row i of the result is points_[indices[i]].
  PointSet subset(std::span<const int> indices) const;

  Eigen::VectorXd centroid() const { return points_.colwise().mean().transpose(); }

 private:
  Eigen::MatrixXd points_;
};

// The L_rho aggregation norm: a positive integer order or infinity.
class Norm {
 public:
  static Norm lp(int p);
  static Norm inf() { return Norm(true, 0); }

  bool is_inf() const { return is_inf_; }
  int p() const { return p_; }

  // Accepts a positive integer or the token "inf".
  static Norm parse(const std::string& text);
  std::string str() const;

  friend bool operator==(const Norm& a, const Norm& b) {
    return a.is_inf_ == b.is_inf_ && a.p_ == b.p_;
  }

 private:
  Norm(bool inf, int p) : is_inf_(inf), p_(p) {}
  bool is_inf_;
  int p_;
};

// An affine q-flat: anchor point plus q orthonormal direction columns.
// q = 0 (empty basis) is a point.
class QFlat {
 public:
  // Requires basis columns orthonormal within 1e-9 and q < d.
  QFlat(Eigen::VectorXd anchor, Eigen::MatrixXd basis);

  // Builds a flat from raw (possibly dependent) direction vectors by
  // orthonormalizing them; rank deficiency lowers q.
  static QFlat from_directions(Eigen::VectorXd anchor, const Eigen::MatrixXd& raw_directions);

  // Point; no directions.
  static QFlat point(Eigen::VectorXd anchor);

  Eigen::Index dim() const { return anchor_.size(); }
  Eigen::Index q() const { return basis_.cols(); }
  const Eigen::VectorXd& anchor() const { return anchor_; }
  const Eigen::MatrixXd& basis() const { return basis_; }

  // Orthogonal projection of p onto the flat.
  Eigen::VectorXd project_point(const Eigen::VectorXd& p) const;

 private:
  Eigen::VectorXd anchor_;
  Eigen::MatrixXd basis_;
};

struct Ball {
  Eigen::VectorXd center;
  double radius = 0.0;
};

// Euclidean distance from p to the affine flat F.
double point_to_flat_distance(const Eigen::VectorXd& p, const QFlat& flat);

// Nearest flat index for a point, lowest index on ties.
int nearest_flat(const Eigen::VectorXd& p, const std::vector<QFlat>& flats);

// The projective-clustering cost of a candidate flat set:
// (sum_p min_F d(p,F)^rho)^(1/rho), or max_p min_F d(p,F) for rho = inf.
// Summation is in point order, so the value is bit-stable.
double objective(const PointSet& points, const std::vector<QFlat>& flats, const Norm& rho);

// Per-point nearest-flat assignment (lowest index ties).
std::vector<int> assign_to_flats(const PointSet& points, const std::vector<QFlat>& flats);

// Exact minimum enclosing ball. Combinatorial (Welzl) after reduction to the
// affine hull when the effective dimension is small; farthest-point core-set
// refinement with exact sub-solves otherwise. The returned radius is the max
// distance from the returned center to any input point.
Ball meb(const PointSet& points);

// Exact MEB of a subset of the points addressed by row indices.
Ball meb_of_subset(const PointSet& points, std::span<const int> indices);

// Affine q-flat minimizing the sum of squared distances: anchor at the
// centroid, basis = top-q principal directions. Degenerate spectra are
// completed from coordinate axes.
QFlat best_fit_flat_l2(const PointSet& points, Eigen::Index q);

// Orthonormal basis of the linear span of the selected points.
Eigen::MatrixXd span_basis(const PointSet& points, std::span<const int> indices);

}  // namespace projclust
