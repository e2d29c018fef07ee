#include "projclust/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "projclust/linalg.hpp"

namespace projclust {

PointSet::PointSet(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.rows() < 1) throw std::invalid_argument("PointSet: need at least one point");
  if (points_.cols() < 1) throw std::invalid_argument("PointSet: need dimension >= 1");
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("PointSet: need at least one point");
  const std::size_t d = rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) throw std::invalid_argument("PointSet: ragged rows");
    for (std::size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return PointSet(std::move(m));
}

PointSet PointSet::subset(std::span<const int> indices) const {
  if (indices.empty()) throw std::invalid_argument("PointSet::subset: empty index list");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(indices.size()), dim());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= size()) throw std::invalid_argument("PointSet::subset: index out of range");
    m.row(static_cast<Eigen::Index>(i)) = points_.row(indices[i]);
  }
  return PointSet(std::move(m));
}

Norm Norm::lp(int p) {
  if (p < 1) throw std::invalid_argument("Norm: rho must be >= 1");
  return Norm(false, p);
}

Norm Norm::parse(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return Norm::inf();
  std::size_t pos = 0;
  int p = 0;
  try {
    p = std::stoi(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("Norm: cannot parse '" + text + "'");
  }
  if (pos != text.size()) throw std::invalid_argument("Norm: cannot parse '" + text + "'");
  return Norm::lp(p);
}

std::string Norm::str() const { return is_inf_ ? "inf" : std::to_string(p_); }

QFlat::QFlat(Eigen::VectorXd anchor, Eigen::MatrixXd basis)
    : anchor_(std::move(anchor)), basis_(std::move(basis)) {
  if (basis_.size() > 0 && basis_.rows() != anchor_.size())
    throw std::invalid_argument("QFlat: basis/anchor dimension mismatch");
  if (basis_.size() == 0) basis_.resize(anchor_.size(), 0);
  if (basis_.cols() >= anchor_.size())
    throw std::invalid_argument("QFlat: q must be < d");
  if (orthonormality_error(basis_) > 1e-9)
    throw std::invalid_argument("QFlat: basis not orthonormal within 1e-9");
}

QFlat QFlat::from_directions(Eigen::VectorXd anchor, const Eigen::MatrixXd& raw_directions) {
  return QFlat(std::move(anchor), orthonormal_columns(raw_directions));
}

QFlat QFlat::point(Eigen::VectorXd anchor) {
  const Eigen::Index d = anchor.size();
  return QFlat(std::move(anchor), Eigen::MatrixXd(d, 0));
}

Eigen::VectorXd QFlat::project_point(const Eigen::VectorXd& p) const {
  Eigen::VectorXd r = p - anchor_;
  if (basis_.cols() == 0) return anchor_;
  return anchor_ + basis_ * (basis_.transpose() * r);
}

double point_to_flat_distance(const Eigen::VectorXd& p, const QFlat& flat) {
  if (p.size() != flat.dim()) throw std::invalid_argument("point_to_flat_distance: dimension mismatch");
  Eigen::VectorXd r = p - flat.anchor();
  if (flat.q() > 0) r.noalias() -= flat.basis() * (flat.basis().transpose() * r);
  return r.norm();
}

int nearest_flat(const Eigen::VectorXd& p, const std::vector<QFlat>& flats) {
  if (flats.empty()) throw std::invalid_argument("nearest_flat: empty flat list");
  int best = 0;
  double best_dist = point_to_flat_distance(p, flats[0]);
  for (std::size_t j = 1; j < flats.size(); ++j) {
    const double dj = point_to_flat_distance(p, flats[j]);
    if (dj < best_dist) {
      best_dist = dj;
      best = static_cast<int>(j);
    }
  }
  return best;
}

std::vector<int> assign_to_flats(const PointSet& points, const std::vector<QFlat>& flats) {
  std::vector<int> assignment(static_cast<std::size_t>(points.size()));
  for (Eigen::Index i = 0; i < points.size(); ++i)
    assignment[static_cast<std::size_t>(i)] = nearest_flat(points.point(i), flats);
  return assignment;
}

double objective(const PointSet& points, const std::vector<QFlat>& flats, const Norm& rho) {
  if (flats.empty()) throw std::invalid_argument("objective: empty flat list");
  for (const QFlat& f : flats)
    if (f.dim() != points.dim()) throw std::invalid_argument("objective: flat dimension mismatch");

  const Eigen::Index n = points.size();
  std::vector<double> dist(static_cast<std::size_t>(n));
  double dmax = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd p = points.point(i);
    double di = std::numeric_limits<double>::infinity();
    for (const QFlat& f : flats) di = std::min(di, point_to_flat_distance(p, f));
    dist[static_cast<std::size_t>(i)] = di;
    dmax = std::max(dmax, di);
  }
  if (rho.is_inf()) return dmax;
  if (dmax == 0.0) return 0.0;

  // Scale by the max distance so that d^rho cannot overflow for large rho.
  const double p = static_cast<double>(rho.p());
  double acc = 0.0;
  for (double di : dist) acc += std::pow(di / dmax, p);
  return dmax * std::pow(acc, 1.0 / p);
}

QFlat best_fit_flat_l2(const PointSet& points, Eigen::Index q) {
  const Eigen::Index d = points.dim();
  if (q < 0 || q >= d) throw std::invalid_argument("best_fit_flat_l2: need 0 <= q < d");

  Eigen::VectorXd center = points.centroid();
  if (q == 0) return QFlat::point(std::move(center));

  Eigen::MatrixXd centered = points.data().rowwise() - center.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::Index r = std::min(q, svd.matrixV().cols());
  Eigen::MatrixXd basis = svd.matrixV().leftCols(r);
  if (r < q) basis = complete_basis(basis, q);
  return QFlat(std::move(center), std::move(basis));
}

Eigen::MatrixXd span_basis(const PointSet& points, std::span<const int> indices) {
  Eigen::MatrixXd cols(points.dim(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= points.size())
      throw std::invalid_argument("span_basis: index out of range");
    cols.col(static_cast<Eigen::Index>(i)) = points.point(indices[i]);
  }
  return orthonormal_columns(cols);
}

}  // namespace projclust
