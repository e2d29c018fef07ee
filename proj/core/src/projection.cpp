#include "projclust/projection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "projclust/linalg.hpp"
#include "projclust/rng.hpp"

namespace projclust {
namespace {

constexpr std::uint64_t kMatrixStream = 0;
constexpr std::uint64_t kSubspaceSalt = 0x5350414eull;  // "SPAN"
constexpr std::uint64_t kFlatSalt = 0x464c4154ull;      // "FLAT"

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1)");
}

}  // namespace

ProjectionMap::ProjectionMap(Eigen::Index d, Eigen::Index m, std::uint64_t seed,
                             Eigen::MatrixXd matrix)
    : d_(d), m_(m), seed_(seed), matrix_(std::move(matrix)) {
  if (m_ < 1 || m_ > d_) throw std::invalid_argument("ProjectionMap: need 1 <= m <= d");
  if (matrix_.rows() != m_ || matrix_.cols() != d_)
    throw std::invalid_argument("ProjectionMap: matrix shape mismatch");
  Eigen::MatrixXd rows = matrix_.transpose() / scale();
  if (orthonormality_error(rows) > 1e-9)
    throw std::invalid_argument("ProjectionMap: rows not orthonormal after unscaling");
}

double ProjectionMap::scale() const {
  return std::sqrt(static_cast<double>(d_) / static_cast<double>(m_));
}

Eigen::VectorXd ProjectionMap::apply(const Eigen::VectorXd& v) const {
  if (v.size() != d_) throw std::invalid_argument("ProjectionMap::apply: dimension mismatch");
  return matrix_ * v;
}

QFlat ProjectionMap::apply(const QFlat& flat) const {
  Eigen::VectorXd anchor = apply(flat.anchor());
  if (flat.q() == 0) return QFlat::point(std::move(anchor));
  return QFlat::from_directions(std::move(anchor), matrix_ * flat.basis());
}

Eigen::Index jl_dimension(Eigen::Index n, double epsilon) {
  if (n < 2) throw std::invalid_argument("jl_dimension: need n >= 2");
  check_epsilon(epsilon);
  return static_cast<Eigen::Index>(
      std::ceil(36.0 * std::log(static_cast<double>(n)) / (epsilon * epsilon)));
}

Eigen::Index subspace_dimension(Eigen::Index n, Eigen::Index c, double epsilon, double lambda) {
  if (n < 2) throw std::invalid_argument("subspace_dimension: need n >= 2");
  if (c < 1) throw std::invalid_argument("subspace_dimension: need c >= 1");
  if (lambda <= 0.0) throw std::invalid_argument("subspace_dimension: need lambda > 0");
  check_epsilon(epsilon);
  return static_cast<Eigen::Index>(std::ceil(
      lambda * static_cast<double>(c) * std::log(static_cast<double>(n)) / (epsilon * epsilon)));
}

double coreset_size_bound(Eigen::Index q, double epsilon, double coreset_constant) {
  if (q < 0) throw std::invalid_argument("coreset_size_bound: need q >= 0");
  if (coreset_constant <= 0.0) throw std::invalid_argument("coreset_size_bound: need constant > 0");
  check_epsilon(epsilon);
  const double q1 = static_cast<double>(q) + 1.0;
  return coreset_constant * q1 * q1 * (2.0 / epsilon) *
         std::log(2.0 * q1 / epsilon + std::exp(1.0));
}

Eigen::Index projective_dimension(const DimensionBudget& budget) {
  if (budget.n < 2) throw std::invalid_argument("projective_dimension: need n >= 2");
  if (budget.lambda <= 0.0) throw std::invalid_argument("projective_dimension: need lambda > 0");
  check_epsilon(budget.epsilon);
  const double c = coreset_size_bound(budget.q, budget.epsilon, budget.coreset_constant);
  return static_cast<Eigen::Index>(
      std::ceil(budget.lambda * c * std::log(static_cast<double>(budget.n)) /
                (budget.epsilon * budget.epsilon)));
}

ProjectionMap make_projection(Eigen::Index d, Eigen::Index m, std::uint64_t seed) {
  if (m < 1 || m > d) throw std::invalid_argument("make_projection: need 1 <= m <= d");
  CounterRng rng(seed, kMatrixStream);

  // Gaussian rows orthonormalized give a rotation-invariant (Haar) subspace.
  // Kept as columns while orthonormalizing, transposed at the end.
  Eigen::MatrixXd cols(d, m);
  Eigen::MatrixXd q(d, 0);
  while (q.cols() < m) {
    for (Eigen::Index j = 0; j < cols.cols(); ++j)
      for (Eigen::Index i = 0; i < d; ++i) cols(i, j) = rng.normal();
    Eigen::MatrixXd joined(d, q.cols() + cols.cols());
    joined << q, cols;
    q = orthonormal_columns(joined);
    if (q.cols() > m) q = q.leftCols(m);
    cols.resize(d, m - q.cols());  // redraw only the missing rank, if any
  }
  const double scale = std::sqrt(static_cast<double>(d) / static_cast<double>(m));
  return ProjectionMap(d, m, seed, scale * q.transpose());
}

PointSet project(const PointSet& points, const ProjectionMap& map) {
  if (points.dim() != map.source_dim()) throw std::invalid_argument("project: dimension mismatch");
  return PointSet(points.data() * map.matrix().transpose());
}

DistortionReport verify_pairwise_distortion(const PointSet& points, const ProjectionMap& map,
                                            double epsilon) {
  const PointSet image = project(points, map);
  DistortionReport report;
  report.max_expansion = 0.0;
  report.max_contraction = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    for (Eigen::Index j = i + 1; j < points.size(); ++j) {
      const double src = (points.point(i) - points.point(j)).squaredNorm();
      if (src == 0.0) {
        ++report.skipped;
        continue;
      }
      const double img = (image.point(i) - image.point(j)).squaredNorm();
      const double ratio = img / src;
      report.max_expansion = std::max(report.max_expansion, ratio);
      report.max_contraction = std::min(report.max_contraction, ratio);
      ++report.checked;
    }
  }
  if (report.checked == 0) {
    report.max_expansion = report.max_contraction = 1.0;
  }
  report.pass = report.max_contraction >= 1.0 - epsilon && report.max_expansion <= 1.0 + epsilon;
  return report;
}

namespace {

// Accumulates one trial's ratios into a slot; slots are merged in trial
// order afterwards.
struct TrialSlot {
  double max_ratio = 0.0;
  double min_ratio = std::numeric_limits<double>::infinity();
  std::size_t checked = 0;
  std::size_t skipped = 0;
};

DistortionReport merge_slots(const std::vector<TrialSlot>& slots, double epsilon) {
  DistortionReport report;
  report.max_expansion = 0.0;
  report.max_contraction = std::numeric_limits<double>::infinity();
  for (const TrialSlot& slot : slots) {
    report.max_expansion = std::max(report.max_expansion, slot.max_ratio);
    report.max_contraction = std::min(report.max_contraction, slot.min_ratio);
    report.checked += slot.checked;
    report.skipped += slot.skipped;
  }
  if (report.checked == 0) {
    report.max_expansion = report.max_contraction = 1.0;
  }
  report.pass = report.max_contraction >= 1.0 - epsilon && report.max_expansion <= 1.0 + epsilon;
  return report;
}

}  // namespace

DistortionReport verify_subspace_distortion(const PointSet& points, const ProjectionMap& map,
                                            Eigen::Index c, double epsilon, std::size_t trials,
                                            std::uint64_t seed, std::size_t pairs_per_subset,
                                            unsigned threads) {
  if (c < 1 || c > points.size())
    throw std::invalid_argument("verify_subspace_distortion: need 1 <= c <= n");
  std::vector<TrialSlot> slots(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    TrialSlot& slot = slots[t];
    CounterRng rng(seed, CounterRng::derive_stream(1 + t, kSubspaceSalt));
    const std::vector<int> subset = rng.sample_indices(static_cast<std::size_t>(points.size()),
                                                       static_cast<std::size_t>(c));
    const Eigen::MatrixXd basis = span_basis(points, subset);
    if (basis.cols() == 0) {
      ++slot.skipped;
      return;
    }
    for (std::size_t pair = 0; pair < pairs_per_subset; ++pair) {
      Eigen::VectorXd a(basis.cols()), b(basis.cols());
      for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = rng.normal();
      for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = rng.normal();
      const Eigen::VectorXd w = basis * (a - b);
      const double src = w.norm();
      if (src < 1e-12) {
        ++slot.skipped;
        continue;
      }
      const double ratio = map.apply(w).norm() / src;
      slot.max_ratio = std::max(slot.max_ratio, ratio);
      slot.min_ratio = std::min(slot.min_ratio, ratio);
      ++slot.checked;
    }
  });
  return merge_slots(slots, epsilon);
}

DistortionReport verify_flat_distance_distortion(const PointSet& points, const ProjectionMap& map,
                                                 Eigen::Index c, Eigen::Index q, double epsilon,
                                                 std::size_t trials, std::uint64_t seed) {
  if (q < 0 || q >= c) throw std::invalid_argument("verify_flat_distance_distortion: need 0 <= q < c");
  if (c > points.size()) throw std::invalid_argument("verify_flat_distance_distortion: need c <= n");
  const PointSet image = project(points, map);
  DistortionReport report;
  report.max_expansion = 0.0;
  report.max_contraction = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, CounterRng::derive_stream(1 + t, kFlatSalt));
    const std::vector<int> subset = rng.sample_indices(static_cast<std::size_t>(points.size()),
                                                       static_cast<std::size_t>(c));
    const Eigen::MatrixXd basis = span_basis(points, subset);
    if (basis.cols() < q) {
      ++report.skipped;
      continue;
    }
    Eigen::VectorXd a(basis.cols());
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = rng.normal();
    Eigen::MatrixXd dirs(basis.cols(), q);
    for (Eigen::Index j = 0; j < q; ++j)
      for (Eigen::Index i = 0; i < dirs.rows(); ++i) dirs(i, j) = rng.normal();
    const QFlat flat = QFlat::from_directions(basis * a, basis * dirs);
    const QFlat image_flat = map.apply(flat);
    for (Eigen::Index i = 0; i < points.size(); ++i) {
      const double src = point_to_flat_distance(points.point(i), flat);
      if (src < 1e-12) {
        ++report.skipped;
        continue;
      }
      const double ratio = point_to_flat_distance(image.point(i), image_flat) / src;
      report.max_expansion = std::max(report.max_expansion, ratio);
      report.max_contraction = std::min(report.max_contraction, ratio);
      ++report.checked;
    }
  }
  if (report.checked == 0) {
    report.max_expansion = report.max_contraction = 1.0;
  }
  report.pass = report.max_contraction >= 1.0 - epsilon && report.max_expansion <= 1.0 + epsilon;
  return report;
}

}  // namespace projclust
