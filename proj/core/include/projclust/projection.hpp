#pragma once

#include <cstdint>
#include <Eigen/Dense>

#include "projclust/geometry.hpp"

namespace projclust {

// Seeded random scaled orthogonal projection R^d -> R^m. The stored matrix
// is sqrt(d/m) * Q where Q has orthonormal rows spanning a uniformly random
// (Haar) m-dimensional subspace. Immutable and shareable once built.
class ProjectionMap {
 public:
  // Validates m <= d and row orthonormality (after unscaling) within 1e-9.
  ProjectionMap(Eigen::Index d, Eigen::Index m, std::uint64_t seed, Eigen::MatrixXd matrix);

  Eigen::Index source_dim() const { return d_; }
  Eigen::Index target_dim() const { return m_; }
  std::uint64_t seed() const { return seed_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  double scale() const;  // sqrt(d/m)

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

  // Image flat: anchor and directions projected, directions re-orthonormalized.
  QFlat apply(const QFlat& flat) const;

 private:
  Eigen::Index d_;
  Eigen::Index m_;
  std::uint64_t seed_;
  Eigen::MatrixXd matrix_;  // m x d
};

// Inputs for the dimension formula: instance size n, flat dimension q,
// accuracy epsilon, the aggregation norm, and the two tuning constants the
// asymptotic statements leave open.
struct DimensionBudget {
  Eigen::Index n = 2;
  Eigen::Index q = 0;
  double epsilon = 0.5;
  Norm rho = Norm::lp(2);
  double lambda = 1.0;
  double coreset_constant = 1.0;
};

// Pairwise-distance dimension: ceil(36 ln(n) / eps^2). Requires n >= 2 and
// 0 < eps < 1.
Eigen::Index jl_dimension(Eigen::Index n, double epsilon);

// Subspace-embedding dimension for spans of c-point subsets:
// ceil(lambda * c * ln(n) / eps^2).
Eigen::Index subspace_dimension(Eigen::Index n, Eigen::Index c, double epsilon, double lambda = 1.0);

// Concrete coreset-size surrogate C(q, eps/2) used by projective_dimension:
// coreset_constant * (q+1)^2 * (2/eps) * ln(2(q+1)/eps + e).
double coreset_size_bound(Eigen::Index q, double epsilon, double coreset_constant = 1.0);

// Target dimension preserving the clustering objective for every k and rho:
// ceil(lambda * C(q, eps/2) * ln(n) / eps^2). Not clamped; callers clamp to d.
Eigen::Index projective_dimension(const DimensionBudget& budget);

// Draws an m x d matrix of iid standard normals from the seed, orthonormalizes
// the rows (modified Gram-Schmidt), scales by sqrt(d/m). Deterministic.
ProjectionMap make_projection(Eigen::Index d, Eigen::Index m, std::uint64_t seed);

// Image point set, order and ids preserved.
PointSet project(const PointSet& points, const ProjectionMap& map);

struct DistortionReport {
  double max_expansion = 1.0;    // largest observed ratio
  double max_contraction = 1.0;  // smallest observed ratio
  bool pass = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // degenerate cases (zero distance)
};

// All n(n-1)/2 pairs; ratios are squared distances per the pairwise
// embedding guarantee. Pass iff every ratio lies in [1-eps, 1+eps].
DistortionReport verify_pairwise_distortion(const PointSet& points, const ProjectionMap& map,
                                            double epsilon);

// Samples `trials` subsets of size c and `pairs_per_subset` random vector
// pairs in each linear span; ratios are unsquared norms. Trials are
// independent streams, so any worker count gives identical results.
DistortionReport verify_subspace_distortion(const PointSet& points, const ProjectionMap& map,
                                            Eigen::Index c, double epsilon, std::size_t trials,
                                            std::uint64_t seed, std::size_t pairs_per_subset = 10,
                                            unsigned threads = 1);

// Samples `trials` random q-flats inside spans of c-point subsets and
// compares d(p, Q) against d(proj(p), proj(Q)) for every input point.
DistortionReport verify_flat_distance_distortion(const PointSet& points, const ProjectionMap& map,
                                                 Eigen::Index c, Eigen::Index q, double epsilon,
                                                 std::size_t trials, std::uint64_t seed,
                                                 unsigned threads = 1);

}  // namespace projclust
