#pragma once

#include <cstdint>
#include <vector>

#include "projclust/geometry.hpp"
#include "projclust/projection.hpp"

namespace projclust {

// Problem parameters: k flats of dimension q under the L_rho aggregation.
struct ProblemSpec {
  int k = 1;
  Eigen::Index q = 0;
  Norm rho = Norm::lp(2);
};

struct ClusteringSolution {
  std::vector<QFlat> flats;
  std::vector<int> assignment;  // nearest flat per point, lowest index ties
  double value = 0.0;           // objective(P, flats, rho)
};

// Exact optimum by partition enumeration with exact per-part fitting.
// Supported: (rho=2, any q < d) and (rho=inf, q=0). Limits: n <= 12, k <= 3.
ClusteringSolution brute_force_optimal(const PointSet& points, const ProblemSpec& spec);

// Farthest-point traversal from index 0; a 2-approximation for k-center
// (rho=inf, q=0).
ClusteringSolution k_center_greedy(const PointSet& points, int k);

// Lloyd iterations with careful (distance-squared weighted) seeding.
// rho=2, q=0; objective non-increasing per iteration.
ClusteringSolution lloyd_kmeans(const PointSet& points, int k, std::uint64_t seed,
                                int max_iters = 100);

// Alternating assign/refit heuristic for general (k, q, rho); per-cluster
// refit is the exact L2 flat for rho=2, a center oracle for q=0, and an
// L2-seeded local search otherwise. Returns the best of `restarts` seeds.
ClusteringSolution alternating_qflat(const PointSet& points, const ProblemSpec& spec,
                                     std::uint64_t seed, int max_iters = 50, int restarts = 8);

// Best single flat for one cluster under the given spec: exact for
// (rho=2, any q) and q=0; weighted local search otherwise. Shared by the
// alternating solver and by the lift step of the projection pipeline.
QFlat fit_cluster_flat(const PointSet& cluster, const ProblemSpec& spec);

struct PreservationReport {
  double source_value = 0.0;
  double image_value = 0.0;
  double ratio = 1.0;
  bool pass = false;
};

// Exact optima on both sides of the projection; pass iff the ratio lies in
// [1-eps, 1+eps]. Instance must be within brute-force limits.
PreservationReport verify_objective_preservation(const PointSet& points, const ProjectionMap& map,
                                                 const ProblemSpec& spec, double epsilon);

}  // namespace projclust
