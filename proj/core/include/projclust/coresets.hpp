#pragma once

#include <cstdint>
#include <Eigen/Dense>
#include <vector>

#include "projclust/geometry.hpp"

namespace projclust {

// Index subset of a point set together with a witness center in the affine
// hull of the selected points, and the per-iteration trace of the
// construction that produced it.
struct Coreset {
  struct TraceRow {
    int chosen_index;        // input point picked this iteration
    double center_distance;  // construction-specific progress measure
  };
  std::vector<int> indices;  // distinct, ascending
  Eigen::VectorXd witness;
  std::vector<TraceRow> trace;
};

// The optimal (or near-optimal) 1-center for a fixed norm, with its cost.
struct CenterOracle {
  Norm rho = Norm::lp(2);
  Eigen::VectorXd center;
  double value = 0.0;  // objective(P, {center}, rho)
};

// The standard simplex e_1..e_n embedded in R^n; the worst case for
// small-coreset existence. Points are generated on demand so large n never
// materializes an n x n matrix.
class SimplexInstance {
 public:
  explicit SimplexInstance(Eigen::Index n);
  Eigen::Index size() const { return n_; }
  Eigen::VectorXd point(Eigen::Index i) const;
  // Dense point set; guarded against accidental huge allocations.
  PointSet materialize(Eigen::Index max_points = 4096) const;

 private:
  Eigen::Index n_;
};

struct SimplexLowerBound {
  double delta_o;       // optimal-center cost, analytic
  double delta_oprime;  // cost of the best center in the span of the first c vertices
  double ratio;         // delta_oprime / delta_o
};

// Optimal 1-center: exact centroid for rho=2, exact MEB center for rho=inf,
// damped fixed-point iteration for rho=1, descent with backtracking line
// search otherwise.
CenterOracle optimal_center(const PointSet& points, const Norm& rho);

// Greedy contraction construction: walk from the input point nearest the
// optimal center toward the worst distance-ratio point until the walk's cost
// is within (1+eps) of the oracle value. Trace rows record the chosen point
// and d(c_i, o) after the step.
Coreset greedy_center_coreset(const PointSet& points, const Norm& rho, double epsilon,
                              const CenterOracle& oracle);

// Conditional-gradient construction for rho=2 on the mean-squared-distance
// objective over the simplex of convex weights; 2*ceil(1/eps) iterates with
// exact line search. Trace rows record the chosen vertex and the objective
// g after the step.
Coreset frank_wolfe_coreset(const PointSet& points, double epsilon);

// Evaluates the rho=2 simplex objective g at a convex combination y of the
// points: sum_i ||y - p_i||^2. Used to certify frank_wolfe_coreset results.
double frank_wolfe_objective(const PointSet& points, const Eigen::VectorXd& y);

// Farthest-point construction for rho=inf: grow a subset, re-solve its MEB,
// stop when every point is within (1+eps) of the subset radius. Size capped
// at ceil(2/eps).
Coreset meb_coreset(const PointSet& points, double epsilon);

// Analytic costs for the standard-simplex lower-bound instance, cross-checked
// against direct coordinate-wise evaluation to 1e-9.
SimplexLowerBound simplex_lower_bound(Eigen::Index n, Eigen::Index c, const Norm& rho);

// Residual of least-squares expressing v as an affine combination of the
// selected points; small residual certifies affine-hull membership.
double affine_hull_residual(const PointSet& points, const std::vector<int>& indices,
                            const Eigen::VectorXd& v);

}  // namespace projclust
