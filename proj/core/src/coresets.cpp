#include "projclust/coresets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

namespace projclust {
namespace {

// Geometric median by damped fixed-point iteration; handles iterates that
// land on an input point via the optimality condition of the nonsmooth term.
Eigen::VectorXd geometric_median(const PointSet& points) {
  const Eigen::Index n = points.size();
  Eigen::VectorXd c = points.centroid();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, (points.point(i) - c).norm());
  if (scale == 0.0) return c;
  const double coincide_tol = 1e-12 * scale;
  const double grad_tol = 1e-9;

  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::VectorXd pull = Eigen::VectorXd::Zero(points.dim());
    Eigen::VectorXd weighted = Eigen::VectorXd::Zero(points.dim());
    double weight_sum = 0.0;
    int coincident = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::VectorXd diff = points.point(i) - c;
      const double di = diff.norm();
      if (di <= coincide_tol) {
        ++coincident;
        continue;
      }
      pull += diff / di;
      weighted += points.point(i) / di;
      weight_sum += 1.0 / di;
    }
    const double pull_norm = pull.norm();
    // Distance from zero to the subdifferential: the coincident anchors can
    // absorb up to `coincident` units of pull.
    if (std::max(pull_norm - coincident, 0.0) <= grad_tol) return c;
    if (weight_sum == 0.0) return c;
    const Eigen::VectorXd target = weighted / weight_sum;
    if (coincident == 0) {
      c = target;
    } else {
      const double mix = std::min(1.0, static_cast<double>(coincident) / pull_norm);
      c = (1.0 - mix) * target + mix * c;
    }
  }
  return c;
}

// Smooth-rho center by descent with backtracking line search on
// sum_i (d_i / scale)^rho starting at the centroid.
Eigen::VectorXd power_mean_center(const PointSet& points, int rho) {
  const Eigen::Index n = points.size();
  Eigen::VectorXd c = points.centroid();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, (points.point(i) - c).norm());
  if (scale == 0.0) return c;
  const double p = static_cast<double>(rho);

  auto cost = [&](const Eigen::VectorXd& x) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) acc += std::pow((points.point(i) - x).norm() / scale, p);
    return acc;
  };
  auto gradient = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(points.dim());
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::VectorXd diff = x - points.point(i);
      const double di = diff.norm();
      if (di <= 1e-300) continue;  // smooth: zero contribution at the anchor
      g += (p / scale) * std::pow(di / scale, p - 1.0) * (diff / di);
    }
    return g;
  };

  double value = cost(c);
  Eigen::VectorXd grad = gradient(c);
  const double tol = 1e-7 * std::max(1.0, grad.norm());
  double step = scale / p;
  for (int iter = 0; iter < 100000 && grad.norm() > tol; ++iter) {
    const double g2 = grad.squaredNorm();
    double t = step;
    Eigen::VectorXd trial;
    double trial_value = value;
    for (int back = 0; back < 60; ++back) {
      trial = c - t * grad;
      trial_value = cost(trial);
      if (trial_value <= value - 1e-4 * t * g2) break;
      t *= 0.5;
    }
    if (trial_value >= value) break;  // no descent possible at machine precision
    c = trial;
    value = trial_value;
    grad = gradient(c);
    step = t * 1.5;
  }
  return c;
}

}  // namespace

CenterOracle optimal_center(const PointSet& points, const Norm& rho) {
  CenterOracle oracle;
  oracle.rho = rho;
  if (rho.is_inf()) {
    oracle.center = meb(points).center;
  } else if (rho.p() == 2) {
    oracle.center = points.centroid();
  } else if (rho.p() == 1) {
    oracle.center = geometric_median(points);
  } else {
    oracle.center = power_mean_center(points, rho.p());
  }
  oracle.value = objective(points, {QFlat::point(oracle.center)}, rho);
  return oracle;
}

Coreset greedy_center_coreset(const PointSet& points, const Norm& rho, double epsilon,
                              const CenterOracle& oracle) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("greedy_center_coreset: need 0 < eps < 1");
  if (!(oracle.rho == rho))
    throw std::invalid_argument("greedy_center_coreset: oracle norm mismatch");

  const Eigen::Index n = points.size();
  const Eigen::VectorXd& opt = oracle.center;
  const double delta_opt = oracle.value;

  Coreset result;
  // Start at the input point nearest the optimal center (lowest index ties).
  int start = 0;
  double best = (points.point(0) - opt).norm();
  for (Eigen::Index i = 1; i < n; ++i) {
    const double di = (points.point(i) - opt).norm();
    if (di < best) {
      best = di;
      start = static_cast<int>(i);
    }
  }
  std::set<int> selected{start};
  Eigen::VectorXd walker = points.point(start);

  if (delta_opt <= 0.0) {  // all points coincide with the center
    result.indices.assign(selected.begin(), selected.end());
    result.witness = walker;
    return result;
  }

  const double zero_tol = 1e-12 * std::max(1.0, delta_opt);
  const double hard_cap = std::ceil((4.0 / epsilon) * std::log(4.0 / epsilon));
  const double d0 = std::max((walker - opt).norm(), 1e-12);
  double budget = std::ceil((2.0 / epsilon) * std::log(d0 / (epsilon * delta_opt * 1e-6)));
  if (!(budget > 0.0)) budget = 0.0;
  const int max_steps = static_cast<int>(std::min(budget, hard_cap));

  for (int step = 0; step < max_steps; ++step) {
    const double cost = objective(points, {QFlat::point(walker)}, rho);
    if (cost <= (1.0 + epsilon) * delta_opt + 1e-9 * delta_opt) break;

    // Worst multiplicative offender relative to the optimal center.
    int pick = -1;
    double best_ratio = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double to_opt = (points.point(i) - opt).norm();
      if (to_opt <= zero_tol) continue;
      const double ratio = (points.point(i) - walker).norm() / to_opt;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        pick = static_cast<int>(i);
      }
    }
    if (pick < 0 || best_ratio <= 1.0 + epsilon) break;  // no contraction possible

    const Eigen::VectorXd s = points.point(pick);
    const Eigen::VectorXd dir = s - walker;
    const double len2 = dir.squaredNorm();
    if (len2 <= 0.0) break;
    const double t = std::clamp((opt - walker).dot(dir) / len2, 0.0, 1.0);
    walker += t * dir;
    selected.insert(pick);
    result.trace.push_back({pick, (walker - opt).norm()});
  }

  result.indices.assign(selected.begin(), selected.end());
  result.witness = walker;
  return result;
}

double frank_wolfe_objective(const PointSet& points, const Eigen::VectorXd& y) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < points.size(); ++i) acc += (y - points.point(i)).squaredNorm();
  return acc;
}

Coreset frank_wolfe_coreset(const PointSet& points, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("frank_wolfe_coreset: need 0 < eps < 1");
  const Eigen::Index n = points.size();
  const Eigen::VectorXd mean = points.centroid();
  const double g_min = frank_wolfe_objective(points, mean);

  // g at a combination y: n*||y - mean||^2 + g_min.
  auto g_of = [&](const Eigen::VectorXd& y) {
    return static_cast<double>(n) * (y - mean).squaredNorm() + g_min;
  };

  const int steps = 2 * static_cast<int>(std::ceil(1.0 / epsilon));
  Coreset result;
  std::set<int> visited{0};
  Eigen::VectorXd y = points.point(0);  // iterate 1 of `steps`
  result.trace.push_back({0, g_of(y)});

  for (int it = 1; it < steps; ++it) {
    // Gradient over vertices is proportional to P (y - mean); take the
    // steepest-descent vertex, lowest index on ties.
    const Eigen::VectorXd grad = points.data() * (y - mean);
    int pick = 0;
    for (Eigen::Index j = 1; j < n; ++j)
      if (grad[j] < grad[pick]) pick = static_cast<int>(j);

    const Eigen::VectorXd s = points.point(pick);
    const Eigen::VectorXd w = s - y;
    const double len2 = w.squaredNorm();
    double gamma = 0.0;
    if (len2 > 0.0) gamma = std::clamp(-(y - mean).dot(w) / len2, 0.0, 1.0);
    y += gamma * w;
    visited.insert(pick);
    result.trace.push_back({pick, g_of(y)});
  }

  result.indices.assign(visited.begin(), visited.end());
  result.witness = y;
  return result;
}

Coreset meb_coreset(const PointSet& points, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("meb_coreset: need 0 < eps < 1");
  const Eigen::Index n = points.size();
  const std::size_t cap = static_cast<std::size_t>(std::ceil(2.0 / epsilon));

  Coreset result;
  result.indices.push_back(0);
  Ball ball;
  for (;;) {
    ball = meb_of_subset(points, result.indices);
    int far = -1;
    double far_dist = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double di = (points.point(i) - ball.center).norm();
      if (di > far_dist) {
        far_dist = di;
        far = static_cast<int>(i);
      }
    }
    if (far_dist <= (1.0 + epsilon) * ball.radius) break;
    if (result.indices.size() >= cap) break;
    result.indices.push_back(far);
    result.trace.push_back({far, far_dist});
  }
  std::sort(result.indices.begin(), result.indices.end());
  result.indices.erase(std::unique(result.indices.begin(), result.indices.end()),
                       result.indices.end());
  result.witness = ball.center;
  return result;
}

SimplexInstance::SimplexInstance(Eigen::Index n) : n_(n) {
  if (n < 2) throw std::invalid_argument("SimplexInstance: need n >= 2");
}

Eigen::VectorXd SimplexInstance::point(Eigen::Index i) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("SimplexInstance: index out of range");
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n_);
  e[i] = 1.0;
  return e;
}

PointSet SimplexInstance::materialize(Eigen::Index max_points) const {
  if (n_ > max_points)
    throw std::invalid_argument("SimplexInstance: refusing to materialize n x n matrix");
  return PointSet(Eigen::MatrixXd::Identity(n_, n_));
}

namespace {

// Cost of the center x against all simplex vertices, summed coordinate by
// coordinate with no closed-form shortcuts; fixed order, scaled power sum.
double direct_simplex_cost(const Eigen::VectorXd& x, int rho) {
  const Eigen::Index n = x.size();
  std::vector<double> dist(static_cast<std::size_t>(n));
  double dmax = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double diff = x[j] - (j == i ? 1.0 : 0.0);
      acc += diff * diff;
    }
    dist[static_cast<std::size_t>(i)] = std::sqrt(acc);
    dmax = std::max(dmax, dist[static_cast<std::size_t>(i)]);
  }
  if (dmax == 0.0) return 0.0;
  const double p = static_cast<double>(rho);
  double acc = 0.0;
  for (double di : dist) acc += std::pow(di / dmax, p);
  return dmax * std::pow(acc, 1.0 / p);
}

}  // namespace

SimplexLowerBound simplex_lower_bound(Eigen::Index n, Eigen::Index c, const Norm& rho) {
  if (rho.is_inf()) throw std::invalid_argument("simplex_lower_bound: rho must be finite");
  if (c < 1 || c >= n) throw std::invalid_argument("simplex_lower_bound: need 1 <= c < n");
  const double nn = static_cast<double>(n);
  const double cc = static_cast<double>(c);
  const double p = static_cast<double>(rho.p());

  SimplexLowerBound out;
  out.delta_o = std::pow(nn, 1.0 / p) * std::sqrt((nn - 1.0) / nn);
  out.delta_oprime = std::pow(cc * std::pow(std::sqrt((cc - 1.0) / cc), p) +
                                  (nn - cc) * std::pow(std::sqrt((cc + 1.0) / cc), p),
                              1.0 / p);
  out.ratio = out.delta_oprime / out.delta_o;

  // Cross-check the analytic values against direct evaluation on the
  // embedded instance.
  Eigen::VectorXd center_o = Eigen::VectorXd::Constant(n, 1.0 / nn);
  Eigen::VectorXd center_op = Eigen::VectorXd::Zero(n);
  center_op.head(c).setConstant(1.0 / cc);
  const double direct_o = direct_simplex_cost(center_o, rho.p());
  const double direct_op = direct_simplex_cost(center_op, rho.p());
  if (std::abs(direct_o - out.delta_o) > 1e-9 * std::max(1.0, out.delta_o) ||
      std::abs(direct_op - out.delta_oprime) > 1e-9 * std::max(1.0, out.delta_oprime))
    throw std::runtime_error("simplex_lower_bound: analytic and direct evaluations disagree");
  return out;
}

double affine_hull_residual(const PointSet& points, const std::vector<int>& indices,
                            const Eigen::VectorXd& v) {
  if (indices.empty()) throw std::invalid_argument("affine_hull_residual: empty index list");
  const Eigen::VectorXd base = points.point(indices.front());
  Eigen::MatrixXd A(points.dim(), static_cast<Eigen::Index>(indices.size()) - 1);
  for (std::size_t i = 1; i < indices.size(); ++i)
    A.col(static_cast<Eigen::Index>(i - 1)) = points.point(indices[i]) - base;
  const Eigen::VectorXd rhs = v - base;
  if (A.cols() == 0) return rhs.norm();
  const Eigen::VectorXd w = A.colPivHouseholderQr().solve(rhs);
  return (A * w - rhs).norm();
}

}  // namespace projclust
