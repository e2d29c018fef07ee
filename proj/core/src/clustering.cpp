#include "projclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "projclust/coresets.hpp"
#include "projclust/rng.hpp"

namespace projclust {
namespace {

// Sum of squared distances of the block to its optimal q-flat: the tail
// singular values of the centered block.
double block_cost_sq_l2(const PointSet& points, const std::vector<int>& block, Eigen::Index q) {
  const Eigen::Index m = static_cast<Eigen::Index>(block.size());
  Eigen::MatrixXd rows(m, points.dim());
  for (Eigen::Index i = 0; i < m; ++i) rows.row(i) = points.data().row(block[static_cast<std::size_t>(i)]);
  const Eigen::RowVectorXd mean = rows.colwise().mean();
  rows.rowwise() -= mean;
  if (q == 0) return rows.squaredNorm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  const auto& sv = svd.singularValues();
  double acc = 0.0;
  for (Eigen::Index i = q; i < sv.size(); ++i) acc += sv[i] * sv[i];
  return acc;
}

double block_cost_inf(const PointSet& points, const std::vector<int>& block) {
  return meb_of_subset(points, block).radius;
}

struct Enumerator {
  const PointSet& points;
  const ProblemSpec& spec;
  std::vector<std::vector<int>> blocks;
  std::vector<double> block_cost;  // SSE for rho=2, radius for rho=inf
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> best_blocks;

  double aggregate() const {
    if (spec.rho.is_inf()) {
      double worst = 0.0;
      for (std::size_t b = 0; b < blocks.size(); ++b)
        if (!blocks[b].empty()) worst = std::max(worst, block_cost[b]);
      return worst;
    }
    double acc = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (!blocks[b].empty()) acc += block_cost[b];
    return std::sqrt(acc);
  }

  double fit_cost(const std::vector<int>& block) const {
    if (spec.rho.is_inf()) return block_cost_inf(points, block);
    return block_cost_sq_l2(points, block, spec.q);
  }

  void recurse(Eigen::Index i, std::size_t used) {
    if (i == points.size()) {
      const double value = aggregate();
      if (value < best_value) {
        best_value = value;
        best_blocks = blocks;
      }
      return;
    }
    // Restricted growth: point i may join an existing block or open block
    // `used` (if labels remain).
    const std::size_t options = std::min(used + 1, blocks.size());
    for (std::size_t b = 0; b < options; ++b) {
      blocks[b].push_back(static_cast<int>(i));
      const double saved = block_cost[b];
      block_cost[b] = fit_cost(blocks[b]);
      if (aggregate() < best_value)  // monotone in block growth, safe prune
        recurse(i + 1, std::max(used, b + 1));
      block_cost[b] = saved;
      blocks[b].pop_back();
    }
  }
};

std::vector<QFlat> fit_flats(const PointSet& points, const std::vector<std::vector<int>>& blocks,
                             const ProblemSpec& spec) {
  std::vector<QFlat> flats;
  for (const auto& block : blocks) {
    if (block.empty()) continue;
    const PointSet sub = points.subset(block);
    if (spec.rho.is_inf()) {
      flats.push_back(QFlat::point(meb(sub).center));
    } else {
      flats.push_back(best_fit_flat_l2(sub, spec.q));
    }
  }
  return flats;
}

ClusteringSolution finish_solution(const PointSet& points, std::vector<QFlat> flats,
                                   const Norm& rho) {
  ClusteringSolution sol;
  sol.flats = std::move(flats);
  sol.assignment = assign_to_flats(points, sol.flats);
  sol.value = objective(points, sol.flats, rho);
  return sol;
}

// Careful seeding: first center from the stream, then distance-squared
// weighted draws. Falls back to lowest unused index when all mass is zero.
std::vector<int> careful_seed(const PointSet& points, int k, CounterRng& rng) {
  const Eigen::Index n = points.size();
  std::vector<int> centers;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<double> dist2(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());

  int first = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n)));
  centers.push_back(first);
  used[static_cast<std::size_t>(first)] = true;

  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d2 = (points.point(i) - points.point(centers.back())).squaredNorm();
      auto& slot = dist2[static_cast<std::size_t>(i)];
      slot = std::min(slot, d2);
      total += slot;
    }
    int pick = -1;
    if (total > 0.0) {
      const double r = rng.uniform01() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += dist2[static_cast<std::size_t>(i)];
        if (acc > r && !used[static_cast<std::size_t>(i)]) {
          pick = static_cast<int>(i);
          break;
        }
      }
    }
    if (pick < 0) {
      for (Eigen::Index i = 0; i < n && pick < 0; ++i)
        if (!used[static_cast<std::size_t>(i)]) pick = static_cast<int>(i);
    }
    if (pick < 0) break;  // k > number of distinct slots
    centers.push_back(pick);
    used[static_cast<std::size_t>(pick)] = true;
  }
  return centers;
}

}  // namespace

ClusteringSolution brute_force_optimal(const PointSet& points, const ProblemSpec& spec) {
  if (points.size() > 12) throw std::invalid_argument("brute_force_optimal: n must be <= 12");
  if (spec.k < 1 || spec.k > 3) throw std::invalid_argument("brute_force_optimal: k must be in 1..3");
  const bool l2 = !spec.rho.is_inf() && spec.rho.p() == 2 && spec.q < points.dim();
  const bool center_inf = spec.rho.is_inf() && spec.q == 0;
  if (!l2 && !center_inf)
    throw std::invalid_argument(
        "brute_force_optimal: supported specs are (rho=2, q<d) and (rho=inf, q=0)");

  Enumerator e{points, spec, {}, {}, std::numeric_limits<double>::infinity(), {}};
  e.blocks.resize(static_cast<std::size_t>(spec.k));
  e.block_cost.assign(static_cast<std::size_t>(spec.k), 0.0);
  e.recurse(0, 0);

  return finish_solution(points, fit_flats(points, e.best_blocks, spec), spec.rho);
}

ClusteringSolution k_center_greedy(const PointSet& points, int k) {
  const Eigen::Index n = points.size();
  if (k < 1 || k > n) throw std::invalid_argument("k_center_greedy: need 1 <= k <= n");

  std::vector<int> centers{0};
  std::vector<double> dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < k) {
    int far = 0;
    double far_dist = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      auto& slot = dist[static_cast<std::size_t>(i)];
      slot = std::min(slot, (points.point(i) - points.point(centers.back())).norm());
      if (slot > far_dist) {
        far_dist = slot;
        far = static_cast<int>(i);
      }
    }
    centers.push_back(far);
  }

  std::vector<QFlat> flats;
  flats.reserve(centers.size());
  for (int c : centers) flats.push_back(QFlat::point(points.point(c)));
  return finish_solution(points, std::move(flats), Norm::inf());
}

ClusteringSolution lloyd_kmeans(const PointSet& points, int k, std::uint64_t seed, int max_iters) {
  const Eigen::Index n = points.size();
  if (k < 1 || k > n) throw std::invalid_argument("lloyd_kmeans: need 1 <= k <= n");
  CounterRng rng(seed, 0);

  std::vector<int> seeds = careful_seed(points, k, rng);
  Eigen::MatrixXd centers(static_cast<Eigen::Index>(seeds.size()), points.dim());
  for (std::size_t c = 0; c < seeds.size(); ++c) centers.row(static_cast<Eigen::Index>(c)) = points.data().row(seeds[c]);

  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  for (int iter = 0; iter < max_iters; ++iter) {
    // Assign, lowest index on ties.
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d2 = (points.point(i) - centers.row(0).transpose()).squaredNorm();
      for (Eigen::Index c = 1; c < centers.rows(); ++c) {
        const double d2 = (points.point(i) - centers.row(c).transpose()).squaredNorm();
        if (d2 < best_d2) {
          best_d2 = d2;
          best = static_cast<int>(c);
        }
      }
      if (assignment[static_cast<std::size_t>(i)] != best) {
        assignment[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    if (!changed) break;

    // Recompute means; an empty cluster is reseeded at the point farthest
    // from its current center.
    std::vector<int> counts(static_cast<std::size_t>(centers.rows()), 0);
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(centers.rows(), points.dim());
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(assignment[static_cast<std::size_t>(i)]) += points.data().row(i);
      ++counts[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])];
    }
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
      } else {
        int far = 0;
        double far_d2 = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double d2 =
              (points.point(i) - centers.row(assignment[static_cast<std::size_t>(i)]).transpose())
                  .squaredNorm();
          if (d2 > far_d2) {
            far_d2 = d2;
            far = static_cast<int>(i);
          }
        }
        centers.row(c) = points.data().row(far);
      }
    }
  }

  std::vector<QFlat> flats;
  for (Eigen::Index c = 0; c < centers.rows(); ++c)
    flats.push_back(QFlat::point(centers.row(c).transpose()));
  return finish_solution(points, std::move(flats), Norm::lp(2));
}

// Exact where an exact primitive exists; weighted-PCA local search
// otherwise, accepting improvements only.
QFlat fit_cluster_flat(const PointSet& cluster, const ProblemSpec& spec) {
  if (spec.q == 0) return QFlat::point(optimal_center(cluster, spec.rho).center);
  QFlat flat = best_fit_flat_l2(cluster, spec.q);
  if (!spec.rho.is_inf() && spec.rho.p() == 2) return flat;

  // IRLS-flavored search: reweight by residual^(rho-2) (a high power stands
  // in for rho=inf), refit the weighted flat, keep it only if it improves.
  const double power = spec.rho.is_inf() ? 8.0 : static_cast<double>(spec.rho.p());
  double best = objective(cluster, {flat}, spec.rho);
  for (int round = 0; round < 8; ++round) {
    Eigen::VectorXd w(cluster.size());
    double wmax = 0.0;
    for (Eigen::Index i = 0; i < cluster.size(); ++i) {
      const double r = point_to_flat_distance(cluster.point(i), flat);
      w[i] = std::pow(std::max(r, 1e-12), power - 2.0);
      wmax = std::max(wmax, w[i]);
    }
    if (wmax <= 0.0) break;
    w /= wmax;
    const double wsum = w.sum();
    if (wsum <= 0.0) break;
    Eigen::VectorXd mean = (cluster.data().transpose() * w) / wsum;
    Eigen::MatrixXd centered = cluster.data().rowwise() - mean.transpose();
    for (Eigen::Index i = 0; i < centered.rows(); ++i) centered.row(i) *= std::sqrt(w[i]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    Eigen::MatrixXd basis = svd.matrixV().leftCols(std::min(spec.q, svd.matrixV().cols()));
    QFlat candidate = QFlat::from_directions(mean, basis);
    const double value = objective(cluster, {candidate}, spec.rho);
    if (value < best - 1e-12 * std::max(1.0, best)) {
      best = value;
      flat = std::move(candidate);
    } else {
      break;
    }
  }
  return flat;
}

namespace {

ClusteringSolution alternating_run(const PointSet& points, const ProblemSpec& spec,
                                   CounterRng& rng, int max_iters) {
  const Eigen::Index n = points.size();
  std::vector<int> anchors = careful_seed(points, spec.k, rng);
  std::vector<QFlat> flats;
  for (int a : anchors) {
    if (spec.q == 0) {
      flats.push_back(QFlat::point(points.point(a)));
    } else {
      Eigen::MatrixXd dirs(points.dim(), spec.q);
      for (Eigen::Index j = 0; j < spec.q; ++j)
        for (Eigen::Index i = 0; i < points.dim(); ++i) dirs(i, j) = rng.normal();
      flats.push_back(QFlat::from_directions(points.point(a), dirs));
    }
  }

  double value = objective(points, flats, spec.rho);
  std::vector<int> assignment = assign_to_flats(points, flats);
  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<QFlat> next = flats;
    for (std::size_t c = 0; c < flats.size(); ++c) {
      std::vector<int> block;
      for (Eigen::Index i = 0; i < n; ++i)
        if (assignment[static_cast<std::size_t>(i)] == static_cast<int>(c))
          block.push_back(static_cast<int>(i));
      if (block.empty()) continue;  // keep the previous flat
      next[c] = fit_cluster_flat(points.subset(block), spec);
    }
    const double next_value = objective(points, next, spec.rho);
    if (next_value <= value) {
      flats = std::move(next);
      value = next_value;
    }
    std::vector<int> next_assignment = assign_to_flats(points, flats);
    if (next_assignment == assignment) break;
    assignment = std::move(next_assignment);
  }
  return finish_solution(points, std::move(flats), spec.rho);
}

}  // namespace

ClusteringSolution alternating_qflat(const PointSet& points, const ProblemSpec& spec,
                                     std::uint64_t seed, int max_iters, int restarts) {
  if (spec.q < 0 || spec.q >= points.dim())
    throw std::invalid_argument("alternating_qflat: need 0 <= q < d");
  if (spec.k < 1 || spec.k > points.size())
    throw std::invalid_argument("alternating_qflat: need 1 <= k <= n");

  ClusteringSolution best;
  best.value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    CounterRng rng(seed, static_cast<std::uint64_t>(r));
    ClusteringSolution sol = alternating_run(points, spec, rng, max_iters);
    if (sol.value < best.value) best = std::move(sol);
  }
  return best;
}

PreservationReport verify_objective_preservation(const PointSet& points, const ProjectionMap& map,
                                                 const ProblemSpec& spec, double epsilon) {
  PreservationReport report;
  report.source_value = brute_force_optimal(points, spec).value;
  report.image_value = brute_force_optimal(project(points, map), spec).value;
  if (report.source_value == 0.0) {
    report.ratio = report.image_value == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    report.ratio = report.image_value / report.source_value;
  }
  report.pass = report.ratio >= 1.0 - epsilon && report.ratio <= 1.0 + epsilon;
  return report;
}

}  // namespace projclust
