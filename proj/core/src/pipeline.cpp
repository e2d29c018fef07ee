#include "projclust/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "projclust/coresets.hpp"
#include "projclust/rng.hpp"

namespace projclust {
namespace {

constexpr std::uint64_t kSolverSalt = 0x534f4c56ull;  // "SOLV"

QFlat lift_flat(const PointSet& group, const ProblemSpec& spec, RefitMethod method) {
  switch (method) {
    case RefitMethod::ExactL2:
      return best_fit_flat_l2(group, spec.q);
    case RefitMethod::CenterOracle:
      if (spec.q != 0) throw std::invalid_argument("refit: center oracle requires q = 0");
      return QFlat::point(optimal_center(group, spec.rho).center);
    case RefitMethod::LocalSearch:
    case RefitMethod::Auto:
      return fit_cluster_flat(group, spec);
  }
  throw std::logic_error("refit: unknown method");
}

bool refit_is_exact(const ProblemSpec& spec, RefitMethod method) {
  if (method == RefitMethod::ExactL2) return !spec.rho.is_inf() && spec.rho.p() == 2;
  if (spec.q == 0) return spec.rho.is_inf() || spec.rho.p() == 2;
  return !spec.rho.is_inf() && spec.rho.p() == 2;
}

}  // namespace

std::uint64_t solver_stream_seed(std::uint64_t seed) {
  return CounterRng::derive_stream(seed, kSolverSalt);
}

ClusteringSolution run_solver(const PointSet& points, const ProblemSpec& spec, SolverChoice choice,
                              std::uint64_t seed) {
  if (choice == SolverChoice::Auto) {
    if (spec.q == 0 && !spec.rho.is_inf() && spec.rho.p() == 2) {
      choice = SolverChoice::Lloyd;
    } else if (spec.q == 0 && spec.rho.is_inf()) {
      choice = SolverChoice::KCenter;
    } else {
      choice = SolverChoice::Alternating;
    }
  }
  switch (choice) {
    case SolverChoice::BruteForce:
      return brute_force_optimal(points, spec);
    case SolverChoice::Lloyd:
      if (spec.q != 0 || spec.rho.is_inf() || spec.rho.p() != 2)
        throw std::invalid_argument("run_solver: lloyd requires q=0, rho=2");
      return lloyd_kmeans(points, spec.k, seed);
    case SolverChoice::KCenter:
      if (spec.q != 0 || !spec.rho.is_inf())
        throw std::invalid_argument("run_solver: k-center requires q=0, rho=inf");
      return k_center_greedy(points, spec.k);
    case SolverChoice::Alternating:
      return alternating_qflat(points, spec, seed);
    case SolverChoice::Auto:
      break;
  }
  throw std::logic_error("run_solver: unknown choice");
}

PipelineResult cluster_via_projection(const PointSet& points, const PipelineConfig& config) {
  if (!(config.epsilon > 0.0) || !(config.epsilon < 1.0))
    throw std::invalid_argument("cluster_via_projection: need 0 < epsilon < 1");
  const Eigen::Index d = points.dim();
  const Eigen::Index n = points.size();

  PipelineResult result;
  result.epsilon_prime = config.epsilon / 5.0;

  Eigen::Index m;
  if (config.target_dim.has_value()) {
    m = std::min(*config.target_dim, d);
  } else {
    DimensionBudget budget;
    budget.n = std::max<Eigen::Index>(n, 2);
    budget.q = config.spec.q;
    budget.epsilon = result.epsilon_prime;
    budget.rho = config.spec.rho;
    budget.lambda = config.lambda;
    budget.coreset_constant = config.coreset_constant;
    m = std::min(projective_dimension(budget), d);
  }
  if (m < 1) m = 1;
  result.m = m;

  const ProjectionMap map = make_projection(d, m, config.seed);
  const PointSet projected = project(points, map);
  const ClusteringSolution low =
      run_solver(projected, config.spec, config.solver, solver_stream_seed(config.seed));
  result.projected_value = low.value;

  // Pre-images of the projected clusters. Lowest-index tie-breaking in the
  // assignment keeps them disjoint.
  std::vector<std::vector<int>> groups(low.flats.size());
  for (Eigen::Index i = 0; i < n; ++i)
    groups[static_cast<std::size_t>(low.assignment[static_cast<std::size_t>(i)])].push_back(
        static_cast<int>(i));

  std::vector<QFlat> lifted;
  for (const auto& group : groups) {
    if (group.empty()) continue;
    lifted.push_back(lift_flat(points.subset(group), config.spec, config.refit));
  }

  result.solution.flats = std::move(lifted);
  result.solution.assignment = assign_to_flats(points, result.solution.flats);
  result.solution.value = objective(points, result.solution.flats, config.spec.rho);
  result.lifted_value = result.solution.value;
  result.refit_exact = refit_is_exact(config.spec, config.refit);
  return result;
}

StreamEngine::StreamEngine(PipelineConfig config, Eigen::Index source_dim, Eigen::Index declared_n)
    : config_(std::move(config)),
      map_(make_projection(
          source_dim,
          [&] {
            DimensionBudget budget;
            budget.n = std::max<Eigen::Index>(declared_n, 2);
            budget.q = config_.spec.q;
            budget.epsilon = config_.epsilon;
            budget.rho = config_.spec.rho;
            budget.lambda = config_.lambda;
            budget.coreset_constant = config_.coreset_constant;
            Eigen::Index m = config_.target_dim.has_value() ? *config_.target_dim
                                                            : projective_dimension(budget);
            return std::max<Eigen::Index>(1, std::min(m, source_dim));
          }(),
          config_.seed)),
      declared_n_(declared_n) {
  if (declared_n < 1) throw std::invalid_argument("StreamEngine: declared n must be >= 1");
  buffer_.resize(declared_n, map_.target_dim());
}

StreamEngine::StreamEngine(PipelineConfig config, ProjectionMap map, Eigen::MatrixXd buffer,
                           Eigen::Index declared_n)
    : config_(std::move(config)),
      map_(std::move(map)),
      buffer_(std::move(buffer)),
      points_seen_(buffer_.rows()),
      declared_n_(declared_n) {
  if (buffer_.cols() != map_.target_dim())
    throw std::invalid_argument("StreamEngine: buffer width does not match the map");
}

void StreamEngine::ingest(const Eigen::VectorXd& point) {
  if (point.size() != map_.source_dim())
    throw std::invalid_argument("StreamEngine::ingest: dimension mismatch");
  if (points_seen_ == buffer_.rows()) {
    Eigen::MatrixXd grown(std::max<Eigen::Index>(2 * buffer_.rows(), 1), map_.target_dim());
    grown.topRows(buffer_.rows()) = buffer_;
    buffer_ = std::move(grown);
  }
  buffer_.row(points_seen_++) = map_.apply(point).transpose();
}

double StreamEngine::query(const ProblemSpec& spec) const { return query_solution(spec).value; }

ClusteringSolution StreamEngine::query_solution(const ProblemSpec& spec) const {
  if (points_seen_ == 0) throw std::invalid_argument("StreamEngine::query: empty buffer");
  const PointSet snapshot(buffer_.topRows(points_seen_));
  return run_solver(snapshot, spec, config_.solver, solver_stream_seed(config_.seed));
}

SpaceLedger StreamEngine::space_report() const {
  SpaceLedger ledger;
  ledger.matrix_coords =
      static_cast<std::size_t>(map_.source_dim()) * static_cast<std::size_t>(map_.target_dim());
  ledger.buffer_coords =
      static_cast<std::size_t>(points_seen_) * static_cast<std::size_t>(map_.target_dim());
  ledger.total = ledger.matrix_coords + ledger.buffer_coords;
  return ledger;
}

}  // namespace projclust
