#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "projclust/clustering.hpp"
#include "projclust/geometry.hpp"
#include "projclust/projection.hpp"

namespace projclust {

enum class SolverChoice { Auto, BruteForce, Lloyd, KCenter, Alternating };
enum class RefitMethod { Auto, ExactL2, CenterOracle, LocalSearch };

// Configuration for the project-solve-lift pipeline and the streaming
// engine. The dimension formula constants ride along so one config fully
// determines a run.
struct PipelineConfig {
  ProblemSpec spec;
  double epsilon = 0.5;
  std::uint64_t seed = 0;
  SolverChoice solver = SolverChoice::Auto;
  RefitMethod refit = RefitMethod::Auto;
  double lambda = 1.0;
  double coreset_constant = 1.0;
  std::optional<Eigen::Index> target_dim;  // overrides the formula when set
};

// Dispatches to the configured solver; Auto picks by (q, rho).
ClusteringSolution run_solver(const PointSet& points, const ProblemSpec& spec, SolverChoice choice,
                              std::uint64_t seed);

// Solver seed derived from the run seed; kept distinct from the projection
// matrix stream so the two never share random draws.
std::uint64_t solver_stream_seed(std::uint64_t seed);

struct PipelineResult {
  ClusteringSolution solution;     // flats in the source space, source objective
  Eigen::Index m = 0;              // projected dimension actually used
  double epsilon_prime = 0.0;      // per-stage error budget (epsilon / 5)
  double projected_value = 0.0;    // solver objective in the projected space
  double lifted_value = 0.0;       // equals solution.value
  bool refit_exact = false;        // lift used an exact per-cluster fit
};

// Project to the formula dimension (clamped to d), solve there, pull each
// cluster's pre-image back and refit one flat per cluster in source space.
PipelineResult cluster_via_projection(const PointSet& points, const PipelineConfig& config);

struct SpaceLedger {
  std::size_t matrix_coords = 0;  // d * m
  std::size_t buffer_coords = 0;  // points seen * m
  std::size_t total = 0;
};

// Single-pass engine: projects each arriving point and keeps only the
// m-dimensional image. Ingest is single-writer and strictly sequential;
// queries snapshot the buffer and may run concurrently with each other.
class StreamEngine {
 public:
  // The target dimension is computed from the declared stream length, which
  // must be known in advance. A longer-than-declared stream is accepted but
  // voids the approximation guarantee.
  StreamEngine(PipelineConfig config, Eigen::Index source_dim, Eigen::Index declared_n);

  // Restores an engine from a checkpointed map and buffer.
  StreamEngine(PipelineConfig config, ProjectionMap map, Eigen::MatrixXd buffer,
               Eigen::Index declared_n);

  void ingest(const Eigen::VectorXd& point);

  // Offline solve over the projected buffer; any (k, rho) may be queried
  // against the same buffer.
  double query(const ProblemSpec& spec) const;
  ClusteringSolution query_solution(const ProblemSpec& spec) const;

  SpaceLedger space_report() const;

  Eigen::Index points_seen() const { return points_seen_; }
  Eigen::Index declared_n() const { return declared_n_; }
  bool guarantee_void() const { return points_seen_ > declared_n_; }
  const ProjectionMap& map() const { return map_; }
  const PipelineConfig& config() const { return config_; }

  // Projected buffer (points_seen rows); exposed for checkpointing.
  Eigen::MatrixXd buffer() const { return buffer_.topRows(points_seen_); }

 private:
  PipelineConfig config_;
  ProjectionMap map_;
  Eigen::MatrixXd buffer_;
  Eigen::Index points_seen_ = 0;
  Eigen::Index declared_n_ = 0;
};

}  // namespace projclust
