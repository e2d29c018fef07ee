#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "projclust/cech.hpp"
#include "projclust/coresets.hpp"
#include "projclust/geometry.hpp"
#include "projclust/pipeline.hpp"
#include "projclust/projection.hpp"

namespace projclust {

// Filesystem / format failure, distinct from argument validation errors so
// callers can map it to its own exit code.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point files: UTF-8 CSV, one point per row, comma-separated decimals, no
// header. Parse errors report the 1-based line number.
PointSet read_points_csv(std::istream& in, const std::string& name = "<stream>");
PointSet read_points_csv_file(const std::string& path);
// Writes with 17 significant digits so a round-trip is lossless.
void write_points_csv(std::ostream& out, const PointSet& points);
void write_points_csv_file(const std::string& path, const PointSet& points);

// Projection matrix file: 8-byte magic, u32 version, u32 reserved, u64 d,
// u64 m, u64 seed, then m*d little-endian float64 row-major.
void save_projection(std::ostream& out, const ProjectionMap& map);
void save_projection_file(const std::string& path, const ProjectionMap& map);
ProjectionMap load_projection(std::istream& in);
ProjectionMap load_projection_file(const std::string& path);

// Coreset text record: index list, witness coordinates, trace rows.
void write_coreset(std::ostream& out, const Coreset& coreset);
Coreset read_coreset(std::istream& in);

// One simplex per line: vertex ids then the filtration radius.
void write_complex(std::ostream& out, const FilteredComplex& complex);

// Stream checkpoint: projection matrix block followed by the projected
// buffer and counters; enough to resume ingesting.
void save_checkpoint(std::ostream& out, const StreamEngine& engine);
void save_checkpoint_file(const std::string& path, const StreamEngine& engine);
StreamEngine load_checkpoint(std::istream& in, const PipelineConfig& config);
StreamEngine load_checkpoint_file(const std::string& path, const PipelineConfig& config);

}  // namespace projclust
