#include "projclust/io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace projclust {
namespace {

constexpr std::array<char, 8> kMatrixMagic = {'P', 'C', 'P', 'R', 'O', 'J', 'M', 'X'};
constexpr std::array<char, 8> kBufferMagic = {'P', 'C', 'S', 'T', 'R', 'B', 'F', '1'};
constexpr std::uint32_t kFormatVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw IoError("unexpected end of binary header");
  return v;
}
std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw IoError("unexpected end of binary header");
  return v;
}

void write_doubles(std::ostream& out, const Eigen::MatrixXd& row_major_source) {
  for (Eigen::Index i = 0; i < row_major_source.rows(); ++i)
    for (Eigen::Index j = 0; j < row_major_source.cols(); ++j) {
      const double v = row_major_source(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
}

Eigen::MatrixXd read_doubles(std::istream& in, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      double v = 0.0;
      in.read(reinterpret_cast<char*>(&v), sizeof v);
      if (!in) throw IoError("unexpected end of binary payload");
      m(i, j) = v;
    }
  return m;
}

double parse_double(const std::string& token, const std::string& name, std::size_t line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw IoError(name + ":" + std::to_string(line) + ": malformed number '" + token + "'");
  return value;
}

}  // namespace

PointSet read_points_csv(std::istream& in, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      std::string token = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                        : comma - start);
      // Trim surrounding spaces.
      const auto first = token.find_first_not_of(" \t");
      const auto last = token.find_last_not_of(" \t");
      token = (first == std::string::npos) ? std::string() : token.substr(first, last - first + 1);
      row.push_back(parse_double(token, name, line_no));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw IoError(name + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(rows.front().size()) + " values, got " +
                    std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(name + ": no points");
  return PointSet::from_rows(rows);
}

PointSet read_points_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_points_csv(in, path);
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    for (Eigen::Index j = 0; j < points.dim(); ++j) {
      if (j > 0) out << ',';
      out << points.data()(i, j);
    }
    out << '\n';
  }
}

void write_points_csv_file(const std::string& path, const PointSet& points) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_points_csv(out, points);
  if (!out) throw IoError("write failed for '" + path + "'");
}

void save_projection(std::ostream& out, const ProjectionMap& map) {
  out.write(kMatrixMagic.data(), kMatrixMagic.size());
  write_u32(out, kFormatVersion);
  write_u32(out, 0);
  write_u64(out, static_cast<std::uint64_t>(map.source_dim()));
  write_u64(out, static_cast<std::uint64_t>(map.target_dim()));
  write_u64(out, map.seed());
  write_doubles(out, map.matrix());
  if (!out) throw IoError("projection write failed");
}

void save_projection_file(const std::string& path, const ProjectionMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_projection(out, map);
}

ProjectionMap load_projection(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMatrixMagic) throw IoError("not a projection matrix file (bad magic)");
  const std::uint32_t version = read_u32(in);
  if (version != kFormatVersion)
    throw IoError("unsupported projection file version " + std::to_string(version));
  read_u32(in);  // reserved
  const auto d = static_cast<Eigen::Index>(read_u64(in));
  const auto m = static_cast<Eigen::Index>(read_u64(in));
  const std::uint64_t seed = read_u64(in);
  if (d < 1 || m < 1 || m > d) throw IoError("projection file header has invalid dimensions");
  Eigen::MatrixXd matrix = read_doubles(in, m, d);
  return ProjectionMap(d, m, seed, std::move(matrix));
}

ProjectionMap load_projection_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return load_projection(in);
}

void write_coreset(std::ostream& out, const Coreset& coreset) {
  out << std::setprecision(17);
  out << "indices";
  for (int i : coreset.indices) out << ' ' << i;
  out << '\n';
  out << "witness";
  for (Eigen::Index j = 0; j < coreset.witness.size(); ++j) out << ' ' << coreset.witness[j];
  out << '\n';
  out << "trace " << coreset.trace.size() << '\n';
  for (const auto& row : coreset.trace)
    out << row.chosen_index << ' ' << row.center_distance << '\n';
}

Coreset read_coreset(std::istream& in) {
  Coreset coreset;
  std::string line, tag;
  if (!std::getline(in, line)) throw IoError("coreset record: missing indices line");
  {
    std::istringstream ss(line);
    ss >> tag;
    if (tag != "indices") throw IoError("coreset record: expected 'indices'");
    int idx;
    while (ss >> idx) coreset.indices.push_back(idx);
  }
  if (!std::getline(in, line)) throw IoError("coreset record: missing witness line");
  {
    std::istringstream ss(line);
    ss >> tag;
    if (tag != "witness") throw IoError("coreset record: expected 'witness'");
    std::vector<double> coords;
    double v;
    while (ss >> v) coords.push_back(v);
    coreset.witness = Eigen::Map<Eigen::VectorXd>(coords.data(),
                                                  static_cast<Eigen::Index>(coords.size()));
  }
  if (!std::getline(in, line)) throw IoError("coreset record: missing trace header");
  std::size_t rows = 0;
  {
    std::istringstream ss(line);
    ss >> tag >> rows;
    if (tag != "trace") throw IoError("coreset record: expected 'trace'");
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw IoError("coreset record: truncated trace");
    std::istringstream ss(line);
    Coreset::TraceRow row{};
    if (!(ss >> row.chosen_index >> row.center_distance))
      throw IoError("coreset record: malformed trace row");
    coreset.trace.push_back(row);
  }
  return coreset;
}

void write_complex(std::ostream& out, const FilteredComplex& complex) {
  out << std::setprecision(17);
  for (const auto& simplex : complex.simplices) {
    for (int v : simplex.vertices) out << v << ' ';
    out << simplex.radius << '\n';
  }
}

void save_checkpoint(std::ostream& out, const StreamEngine& engine) {
  save_projection(out, engine.map());
  out.write(kBufferMagic.data(), kBufferMagic.size());
  write_u64(out, static_cast<std::uint64_t>(engine.declared_n()));
  write_u64(out, static_cast<std::uint64_t>(engine.points_seen()));
  write_doubles(out, engine.buffer());
  if (!out) throw IoError("checkpoint write failed");
}

void save_checkpoint_file(const std::string& path, const StreamEngine& engine) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_checkpoint(out, engine);
}

StreamEngine load_checkpoint(std::istream& in, const PipelineConfig& config) {
  ProjectionMap map = load_projection(in);
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kBufferMagic) throw IoError("not a stream checkpoint (bad buffer magic)");
  const auto declared_n = static_cast<Eigen::Index>(read_u64(in));
  const auto seen = static_cast<Eigen::Index>(read_u64(in));
  Eigen::MatrixXd buffer = read_doubles(in, seen, map.target_dim());
  return StreamEngine(config, std::move(map), std::move(buffer), declared_n);
}

StreamEngine load_checkpoint_file(const std::string& path, const PipelineConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return load_checkpoint(in, config);
}

}  // namespace projclust
