#pragma once

#include <cstddef>
#include <vector>

#include "projclust/geometry.hpp"
#include "projclust/projection.hpp"

namespace projclust {

// All vertex subsets of size <= s_max+1 with their filtration radius (the
// exact MEB radius of the subset), enumerated sizes ascending and in
// colexicographic order within each size.
struct FilteredComplex {
  struct Simplex {
    std::vector<int> vertices;  // ascending
    double radius = 0.0;
  };
  Eigen::Index n = 0;
  int s_max = 0;
  std::vector<Simplex> simplices;
};

// Number of simplices build_cech would enumerate.
std::size_t cech_simplex_count(Eigen::Index n, int s_max);

// Enumerates and labels every simplex. Throws (mentioning the count) when
// the enumeration would exceed `budget` simplices.
FilteredComplex build_cech(const PointSet& points, int s_max, std::size_t budget = 1000000);

struct SandwichReport {
  double max_ratio = 1.0;  // image radius / source radius
  double min_ratio = 1.0;
  bool pass = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // vertices and exact-zero-radius simplices
  std::size_t violations = 0;
};

// Per-simplex filtration-radius comparison between the complex on P and the
// complex on the projected points: pass iff every ratio lies within
// [1 - c_slack*eps, 1 + c_slack*eps]. Requires eps <= (c_slack-1)/c_slack.
SandwichReport verify_sandwich(const PointSet& points, const ProjectionMap& map, int s_max,
                               double epsilon, double c_slack, std::size_t budget = 1000000);

}  // namespace projclust
