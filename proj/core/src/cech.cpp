#include "projclust/cech.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace projclust {
namespace {

// Colex successor over size-k subsets of {0..n-1}: advance the lowest
// position that can move without disturbing higher ones.
bool next_colex(std::vector<int>& comb, Eigen::Index n) {
  const int k = static_cast<int>(comb.size());
  for (int i = 0; i < k; ++i) {
    const int limit = (i + 1 < k) ? comb[static_cast<std::size_t>(i + 1)] - 1
                                  : static_cast<int>(n) - 1;
    if (comb[static_cast<std::size_t>(i)] < limit) {
      ++comb[static_cast<std::size_t>(i)];
      for (int j = 0; j < i; ++j) comb[static_cast<std::size_t>(j)] = j;
      return true;
    }
  }
  return false;
}

}  // namespace

std::size_t cech_simplex_count(Eigen::Index n, int s_max) {
  std::size_t total = 0;
  const std::size_t cap = std::numeric_limits<std::size_t>::max();
  for (int k = 1; k <= s_max + 1 && k <= n; ++k) {
    // C(n, k) with overflow saturation.
    long double binom = 1.0L;
    for (int j = 0; j < k; ++j) binom = binom * static_cast<long double>(n - j) / (j + 1);
    if (binom > static_cast<long double>(cap) - static_cast<long double>(total)) return cap;
    total += static_cast<std::size_t>(binom + 0.5L);
  }
  return total;
}

FilteredComplex build_cech(const PointSet& points, int s_max, std::size_t budget) {
  if (s_max < 1) throw std::invalid_argument("build_cech: need s_max >= 1");
  const Eigen::Index n = points.size();
  const std::size_t count = cech_simplex_count(n, s_max);
  if (count > budget)
    throw std::invalid_argument("build_cech: enumeration budget exceeded: " +
                                std::to_string(count) + " simplices > budget " +
                                std::to_string(budget));

  FilteredComplex complex;
  complex.n = n;
  complex.s_max = s_max;
  complex.simplices.reserve(count);

  for (int k = 1; k <= s_max + 1 && k <= n; ++k) {
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) comb[static_cast<std::size_t>(j)] = j;
    do {
      FilteredComplex::Simplex simplex;
      simplex.vertices = comb;
      simplex.radius = (k == 1) ? 0.0 : meb_of_subset(points, comb).radius;
      complex.simplices.push_back(std::move(simplex));
    } while (next_colex(comb, n));
  }
  return complex;
}

SandwichReport verify_sandwich(const PointSet& points, const ProjectionMap& map, int s_max,
                               double epsilon, double c_slack, std::size_t budget) {
  if (!(c_slack > 1.0)) throw std::invalid_argument("verify_sandwich: need c_slack > 1");
  if (!(epsilon > 0.0) || epsilon > (c_slack - 1.0) / c_slack)
    throw std::invalid_argument("verify_sandwich: need 0 < epsilon <= (c_slack-1)/c_slack");

  const FilteredComplex source = build_cech(points, s_max, budget);
  const FilteredComplex image = build_cech(project(points, map), s_max, budget);

  SandwichReport report;
  report.max_ratio = 0.0;
  report.min_ratio = std::numeric_limits<double>::infinity();
  const double lo = 1.0 - c_slack * epsilon;
  const double hi = 1.0 + c_slack * epsilon;
  for (std::size_t i = 0; i < source.simplices.size(); ++i) {
    const double rs = source.simplices[i].radius;
    const double ri = image.simplices[i].radius;
    if (rs == 0.0) {  // vertices, duplicate points
      ++report.skipped;
      continue;
    }
    const double ratio = ri / rs;
    report.max_ratio = std::max(report.max_ratio, ratio);
    report.min_ratio = std::min(report.min_ratio, ratio);
    if (ratio < lo || ratio > hi) ++report.violations;
    ++report.checked;
  }
  if (report.checked == 0) report.max_ratio = report.min_ratio = 1.0;
  report.pass = report.violations == 0;
  return report;
}

}  // namespace projclust
