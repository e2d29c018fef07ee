#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "projclust/geometry.hpp"

namespace projclust {
namespace {

// Containment test, relative tolerance so scaling the input scales every
// branch decision identically.
bool ball_contains(const Eigen::VectorXd& center, double r2, const Eigen::VectorXd& p) {
  const double d2 = (p - center).squaredNorm();
  return d2 <= r2 * (1.0 + 1e-12) + 1e-300;
}

struct BoundaryBall {
  Eigen::VectorXd center;
  double r2 = -1.0;  // negative: contains nothing
};

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// Smallest ball with every point of `support` on its boundary. The support
// is canonicalized (lexicographic sort) first so that equal support sets
// yield bit-identical balls no matter how the recursion discovered them.
BoundaryBall ball_of_support(std::vector<Eigen::VectorXd> support) {
  BoundaryBall ball;
  if (support.empty()) return ball;
  std::sort(support.begin(), support.end(), lex_less);

  const Eigen::Index k = static_cast<Eigen::Index>(support.size());
  if (k == 1) {
    ball.center = support[0];
    ball.r2 = 0.0;
    return ball;
  }
  const Eigen::VectorXd& base = support[0];
  Eigen::MatrixXd B(base.size(), k - 1);
  Eigen::VectorXd rhs(k - 1);
  for (Eigen::Index j = 1; j < k; ++j) {
    B.col(j - 1) = support[static_cast<std::size_t>(j)] - base;
    rhs[j - 1] = B.col(j - 1).squaredNorm();
  }
  // Equidistance conditions: 2 B^T B alpha = rhs; least squares tolerates a
  // nearly dependent support.
  Eigen::MatrixXd G = 2.0 * (B.transpose() * B);
  Eigen::VectorXd alpha = G.colPivHouseholderQr().solve(rhs);
  Eigen::VectorXd offset = B * alpha;
  ball.center = base + offset;
  ball.r2 = offset.squaredNorm();
  return ball;
}

// Welzl's move-to-front recursion over pts[order[0..limit)].
BoundaryBall welzl_recurse(const std::vector<Eigen::VectorXd>& pts, std::vector<int>& order,
                           std::size_t limit, std::vector<Eigen::VectorXd>& support,
                           std::size_t support_cap) {
  BoundaryBall ball = ball_of_support(support);
  if (support.size() == support_cap) return ball;
  for (std::size_t i = 0; i < limit; ++i) {
    const int idx = order[i];
    if (ball.r2 >= 0.0 && ball_contains(ball.center, ball.r2, pts[static_cast<std::size_t>(idx)]))
      continue;
    support.push_back(pts[static_cast<std::size_t>(idx)]);
    ball = welzl_recurse(pts, order, i, support, support_cap);
    support.pop_back();
    for (std::size_t j = i; j > 0; --j) order[j] = order[j - 1];
    order[0] = idx;
  }
  return ball;
}

Ball finish(const PointSet& points, const Eigen::VectorXd& center) {
  double max_d2 = 0.0;
  for (Eigen::Index i = 0; i < points.size(); ++i)
    max_d2 = std::max(max_d2, (points.point(i) - center).squaredNorm());
  return Ball{center, std::sqrt(max_d2)};
}

Eigen::VectorXd welzl_center(const std::vector<Eigen::VectorXd>& pts, std::size_t support_cap) {
  std::vector<int> order(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) order[i] = static_cast<int>(i);
  std::vector<Eigen::VectorXd> support;
  BoundaryBall ball = welzl_recurse(pts, order, pts.size(), support, support_cap);
  return ball.center;
}

std::vector<Eigen::VectorXd> dedupe(const PointSet& points) {
  std::vector<int> idx(static_cast<std::size_t>(points.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return lex_less(points.point(a), points.point(b));
  });
  std::vector<Eigen::VectorXd> out;
  out.reserve(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    Eigen::VectorXd p = points.point(idx[i]);
    if (out.empty() || (p - out.back()).squaredNorm() > 0.0) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Ball meb(const PointSet& points) {
  const Eigen::Index n = points.size();
  const Eigen::Index d = points.dim();
  std::vector<Eigen::VectorXd> pts = dedupe(points);
  if (pts.size() == 1) return Ball{pts[0], 0.0};

  const std::size_t support_cap = static_cast<std::size_t>(d) + 1;
  const Eigen::Index effective_dim = std::min<Eigen::Index>(n - 1, d);

  if (effective_dim <= 10 || pts.size() <= 12) {
    return finish(points, welzl_center(pts, support_cap));
  }

  // Farthest-point core refinement: grow a core set, solve it exactly, stop
  // once the core ball covers everything within relative 1e-7. Exactness of
  // the sub-solves makes the loop an active-set search that usually
  // terminates with the true support; the full-set solve is the worst case.
  std::vector<Eigen::VectorXd> core{pts[0]};
  {
    double best = -1.0;
    std::size_t far = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double d2 = (pts[i] - pts[0]).squaredNorm();
      if (d2 > best) {
        best = d2;
        far = i;
      }
    }
    core.push_back(pts[far]);
  }
  Eigen::VectorXd center;
  for (;;) {
    center = welzl_center(core, support_cap);
    double core_r2 = 0.0;
    for (const auto& c : core) core_r2 = std::max(core_r2, (c - center).squaredNorm());
    double worst = -1.0;
    std::size_t far = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d2 = (pts[i] - center).squaredNorm();
      if (d2 > worst) {
        worst = d2;
        far = i;
      }
    }
    if (worst <= core_r2 * (1.0 + 1e-7) || core.size() == pts.size()) break;
    core.push_back(pts[far]);
  }
  return finish(points, center);
}

Ball meb_of_subset(const PointSet& points, std::span<const int> indices) {
  return meb(points.subset(indices));
}

}  // namespace projclust
