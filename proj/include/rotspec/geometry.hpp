#pragma once

// Planar convex hulls and support functions, templated on the scalar so the
// same code runs on exact rationals (rotation sets) and doubles (cycle means).

#include "rotspec/potential.hpp"
#include "rotspec/rational.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

namespace rotspec {

/// Vertices in counterclockwise order starting at the lexicographically
/// smallest one; strictly convex (no collinear triples). One vertex for a
/// point, two for a segment.
template <typename Scalar>
struct Hull {
  std::vector<Vec2<Scalar>> vertices;

  std::size_t size() const noexcept { return vertices.size(); }
  friend bool operator==(const Hull&, const Hull&) = default;
};

using HullQ = Hull<Rational>;
using HullD = Hull<double>;

/// (a - o) x (b - o)
template <typename Scalar>
Scalar cross(const Vec2<Scalar>& o, const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

template <typename Scalar>
Hull<Scalar> convex_hull(std::span<const Vec2<Scalar>> points) {
  if (points.empty()) throw std::invalid_argument("convex hull of an empty set");
  std::vector<Vec2<Scalar>> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const auto& p, const auto& q) { return lex_less(p, q); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return Hull<Scalar>{std::move(pts)};

  // Andrew's monotone chain; popping on cross <= 0 drops collinear points.
  std::vector<Vec2<Scalar>> chain(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && !(cross(chain[k - 2], chain[k - 1], p) > Scalar(0))) --k;
    chain[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && !(cross(chain[k - 2], chain[k - 1], pts[i]) > Scalar(0))) --k;
    chain[k++] = pts[i];
  }
  chain.resize(k - 1);
  return Hull<Scalar>{std::move(chain)};
}

template <typename Scalar>
Hull<Scalar> convex_hull(const std::vector<Vec2<Scalar>>& points) {
  return convex_hull(std::span<const Vec2<Scalar>>(points));
}

/// Same result as convex_hull on rationals, faster on large inputs: doubles
/// filter the interior and decide comparisons unless they are near-ties.
HullQ exact_hull(std::span<const Vec2Q> points);

/// max over vertices of <vertex, direction>.
template <typename Scalar>
Scalar hull_support(const Hull<Scalar>& hull, const Vec2<Scalar>& direction) {
  if (direction.x() == Scalar(0) && direction.y() == Scalar(0))
    throw std::invalid_argument("support function needs a nonzero direction");
  if (hull.vertices.empty()) throw std::invalid_argument("empty hull");
  Scalar best = hull.vertices.front().dot(direction);
  for (const auto& v : hull.vertices) {
    Scalar s = v.dot(direction);
    if (best < s) best = s;
  }
  return best;
}

/// Exact membership test: is `p` a vertex of `hull`?
template <typename Scalar>
bool is_vertex(const Hull<Scalar>& hull, const Vec2<Scalar>& p) {
  return std::find(hull.vertices.begin(), hull.vertices.end(), p) != hull.vertices.end();
}

/// m_k = slope of the segment joining ws[k] and ws[k-1], for k = 1..n-1.
/// Throws std::invalid_argument on a repeated x-coordinate.
std::vector<Rational> edge_slopes(std::span<const Vec2Q> ws);

enum class Monotonicity { StrictlyIncreasing, StrictlyDecreasing, None };
Monotonicity monotonicity(std::span<const Rational> seq);

/// Extreme points realized by orbits of period <= max_period, in hull order:
/// w_inf, w_0, w_1, ..., w_{max_period - lambda}.
std::vector<Vec2Q> predicted_vertices(const PotentialParams& p, int max_period);

/// g(x) = 1 - x1^2 / x2 on { x1^2 <= x2 <= 1 }, g(0, 0) = 1.
/// Throws std::domain_error outside the region.
double gkr_g(double x1, double x2);

}  // namespace rotspec
