#include "rotspec/geometry.hpp"

#include <cmath>
#include <limits>

namespace rotspec {

std::vector<Rational> edge_slopes(std::span<const Vec2Q> ws) {
  std::vector<Rational> slopes;
  for (std::size_t k = 1; k < ws.size(); ++k) {
    const Rational dx = ws[k].x() - ws[k - 1].x();
    if (dx == 0) throw std::invalid_argument("repeated x-coordinate at index " + std::to_string(k));
    slopes.push_back((ws[k].y() - ws[k - 1].y()) / dx);
  }
  return slopes;
}

Monotonicity monotonicity(std::span<const Rational> seq) {
  if (seq.size() < 2) return Monotonicity::None;
  bool increasing = true;
  bool decreasing = true;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    increasing = increasing && seq[i - 1] < seq[i];
    decreasing = decreasing && seq[i - 1] > seq[i];
  }
  if (increasing) return Monotonicity::StrictlyIncreasing;
  if (decreasing) return Monotonicity::StrictlyDecreasing;
  return Monotonicity::None;
}

std::vector<Vec2Q> predicted_vertices(const PotentialParams& p, int max_period) {
  if (max_period < 1) throw ValidationError("max_period", "must be >= 1");
  std::vector<Vec2Q> out{w_infinity(p), w_point(p, 0)};
  // xi^k = O(1^(k+lambda-1) 2) has period k + lambda.
  for (int k = 1; k + p.lambda <= max_period; ++k) out.push_back(w_point(p, k));
  return out;
}

namespace {

struct Tagged {
  Vec2Q q;
  Vec2d d;
};

// Conversions to double are within a couple of ulps, so a clear difference
// in the doubles decides the exact comparison; near-ties fall back to Rational.
bool clearly_less(double a, double b) { return b - a > 8 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b)); }

bool lex_less_tagged(const Tagged& p, const Tagged& q) {
  if (clearly_less(p.d.x(), q.d.x())) return true;
  if (clearly_less(q.d.x(), p.d.x())) return false;
  if (p.q.x() != q.q.x()) return p.q.x() < q.q.x();
  if (clearly_less(p.d.y(), q.d.y())) return true;
  if (clearly_less(q.d.y(), p.d.y())) return false;
  return p.q.y() < q.q.y();
}

// Sign of cross(o, a, b): double evaluation with a generous static error
// bound, exact otherwise.
int orientation(const Tagged& o, const Tagged& a, const Tagged& b) {
  const double l = (a.d.x() - o.d.x()) * (b.d.y() - o.d.y());
  const double r = (a.d.y() - o.d.y()) * (b.d.x() - o.d.x());
  const double bound = 1e-13 * ((std::abs(a.d.x()) + std::abs(o.d.x())) * (std::abs(b.d.y()) + std::abs(o.d.y())) +
                                (std::abs(a.d.y()) + std::abs(o.d.y())) * (std::abs(b.d.x()) + std::abs(o.d.x())));
  const double det = l - r;
  if (det > bound) return 1;
  if (det < -bound) return -1;
  if (o.q.y().is_zero() && a.q.y().is_zero() && b.q.y().is_zero()) return 0;
  if (o.q.x() == a.q.x() && o.q.x() == b.q.x()) return 0;
  const Rational c = cross(o.q, a.q, b.q);
  return c > 0 ? 1 : (c < 0 ? -1 : 0);
}

}  // namespace

HullQ exact_hull(std::span<const Vec2Q> points) {
  if (points.empty()) throw std::invalid_argument("convex hull of an empty set");
  std::vector<Tagged> pts;
  pts.reserve(points.size());
  for (const auto& q : points) pts.push_back({q, to_double(q)});

  // Drop points clearly inside the double-precision hull: rounding moves
  // each point by ~1e-16 relative, far less than the slack.
  std::vector<Vec2d> approx;
  approx.reserve(pts.size());
  for (const auto& t : pts) approx.push_back(t.d);
  const HullD outer = convex_hull(approx);
  if (outer.size() >= 3) {
    double scale = 1;
    for (const auto& v : outer.vertices) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    const double slack = 1e-9 * scale;
    std::erase_if(pts, [&](const Tagged& t) {
      for (std::size_t e = 0; e < outer.size(); ++e) {
        const Vec2d& a = outer.vertices[e];
        const Vec2d& b = outer.vertices[(e + 1) % outer.size()];
        if (cross(a, b, t.d) / (b - a).norm() <= slack) return false;
      }
      return true;
    });
  }

  // Equal rationals convert to equal doubles: dedupe inside runs of equal
  // doubles first, then order the survivors exactly.
  std::sort(pts.begin(), pts.end(), [](const Tagged& p, const Tagged& q) {
    return p.d.x() != q.d.x() ? p.d.x() < q.d.x() : p.d.y() < q.d.y();
  });
  std::vector<Tagged> distinct;
  for (std::size_t i = 0; i < pts.size();) {
    std::size_t j = i;
    const std::size_t first = distinct.size();
    for (; j < pts.size() && pts[j].d == pts[i].d; ++j) {
      const bool seen = std::any_of(distinct.begin() + static_cast<std::ptrdiff_t>(first), distinct.end(),
                                    [&](const Tagged& t) { return t.q == pts[j].q; });
      if (!seen) distinct.push_back(std::move(pts[j]));
    }
    i = j;
  }
  pts = std::move(distinct);
  std::sort(pts.begin(), pts.end(), lex_less_tagged);
  HullQ hull;
  if (pts.size() <= 2) {
    for (auto& t : pts) hull.vertices.push_back(std::move(t.q));
    return hull;
  }
  std::vector<const Tagged*> chain(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orientation(*chain[k - 2], *chain[k - 1], p) <= 0) --k;
    chain[k++] = &p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && orientation(*chain[k - 2], *chain[k - 1], pts[i]) <= 0) --k;
    chain[k++] = &pts[i];
  }
  for (std::size_t i = 0; i + 1 < k; ++i) hull.vertices.push_back(chain[i]->q);
  return hull;
}

double gkr_g(double x1, double x2) {
  constexpr double slack = 1e-12;
  if (!(x1 * x1 <= x2 + slack) || !(x2 <= 1.0 + slack))
    throw std::domain_error("point outside { x1^2 <= x2 <= 1 }");
  if (x2 <= 0.0) return 1.0;
  return 1.0 - x1 * x1 / x2;
}

}  // namespace rotspec
