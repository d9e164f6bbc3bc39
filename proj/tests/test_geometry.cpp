#include "rotspec/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace rotspec;

namespace {

const PotentialParams defaults{};

Vec2Q q(Rational x, Rational y) { return make_vec(x, y); }

std::vector<Vec2Q> triangle() { return {q(0, 0), q(1, 0), q(Rational(13, 16), Rational(1, 8))}; }

std::vector<Vec2Q> orbit_rvs(int max_period) {
  std::vector<Vec2Q> rvs;
  for (const auto& o : enumerate_orbits(3, max_period)) rvs.push_back(rotation_vector(defaults, o));
  return rvs;
}

}  // namespace

TEST_CASE("hull examples") {
  std::vector<Vec2Q> pts{q(0, 0), q(1, 0), q(Rational(13, 16), Rational(1, 8)), q(Rational(1, 2), 0)};
  CHECK(convex_hull(pts).vertices == triangle());
  CHECK(convex_hull(std::vector<Vec2Q>{q(0, 0)}).vertices == std::vector<Vec2Q>{q(0, 0)});
  CHECK(convex_hull(std::vector<Vec2Q>{q(1, 1), q(0, 0), q(1, 1)}).size() == 2);
  CHECK_THROWS_AS(convex_hull(std::vector<Vec2Q>{}), std::invalid_argument);
}

TEST_CASE("hull of period <= 4 rotation vectors is the triangle") {
  const auto rvs = orbit_rvs(4);
  REQUIRE(rvs.size() == 32);
  CHECK(convex_hull(rvs).vertices == triangle());
  CHECK(exact_hull(rvs).vertices == triangle());
}

TEST_CASE("exact_hull agrees with the plain monotone chain") {
  const auto rvs = orbit_rvs(8);
  const auto h = convex_hull(rvs);
  CHECK(exact_hull(rvs) == h);
  CHECK(convex_hull(h.vertices) == h);

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coord(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Vec2Q> pts;
    for (int i = 0; i < 12; ++i) pts.push_back(q(Rational(coord(rng), 4), Rational(coord(rng), 3)));
    const auto a = convex_hull(pts);
    CHECK(exact_hull(pts) == a);
    CHECK(convex_hull(a.vertices) == a);
    for (std::size_t i = 0; a.size() >= 3 && i < a.size(); ++i)
      CHECK(cross(a.vertices[i], a.vertices[(i + 1) % a.size()], a.vertices[(i + 2) % a.size()]) > 0);
  }
}

TEST_CASE("support function") {
  const auto h = convex_hull(triangle());
  CHECK(hull_support(h, q(0, 1)) == Rational(1, 8));
  CHECK(hull_support(h, q(1, 0)) == 1);
  CHECK(hull_support(h, q(-1, -1)) == 0);
  CHECK_THROWS_AS(hull_support(h, q(0, 0)), std::invalid_argument);
}

TEST_CASE("edge slopes") {
  const std::vector<Vec2Q> ws{w_point(defaults, 0), w_point(defaults, 1), w_point(defaults, 2), w_point(defaults, 3)};
  const auto m = edge_slopes(ws);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == Rational(-2, 3));
  CHECK(m[1] == Rational(-1, 6));
  CHECK(m[2] == Rational(8, 207));
  const std::vector<Vec2Q> repeated{q(1, 0), q(1, 1)};
  CHECK_THROWS_AS(edge_slopes(repeated), std::invalid_argument);

  std::vector<Vec2Q> many;
  for (int k = 0; k <= 20; ++k) many.push_back(w_point(defaults, k));
  const auto slopes = edge_slopes(many);
  CHECK(monotonicity(std::span<const Rational>(slopes).subspan(1)) == Monotonicity::StrictlyIncreasing);
  const std::vector<Rational> flat{Rational(1), Rational(1)};
  CHECK(monotonicity(flat) == Monotonicity::None);
}

TEST_CASE("w_k are hull vertices") {
  std::vector<Vec2Q> pts{w_infinity(defaults)};
  for (int k = 0; k <= 20; ++k) pts.push_back(w_point(defaults, k));
  const auto h = convex_hull(pts);
  CHECK(h.size() == pts.size());
  for (const auto& w : pts) CHECK(is_vertex(h, w));
}

TEST_CASE("predicted vertices") {
  auto as_set = [](std::vector<Vec2Q> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
    return v;
  };
  const Vec2Q w0 = w_point(defaults, 0), w1 = w_point(defaults, 1), w2 = w_point(defaults, 2);
  const Vec2Q winf = w_infinity(defaults);
  CHECK(as_set(predicted_vertices(defaults, 4)) == as_set({w0, w1, winf}));
  CHECK(as_set(predicted_vertices(defaults, 5)) == as_set({w0, w1, w2, winf}));
  CHECK(as_set(predicted_vertices(defaults, 3)) == as_set({w0, winf}));
  for (int n = 3; n <= 9; ++n) {
    INFO("N = " << n);
    CHECK(as_set(exact_hull(orbit_rvs(n)).vertices) == as_set(predicted_vertices(defaults, n)));
  }
}

TEST_CASE("gkr g") {
  CHECK(gkr_g(0, 0) == 1);
  CHECK(gkr_g(0.5, 0.25) == 0);
  CHECK(gkr_g(0.5, 0.5) == doctest::Approx(0.5));
  CHECK(gkr_g(0, 0.3) == 1);
  CHECK_THROWS_AS(gkr_g(0.5, 0.2), std::domain_error);
  CHECK_THROWS_AS(gkr_g(0, 1.5), std::domain_error);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  auto sample = [&] {
    const double x2 = u(rng);
    const double s = std::sqrt(x2);
    return Vec2d(-s + 2 * s * u(rng), x2);
  };
  for (int i = 0; i < 2000; ++i) {
    const Vec2d a = sample(), b = sample(), mid = (a + b) / 2;
    if (mid.x() * mid.x() > mid.y()) continue;
    CHECK(gkr_g(mid.x(), mid.y()) >= (gkr_g(a.x(), a.y()) + gkr_g(b.x(), b.y())) / 2 - 1e-12);
  }
}
