#include "rotspec/geometry.hpp"
#include "rotspec/transfer.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rotspec;

namespace {

const PotentialParams defaults{};
const double log2_ = std::log(2.0);
const double log3_ = std::log(3.0);

// Largest root of x^3 = x^2 + 2x + 4 by Newton from above.
double automaton_root() {
  double x = 3;
  for (int i = 0; i < 100; ++i) x -= (x * x * x - x * x - 2 * x - 4) / (3 * x * x - 2 * x - 2);
  return x;
}

TransferGraph graph(int m) { return build_graph(truncate_potential(defaults, m)); }

}  // namespace

TEST_CASE("graph shape") {
  const auto g = build_graph(locally_constant_table(defaults, 4));
  CHECK(g.node_count() == 27);
  CHECK(g.edge_count() == 81);
  const auto e = static_cast<Eigen::Index>(PotentialTable::index_of(Word::parse("1112")));
  CHECK(g.source(e) == static_cast<Eigen::Index>(PotentialTable::index_of(Word::parse("111"))));
  CHECK(g.target(e) == static_cast<Eigen::Index>(PotentialTable::index_of(Word::parse("112"))));
  CHECK(g.value(e).isApprox(Vec2d(0.25, 0.5)));
  CHECK(g.value(0) == Vec2d(0, 0));
  CHECK_THROWS(TransferGraph(2, TransferGraph::EdgeValues::Zero(8, 2)));
}

TEST_CASE("pressure at alpha = 0") {
  for (int m : {3, 4, 6}) {
    const auto g = graph(m);
    const auto d = pressure(g, Vec2d::Zero());
    REQUIRE(d.converged);
    CHECK(d.pressure == doctest::Approx(log3_).epsilon(1e-12));
    CHECK(d.entropy == doctest::Approx(log3_).epsilon(1e-12));
    const Vec2d mean = g.values().colwise().mean().transpose();
    CHECK((d.rv - mean).norm() < 1e-12);
  }
  // Direct summation over all length-4 words.
  const auto t = truncate_potential(defaults, 4);
  Vec2Q sum = make_vec(0, 0);
  for (const auto& v : t.values) sum += v;
  CHECK((pressure(graph(4), Vec2d::Zero()).rv - to_double(Vec2Q(sum / Rational(81)))).norm() < 1e-14);
}

TEST_CASE("pressure at large alpha along x approaches the automaton entropy") {
  const auto g = graph(6);
  const double t = 60;
  const auto d = pressure(g, Vec2d(t, 0));
  REQUIRE(d.converged);
  CHECK(d.pressure - t == doctest::Approx(std::log(automaton_root())).epsilon(1e-6));
  const auto far = pressure(g, Vec2d(2000, 0));
  CHECK(far.converged);
  CHECK(std::isfinite(far.pressure));
}

TEST_CASE("gradient and equilibrium identity") {
  const auto g = graph(5);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 10; ++i) {
    const Vec2d a(u(rng), u(rng));
    const auto d = pressure(g, a);
    REQUIRE(d.converged);
    CHECK(std::abs(d.pressure - d.entropy - a.dot(d.rv)) < 1e-8);
    CHECK(d.entropy >= -1e-12);
    CHECK(d.entropy <= log3_ + 1e-12);
    const double h = 1e-5;
    for (int c = 0; c < 2; ++c) {
      Vec2d e = Vec2d::Zero();
      e[c] = h;
      const double fd = (pressure(g, a + e).pressure - pressure(g, a - e).pressure) / (2 * h);
      CHECK(fd == doctest::Approx(d.rv[c]).epsilon(1e-5));
    }
    CHECK(std::abs(d.edge_probability.sum() - 1) < 1e-12);
  }
}

TEST_CASE("markov entropy") {
  Eigen::MatrixXd two = Eigen::MatrixXd::Constant(2, 2, 0.5);
  CHECK(markov_entropy(two, Eigen::VectorXd::Constant(2, 0.5)) == doctest::Approx(log2_));
  Eigen::MatrixXd cycle(3, 3);
  cycle << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  CHECK(markov_entropy(cycle, Eigen::VectorXd::Constant(3, 1.0 / 3)) == doctest::Approx(0.0));
  Eigen::MatrixXd three = Eigen::MatrixXd::Constant(3, 3, 1.0 / 3);
  CHECK(markov_entropy(three, Eigen::VectorXd::Constant(3, 1.0 / 3)) == doctest::Approx(log3_));
  Eigen::MatrixXd bad = Eigen::MatrixXd::Constant(2, 2, 0.6);
  CHECK_THROWS_AS(markov_entropy(bad, Eigen::VectorXd::Constant(2, 0.5)), std::invalid_argument);
  Eigen::VectorXd skew(2);
  skew << 0.9, 0.2;
  CHECK_THROWS_AS(markov_entropy(two, skew), std::invalid_argument);
}

TEST_CASE("karp support") {
  const auto g = graph(6);
  CHECK(karp_support(g, Vec2d(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(karp_support(g, Vec2d(-1, 0))) < 1e-12);
  std::vector<double> w(static_cast<std::size_t>(g.edge_count()), 0.0);
  CHECK(std::abs(max_cycle_mean(g, w)) < 1e-15);
}

TEST_CASE("karp support matches enumerated orbits for m = 3") {
  const auto t = truncate_potential(defaults, 3);
  const auto g = build_graph(t);
  std::vector<Vec2d> rvs;
  for (const auto& o : enumerate_orbits(3, 9)) {
    Vec2Q s = make_vec(0, 0);
    for (const auto& w : orbit_points(o)) {
      std::vector<std::uint8_t> head;
      for (int j = 0; j < 3; ++j) head.push_back(w[j % w.size()]);
      s += t.at(Word(head));
    }
    rvs.push_back(to_double(Vec2Q(s / Rational(static_cast<long>(o.period())))));
  }
  std::mt19937 rng(2);
  std::normal_distribution<double> n(0, 1);
  for (int i = 0; i < 16; ++i) {
    const Vec2d d(n(rng), n(rng));
    double best = -1e300;
    for (const auto& r : rvs) best = std::max(best, d.dot(r));
    CHECK(std::abs(karp_support(g, d) - best) < 1e-12);
  }
}

TEST_CASE("dual at the endpoints") {
  const auto g = graph(6);
  const auto inf = dual_localized_entropy(g, Vec2d(0, 0));
  CHECK(inf.estimate >= log2_ - 1e-10);
  CHECK(inf.estimate <= log2_ + 5e-3);
  const auto zero = dual_localized_entropy(g, Vec2d(1, 0));
  CHECK(std::abs(zero.estimate - std::log(automaton_root())) < 1e-2);
}

TEST_CASE("dual is monotone in the cap and rejects infeasible targets") {
  const auto g = graph(5);
  const Vec2d w = to_double(w_point(defaults, 1));
  double previous = 1e300;
  for (double cap : {1.0, 10.0, 100.0, 1000.0}) {
    DualOptions o;
    o.alpha_cap = cap;
    const auto s = dual_localized_entropy(g, w, o);
    CHECK(s.alpha_star.norm() <= cap * (1 + 1e-12));
    CHECK(s.estimate <= previous + 1e-12);
    previous = s.estimate;
  }
  CHECK_THROWS_AS(dual_localized_entropy(g, Vec2d(2, 0)), InfeasibleTarget);
  try {
    dual_localized_entropy(g, Vec2d(0.5, -0.5));
  } catch (const InfeasibleTarget& e) {
    CHECK(e.direction().dot(Vec2d(0.5, -0.5)) > 0);
    CHECK(e.excess() > 0);
  }
}

TEST_CASE("primal entropy and weak duality for m = 3") {
  const auto g = graph(3);
  const auto uniform = pressure(g, Vec2d::Zero());
  const auto top = primal_constrained_entropy(g, uniform.rv);
  CHECK(top.entropy == doctest::Approx(log3_).epsilon(1e-6));
  const auto corner = primal_constrained_entropy(g, Vec2d(0, 0));
  CHECK(std::abs(corner.entropy - log2_) < 1e-6);
  const Vec2d mid = uniform.rv / 2;
  const auto primal = primal_constrained_entropy(g, mid);
  const auto dual = dual_localized_entropy(g, mid);
  CHECK(primal.entropy <= dual.estimate + 1e-6);
  CHECK(std::abs(primal.entropy - dual.estimate) < 1e-3);
  CHECK_THROWS(primal_constrained_entropy(g, Vec2d(2, 0)));
  CHECK_THROWS(primal_constrained_entropy(graph(4), mid));
}
