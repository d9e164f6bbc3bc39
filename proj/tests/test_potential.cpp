#include "rotspec/potential.hpp"

#include <doctest.h>

#include <sstream>
#include <string>

using namespace rotspec;

namespace {

const PotentialParams defaults{};

Vec2Q q(Rational x, Rational y) { return make_vec(x, y); }

// w_k straight from its definition: (lambda w_0 + v_1 + ... + v_k) / (k + lambda).
Vec2Q w_by_sum(const PotentialParams& p, int k) {
  Vec2Q s = make_vec(p.a * p.lambda, Rational(0));
  for (int j = 1; j <= k; ++j) s += make_vec(p.a * pow(p.theta, 2 * j), p.b * pow(p.theta, j));
  return s / Rational(k + p.lambda);
}

Word xi(const PotentialParams& p, int k) {
  return Word::parse(std::string(static_cast<std::size_t>(k + p.lambda - 1), '1') + "2");
}

}  // namespace

TEST_CASE("points u, v, w") {
  CHECK(v_point(defaults, 1) == q(Rational(1, 4), Rational(1, 2)));
  CHECK(v_point(defaults, 3) == q(Rational(1, 64), Rational(1, 8)));
  CHECK(u_point(defaults, 2) == q(Rational(1, 16), 0));
  CHECK(w_point(defaults, 0) == q(1, 0));
  CHECK(w_point(defaults, 1) == q(Rational(13, 16), Rational(1, 8)));
  CHECK(w_point(defaults, 2) == q(Rational(53, 80), Rational(3, 20)));
  CHECK(w_infinity(defaults) == q(0, 0));
  CHECK_THROWS(v_point(defaults, 0));
  CHECK_THROWS(u_point(defaults, 0));
  for (int k = 0; k <= 15; ++k) CHECK(w_point(defaults, k) == w_by_sum(defaults, k));
}

TEST_CASE("v_k decays below C theta^k") {
  for (int k = 1; k <= 30; ++k) {
    CHECK(sup_norm(v_point(defaults, k)) < defaults.C * pow(defaults.theta, k));
    CHECK(sup_norm(u_point(defaults, k)) < defaults.C * pow(defaults.theta, k));
  }
}

TEST_CASE("v_k on the graph of h, w_k below it") {
  for (int k = 1; k <= 10; ++k) {
    const Vec2Q v = v_point(defaults, k);
    CHECK_FALSE(strictly_below_h(defaults, v));
    CHECK(strictly_below_h(defaults, v - make_vec(Rational(0), Rational(1, 1 << 20))));
    CHECK(strictly_below_h(defaults, w_point(defaults, k)));
  }
}

TEST_CASE("prefix classification") {
  using namespace value_class;
  CHECK(classify_prefix(defaults, Word::parse("112")) == ValueClass{W0{}});
  CHECK(classify_prefix(defaults, Word::parse("1112")) == ValueClass{V{1}});
  CHECK(classify_prefix(defaults, Word::parse("0112")) == ValueClass{U{1}});
  CHECK(classify_prefix(defaults, Word::parse("11111")) == ValueClass{Undetermined{Rational(1, 4)}});
  CHECK(classify_prefix(defaults, Word::parse("2000")) == ValueClass{W0{}});
  CHECK(classify_prefix(defaults, Word::parse("111112")) == ValueClass{V{3}});
  CHECK(classify_prefix(defaults, Word::parse("101112")) == ValueClass{U{3}});
  CHECK_THROWS_AS(classify_prefix(defaults, Word::parse("0123", 4)), ValidationError);
}

TEST_CASE("potential on periodic points") {
  CHECK(phi_on_periodic(defaults, Word::parse("0")) == q(0, 0));
  CHECK(phi_on_periodic(defaults, Word::parse("1112")) == v_point(defaults, 1));
  CHECK(phi_on_periodic(defaults, Word::parse("2111")) == w_point(defaults, 0));
  CHECK(phi_on_periodic(defaults, Word::parse("0112")) == u_point(defaults, 1));
  CHECK(classify_periodic(defaults, Word::parse("01")) == ValueClass{value_class::WInf{}});
}

TEST_CASE("rotation vectors") {
  CHECK(rotation_vector(defaults, PeriodicOrbit(Word::parse("02"))) == w_point(defaults, 0));
  CHECK(rotation_vector(defaults, PeriodicOrbit(Word::parse("1112"))) == w_point(defaults, 1));
  CHECK(rotation_vector(defaults, PeriodicOrbit(Word::parse("0"))) == w_infinity(defaults));
  for (int k = 1; k <= 12; ++k) {
    INFO("k = " << k);
    CHECK(rotation_vector(defaults, PeriodicOrbit(xi(defaults, k))) == w_point(defaults, k));
  }
}

TEST_CASE("rotation vector equals the orbit average of phi") {
  for (const auto& o : enumerate_orbits(3, 6)) {
    Vec2Q sum = make_vec(0, 0);
    for (const auto& w : orbit_points(o)) sum += phi_on_periodic(defaults, w);
    CHECK(rotation_vector(defaults, o) == sum / Rational(static_cast<long>(o.period())));
  }
}

TEST_CASE("memory-4 table") {
  const auto t = locally_constant_table(defaults, 4);
  CHECK(t.values.size() == 81);
  CHECK(t.at(Word::parse("1112")) == q(Rational(1, 4), Rational(1, 2)));
  CHECK(t.at(Word::parse("0000")) == q(0, 0));
  CHECK(t.sup_error == Rational(1, 4));
  CHECK(truncation_error_bound(defaults, 4) == Rational(1, 2));
  for (int m = 1; m <= 10; ++m) {
    CHECK(truncation_sup_error(defaults, m) <= truncation_error_bound(defaults, m));
    if (m >= defaults.lambda) CHECK(truncation_sup_error(defaults, m) == sup_norm(v_point(defaults, m + 1 - defaults.lambda)));
  }
  CHECK(truncation_sup_error(defaults, 2) == 1);
  CHECK(PotentialTable::word_at(PotentialTable::index_of(Word::parse("1021")), 4).str() == "1021");
  CHECK_THROWS_WITH_AS(locally_constant_table(defaults, 3), doctest::Contains("memory below lambda+1"),
                       ValidationError);
  CHECK_NOTHROW(truncate_potential(defaults, 3));
}

TEST_CASE("truncations agree with the potential up to the error bound") {
  const auto t4 = truncate_potential(defaults, 4);
  const auto t7 = truncate_potential(defaults, 7);
  for (std::size_t i = 0; i < t7.values.size(); ++i) {
    const Word w = PotentialTable::word_at(i, 7);
    const Word head(std::vector<std::uint8_t>(w.symbols().begin(), w.symbols().begin() + 4));
    CHECK(sup_norm(t7.values[i] - t4.at(head)) <= t4.sup_error);
  }
  for (const auto& o : enumerate_orbits(3, 7)) {
    for (const auto& w : orbit_points(o)) {
      std::vector<std::uint8_t> s;
      for (int j = 0; j < 5; ++j) s.push_back(w[j % w.size()]);
      const auto t5 = truncate_potential(defaults, 5);
      CHECK(sup_norm(phi_on_periodic(defaults, w) - t5.at(Word(s))) <= t5.sup_error);
    }
  }
}

TEST_CASE("lipschitz bound") {
  CHECK(lipschitz_bound(defaults) == 32);
  PotentialParams wide;
  wide.C1 = 10;
  CHECK(lipschitz_bound(wide) == 80);
  PotentialParams fine;
  fine.theta = Rational(1, 4);
  CHECK(lipschitz_bound(fine) == 256);
}

TEST_CASE("parameter files") {
  std::istringstream ok("# example\na = 1\nlambda = 4\ntheta_num = 1\ntheta_den = 3\nC = 3 2\nx_rule = geometric\n");
  const auto p = parse_params(ok);
  CHECK(p.lambda == 4);
  CHECK(p.theta == Rational(1, 3));
  CHECK(p.C == Rational(3, 2));

  std::istringstream round(format_params(p));
  const auto back = parse_params(round);
  CHECK(back.theta == p.theta);
  CHECK(back.C == p.C);
  CHECK(back.lambda == p.lambda);

  auto field_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_params(in);
    } catch (const ValidationError& e) {
      return e.field();
    }
    return std::string("none");
  };
  CHECK(field_of("colour = red\n") == "colour");
  CHECK(field_of("lambda = 2\n") == "lambda");
  CHECK(field_of("lambda = 3/2\n") == "lambda");
  CHECK(field_of("theta_num = 3\ntheta_den = 2\n") == "theta");
  CHECK(field_of("a = -1\n") == "a");
  CHECK(field_of("C = 1\n") == "C");
  CHECK(field_of("x_rule = harmonic\n") == "x_rule");
  CHECK(field_of("lambda\n") == "line 1");
  CHECK(field_of("a = x\n") == "a");
}
