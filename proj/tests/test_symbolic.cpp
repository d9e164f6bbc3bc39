#include "rotspec/symbolic.hpp"

#include <doctest.h>

#include <set>
#include <string>
#include <vector>

using namespace rotspec;

namespace {

// All words of length n over {0,1,2}, as base-3 digits of 0..3^n-1.
std::vector<Word> all_words(int n) {
  std::vector<Word> out;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::vector<std::uint8_t> s(n);
    for (int i = n - 1, c = code; i >= 0; --i, c /= 3) s[i] = static_cast<std::uint8_t>(c % 3);
    out.emplace_back(s);
  }
  return out;
}

// Distinct rotation classes of primitive words of length n, by brute force.
std::size_t primitive_classes(int n) {
  std::set<std::string> seen;
  for (const auto& w : all_words(n)) {
    bool primitive = true;
    for (int d = 1; d < n && primitive; ++d)
      if (n % d == 0 && w.rotated(d) == w) primitive = false;
    if (!primitive) continue;
    std::string best = w.str();
    for (int j = 1; j < n; ++j) best = std::min(best, w.rotated(j).str());
    seen.insert(best);
  }
  return seen.size();
}

}  // namespace

TEST_CASE("canonical necklace") {
  CHECK(canonical_necklace(Word::parse("210")).str() == "021");
  CHECK(canonical_necklace(Word::parse("1112")).str() == "1112");
  CHECK(canonical_necklace(Word::parse("0101")).str() == "01");
  CHECK(canonical_necklace(Word::parse("2121")).str() == "12");
  CHECK_THROWS_WITH_AS(canonical_necklace(Word{}), "empty generating segment", std::invalid_argument);
  CHECK_THROWS_AS(PeriodicOrbit(Word{}), std::invalid_argument);
}

TEST_CASE("word validation") {
  CHECK_THROWS_AS(Word::parse("013"), ValidationError);
  CHECK(Word::parse("0112").rotated(1).str() == "1120");
  CHECK(primitive_root(Word::parse("121212")).str() == "12");
  CHECK(primitive_root(Word::parse("1121")).str() == "1121");
}

TEST_CASE("orbit enumeration counts") {
  CHECK(enumerate_orbits(3, 1).size() == 3);
  const auto two = enumerate_orbits(3, 2);
  REQUIRE(two.size() == 6);
  CHECK(two[3].necklace().str() == "01");
  CHECK(two[4].necklace().str() == "02");
  CHECK(two[5].necklace().str() == "12");
  CHECK(enumerate_orbits(3, 4).size() == 32);
}

TEST_CASE("orbit enumeration matches brute force per period") {
  const auto orbits = enumerate_orbits(3, 8);
  std::vector<std::size_t> per(9, 0);
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const auto& o = orbits[i];
    ++per[o.period()];
    CHECK(canonical_necklace(o.necklace()) == o.necklace());
    if (i > 0) {
      const auto& prev = orbits[i - 1];
      const bool ordered = prev.period() < o.period() ||
                           (prev.period() == o.period() && prev.necklace() < o.necklace());
      CHECK(ordered);
    }
  }
  for (int n = 1; n <= 8; ++n) {
    INFO("period " << n);
    CHECK(per[n] == primitive_classes(n));
  }
}

TEST_CASE("orbit points") {
  auto strs = [](const PeriodicOrbit& o) {
    std::vector<std::string> s;
    for (const auto& w : orbit_points(o)) s.push_back(w.str());
    return s;
  };
  CHECK(strs(PeriodicOrbit(Word::parse("01"))) == std::vector<std::string>{"01", "10"});
  CHECK(strs(PeriodicOrbit(Word::parse("1112"))) == std::vector<std::string>{"1112", "1121", "1211", "2111"});
  CHECK(strs(PeriodicOrbit(Word::parse("0"))) == std::vector<std::string>{"0"});
  CHECK(strs(PeriodicOrbit(Word::parse("2111"))) == std::vector<std::string>{"1112", "1121", "1211", "2111"});
}

TEST_CASE("theta distance") {
  const Rational half(1, 2);
  CHECK(theta_distance(Word::parse("01"), Word::parse("0"), half) == Rational(1, 4));
  CHECK(theta_distance(Word::parse("0"), Word::parse("0"), half) == 0);
  CHECK(theta_distance(Word::parse("2"), Word::parse("0"), half) == half);
  CHECK(theta_distance(Word::parse("01"), Word::parse("0101"), half) == 0);
  CHECK_FALSE(first_difference(Word::parse("12"), Word::parse("1212")).has_value());
  CHECK(first_difference(Word::parse("001"), Word::parse("0010")) == std::optional<std::size_t>(6));
}

TEST_CASE("theta distance is an ultrametric on short periodic points") {
  std::vector<Word> pts;
  for (const auto& o : enumerate_orbits(3, 4))
    for (const auto& w : orbit_points(o)) pts.push_back(w);
  const Rational theta(1, 3);
  for (const auto& x : pts)
    for (const auto& y : pts) {
      const Rational dxy = theta_distance(x, y, theta);
      CHECK(dxy == theta_distance(y, x, theta));
      CHECK((dxy == 0) == (x == y));
      for (std::size_t z = 0; z < pts.size(); z += 7) {
        const Rational a = theta_distance(x, pts[z], theta);
        const Rational b = theta_distance(pts[z], y, theta);
        CHECK(dxy <= (a < b ? b : a));
      }
    }
}
