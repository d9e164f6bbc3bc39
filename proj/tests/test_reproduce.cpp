#include "rotspec/reproduce.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace rotspec;

namespace {

const PotentialParams defaults{};

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("rotspec_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("rotation set report for small N") {
  for (int n : {3, 4, 5, 8}) {
    INFO("N = " << n);
    CHECK(rotation_set_report(defaults, n).pass);
  }
  const auto dir = scratch("hull");
  const auto r = rotation_set_report(defaults, 4, Output{dir});
  CHECK(r.pass);
  const std::string csv = slurp(dir / "hull_4.csv");
  CHECK(csv.rfind("index,label,x,y,x_approx,y_approx\n", 0) == 0);
  CHECK(csv.find("13/16,1/8") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "hull_4.svg"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("uniqueness report") {
  CHECK(uniqueness_report(defaults, 1, 8).pass);
  CHECK(uniqueness_report(defaults, 2, 8).pass);
  CHECK(uniqueness_report(defaults, 5, 8).pass);
}

TEST_CASE("slopes and lipschitz reports") {
  CHECK(slopes_report(defaults, 20).pass);
  CHECK(lipschitz_report(defaults, 6).pass);
}

TEST_CASE("run-length entropy oracle") {
  // lambda = 3: x^3 = x^2 + 2x + 4.
  const double x = std::exp(run_length_entropy(3));
  CHECK(std::abs(x * x * x - x * x - 2 * x - 4) < 1e-9);
  CHECK(run_length_entropy(3) == doctest::Approx(0.9032070555).epsilon(1e-9));
  // Longer runs allowed: entropy grows toward log 3.
  CHECK(run_length_entropy(4) > run_length_entropy(3));
  CHECK(run_length_entropy(12) < std::log(3.0));
}

TEST_CASE("targets") {
  const auto dir = scratch("targets");
  std::filesystem::create_directories(dir);
  write_text(dir / "t.txt", "# header\n0.5,0.1\n1/4 1/8\n\n");
  const auto t = load_targets(dir / "t.txt");
  REQUIRE(t.size() == 2);
  CHECK(t[1] == Vec2d(0.25, 0.125));
  write_text(dir / "bad.txt", "0.5\n");
  CHECK_THROWS_AS(load_targets(dir / "bad.txt"), ValidationError);
  CHECK_THROWS_AS(load_targets(dir / "missing.txt"), ValidationError);
  CHECK(builtin_targets("segment", defaults, 6).size() == 10);
  CHECK_THROWS(builtin_targets("nowhere", defaults, 6));
  std::filesystem::remove_all(dir);
}

TEST_CASE("spectrum scan marks infeasible rows") {
  DualOptions o;
  const auto scan = spectrum_scan(defaults, {Vec2d(0, 0), Vec2d(3, 3)}, 5, o);
  REQUIRE(scan.samples.size() == 2);
  CHECK(scan.samples[0].has_value());
  CHECK_FALSE(scan.samples[1].has_value());
  CHECK(scan.csv.rfind("wx,wy,estimate_nats,alpha1,alpha2,converged,iterations\n", 0) == 0);
  CHECK(scan.csv.find("infeasible") != std::string::npos);
}

TEST_CASE("discontinuity report at small memory") {
  const auto r = discontinuity_report(defaults, {1}, 6, 1e3);
  CHECK(r.pass);
  CHECK_THROWS_AS(discontinuity_report(defaults, {3}, 6, 1e3), ValidationError);
  CHECK_THROWS_AS(discontinuity_report(defaults, {1}, 6, 0), ValidationError);
}

TEST_CASE("gkr report") {
  const auto r = gkr_report(1000, 7);
  CHECK(r.pass);
}

TEST_CASE("report json is stable") {
  const std::vector<Report> reports{slopes_report(defaults, 5)};
  const auto a = report_json(defaults, reports);
  CHECK(a == report_json(defaults, {slopes_report(defaults, 5)}));
  CHECK(a.find("\"pass\": true") != std::string::npos);
  CHECK(a.find("wall") == std::string::npos);
}
