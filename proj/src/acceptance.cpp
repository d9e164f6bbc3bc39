#include "rotspec/reproduce.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace rotspec {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x, const char* format = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

Report named(Report r, std::string name, double budget) {
  r.name = std::move(name);
  r.budget_seconds = budget;
  return r;
}

Report exact_rotation_set(const PotentialParams& p, const Output& out) {
  return named(rotation_set_report(p, 12, out), "exact rotation set, period <= 12", 10);
}

Report uniqueness(const PotentialParams& p) {
  const auto t0 = Clock::now();
  Report r;
  const auto rvs = orbit_rotation_vectors(p, 12);
  for (int k = 1; k <= std::min(6, 12 - p.lambda); ++k) {
    const Report one = uniqueness_report(p, k, 12, &rvs);
    for (const auto& c : one.checks) r.add_check("k=" + std::to_string(k) + ": " + c.name, c.pass, c.detail);
  }
  r.wall_seconds = seconds_since(t0);
  return named(r, "uniqueness of w_k orbits, k <= 6", 10);
}

Report entropy_at_w_inf(const PotentialParams& p, SpectrumScan& scan) {
  const auto t0 = Clock::now();
  Report r;
  // Witness: Bernoulli(1/2, 1/2) on {0, 1}. Every binary orbit has rotation
  // vector exactly w_inf, and the chain's entropy is log 2.
  bool binary_orbits_at_w_inf = true;
  for (const auto& orbit : enumerate_orbits(2, 12))
    binary_orbits_at_w_inf = binary_orbits_at_w_inf && rotation_vector(p, orbit) == w_infinity(p);
  const double h = markov_entropy(Eigen::MatrixXd::Constant(2, 2, 0.5), Eigen::VectorXd::Constant(2, 0.5));
  r.add_check("binary orbits of period <= 12 have rv = w_inf (exact)", binary_orbits_at_w_inf);
  r.add_check("witness entropy equals log 2", std::abs(h - std::numbers::ln2) <= 1e-15, num(h, "%.17g"));

  DualOptions options;
  options.alpha_cap = 1e3;
  scan = spectrum_scan(p, {to_double(w_infinity(p))}, 8, options);
  const auto& s = scan.samples.front();
  const double est = s ? s->estimate : std::nan("");
  r.add_value("estimate", num(est, "%.10f"));
  r.add_value("log2", num(std::numbers::ln2, "%.10f"));
  r.add_check("target feasible", s.has_value());
  r.add_check("dual estimate in [log 2, log 2 + 5e-3]",
              s && est >= std::numbers::ln2 - 1e-10 && est <= std::numbers::ln2 + 5e-3, num(est, "%.10f"));
  r.wall_seconds = seconds_since(t0);
  return named(r, "entropy at w_inf, m = 8", 30);
}

Report entropy_at_w0(const PotentialParams& p, SpectrumScan& scan) {
  const auto t0 = Clock::now();
  Report r;
  const double oracle = run_length_entropy(p.lambda);
  DualOptions options;
  options.alpha_cap = 1e3;
  scan = spectrum_scan(p, {to_double(w_point(p, 0))}, 8, options);
  const auto& s = scan.samples.front();
  const double est = s ? s->estimate : std::nan("");
  r.add_value("estimate", num(est, "%.10f"));
  r.add_value("run_length_oracle", num(oracle, "%.10f"));
  r.add_check("target feasible", s.has_value());
  r.add_check("|estimate - oracle| <= 1e-2", s && std::abs(est - oracle) <= 1e-2,
              num(std::abs(est - oracle), "%.3e"));
  r.wall_seconds = seconds_since(t0);
  return named(r, "entropy at w_0, m = 8", 30);
}

Report discontinuity(const PotentialParams& p, const Output& out) {
  std::vector<int> ks;
  for (int k = 1; k <= std::min(4, 9 - p.lambda - 1); ++k) ks.push_back(k);
  if (ks.empty()) {
    Report r;
    r.add_check("memory 9 leaves room for some w_k", false, "lambda too large");
    return named(r, "discontinuity at w_inf, m = 9", 120);
  }
  Report r = discontinuity_report(p, ks, 9, 1e3, out);
  // The criterion compares w_inf with w_1 specifically.
  double e_inf = 0, e_1 = 0;
  for (const auto& [k, v] : r.values) {
    if (k == "estimate(w_inf)") e_inf = std::stod(v);
    if (k == "estimate(w_1)") e_1 = std::stod(v);
  }
  r.add_check("estimate(w_inf) - estimate(w_1) >= 0.3", e_inf - e_1 >= 0.3, num(e_inf - e_1, "%.6f"));
  return named(r, "discontinuity at w_inf, m = 9", 120);
}

Report pressure_gradient(const PotentialParams& p, unsigned seed) {
  const auto t0 = Clock::now();
  Report r;
  const TransferGraph g(locally_constant_table(p, 6));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double h = 1e-5;
  double worst_rel = 0, worst_identity = 0;
  bool converged = true;
  for (int i = 0; i < 20; ++i) {
    const double radius = 5 * std::sqrt(unit(rng));
    const double angle = 2 * std::numbers::pi * unit(rng);
    const Vec2d alpha(radius * std::cos(angle), radius * std::sin(angle));
    const GibbsData at = pressure(g, alpha);
    Vec2d fd;
    for (int c = 0; c < 2; ++c) {
      Vec2d step = Vec2d::Zero();
      step[c] = h;
      const GibbsData plus = pressure(g, alpha + step, &at);
      const GibbsData minus = pressure(g, alpha - step, &at);
      converged = converged && plus.converged && minus.converged;
      fd[c] = (plus.pressure - minus.pressure) / (2 * h);
    }
    converged = converged && at.converged;
    worst_rel = std::max(worst_rel, (fd - at.rv).lpNorm<Eigen::Infinity>() / at.rv.lpNorm<Eigen::Infinity>());
    worst_identity = std::max(worst_identity, std::abs(at.pressure - (at.entropy + alpha.dot(at.rv))));
  }
  r.add_value("max_relative_error", num(worst_rel, "%.3e"));
  r.add_value("max_identity_error", num(worst_identity, "%.3e"));
  r.add_check("power iteration converged", converged);
  r.add_check("gradient matches central differences (rel <= 1e-5)", worst_rel <= 1e-5, num(worst_rel, "%.3e"));
  r.add_check("P = h + alpha . rv to 1e-8", worst_identity <= 1e-8, num(worst_identity, "%.3e"));
  r.wall_seconds = seconds_since(t0);
  return named(r, "pressure gradient, m = 6", 10);
}

// Exact orbit averages of a memory-m table: the cycle means the Karp and
// primal code see, computed symbolically.
Vec2Q orbit_mean(const PotentialTable& table, const PeriodicOrbit& orbit) {
  const Word& t = orbit.necklace();
  const std::size_t n = t.size();
  const auto m = static_cast<std::size_t>(table.memory);
  Vec2Q sum = Vec2Q::Zero();
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < m; ++i) idx = idx * 3 + t[(s + i) % n];
    sum += table.values[idx];
  }
  return sum / Rational(static_cast<long>(n));
}

PotentialTable random_table(int memory, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 100);
  PotentialTable t;
  t.memory = memory;
  t.values.resize(static_cast<std::size_t>(std::pow(3, memory)));
  for (auto& v : t.values) {
    const int x = pick(rng);
    const int y = pick(rng);
    v = Vec2Q(Rational(x, 100), Rational(y, 100));
  }
  return t;
}

TransferGraph graph_of(const PotentialTable& t) {
  TransferGraph::EdgeValues values(static_cast<Eigen::Index>(t.values.size()), 2);
  for (std::size_t e = 0; e < t.values.size(); ++e)
    values.row(static_cast<Eigen::Index>(e)) = to_double(t.values[e]).transpose();
  return TransferGraph(t.memory, std::move(values));
}

Report primal_dual(const PotentialParams& p, unsigned seed) {
  const auto t0 = Clock::now();
  Report r;
  struct Case {
    std::string label;
    PotentialTable table;
    std::vector<Vec2d> targets;
  };
  std::vector<Case> cases;

  // Phi_3 itself: its rotation set is the segment [w_inf, w_0].
  Case own{"Phi_3", truncate_potential(p, 3), {}};
  const Vec2d a = to_double(w_infinity(p)), b = to_double(w_point(p, 0));
  for (double t : {0.15, 0.3, 0.5, 0.7, 0.85}) own.targets.push_back((1 - t) * a + t * b);
  cases.push_back(std::move(own));

  // A random memory-3 table with a two-dimensional rotation set: targets
  // halfway between the centre and hull vertices of its cycle means.
  Case rnd{"random table", random_table(3, seed), {}};
  std::vector<Vec2Q> means;
  for (const auto& orbit : enumerate_orbits(3, 9)) means.push_back(orbit_mean(rnd.table, orbit));
  const HullQ hull = convex_hull(means);
  Vec2Q centre = Vec2Q::Zero();
  for (const auto& v : rnd.table.values) centre += v;
  centre /= Rational(static_cast<long>(rnd.table.values.size()));
  const Vec2d c = to_double(centre);
  rnd.targets.push_back(c);
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec2d v = to_double(hull.vertices[i * hull.size() / 4]);
    rnd.targets.push_back(0.5 * (c + v));
  }
  cases.push_back(std::move(rnd));

  double worst_gap = 0;
  bool weak = true;
  bool feasible = true;
  for (const auto& cs : cases) {
    const TransferGraph g = graph_of(cs.table);
    const SupportTable support = support_table(g);
    for (const auto& w : cs.targets) {
      const SpectrumSample dual = dual_localized_entropy(g, w, {}, &support);
      const PrimalSolution primal = primal_constrained_entropy(g, w);
      feasible = feasible && primal.converged;
      worst_gap = std::max(worst_gap, std::abs(primal.entropy - dual.estimate));
      weak = weak && primal.entropy <= dual.estimate + 1e-6;
      r.add_value(cs.label + " (" + num(w.x(), "%.4f") + ", " + num(w.y(), "%.4f") + ")",
                  "primal " + num(primal.entropy, "%.8f") + " dual " + num(dual.estimate, "%.8f"));
    }
  }
  r.add_check("primal flows feasible and optimal", feasible);
  r.add_check("weak duality primal <= dual", weak);
  r.add_check("|primal - dual| <= 1e-3 at interior targets", worst_gap <= 1e-3, num(worst_gap, "%.3e"));
  r.wall_seconds = seconds_since(t0);
  return named(r, "primal/dual consistency, m = 3", 30);
}

Report karp_vs_enumeration(const PotentialParams& p, unsigned seed) {
  const auto t0 = Clock::now();
  Report r;
  const PotentialTable table = truncate_potential(p, 3);
  const TransferGraph g(table);
  std::vector<Vec2d> means;
  for (const auto& orbit : enumerate_orbits(3, 9)) means.push_back(to_double(orbit_mean(table, orbit)));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  double worst = 0;
  for (int i = 0; i < 16; ++i) {
    const double t = angle(rng);
    const Vec2d d(std::cos(t), std::sin(t));
    double best = -1e300;
    for (const auto& m : means) best = std::max(best, d.dot(m));
    worst = std::max(worst, std::abs(karp_support(g, d) - best));
  }
  r.add_value("orbits", std::to_string(means.size()));
  r.add_value("max_abs_difference", num(worst, "%.3e"));
  r.add_check("karp_support = max orbit projection to 1e-12", worst <= 1e-12, num(worst, "%.3e"));
  r.wall_seconds = seconds_since(t0);
  return named(r, "Karp vs enumeration, m = 3", 10);
}

std::vector<Report> run_criteria(const PotentialParams& p, const Output& out, unsigned seed,
                                 const std::function<void(const Report&)>& progress) {
  std::vector<Report> reports;
  auto add = [&](Report r) {
    if (progress) progress(r);
    reports.push_back(std::move(r));
  };
  add(exact_rotation_set(p, out));
  add(uniqueness(p));
  add(named(slopes_report(p, 20), "slopes and extremality, k <= 20", 1));
  add(named(lipschitz_report(p, 8), "Lipschitz bound, period <= 8", 30));
  SpectrumScan at_inf, at_w0;
  add(entropy_at_w_inf(p, at_inf));
  add(entropy_at_w0(p, at_w0));
  if (out.dir && out.csv) {
    SpectrumScan both;
    for (const auto* s : {&at_inf, &at_w0}) {
      both.targets.insert(both.targets.end(), s->targets.begin(), s->targets.end());
      both.samples.insert(both.samples.end(), s->samples.begin(), s->samples.end());
    }
    write_text(*out.dir / "spectrum_8.csv", spectrum_csv(both));
  }
  add(discontinuity(p, out));
  add(pressure_gradient(p, seed));
  add(primal_dual(p, seed));
  add(karp_vs_enumeration(p, seed));
  add(named(gkr_report(10000, seed), "g counterexample", 5));
  return reports;
}

std::filesystem::path make_temp_dir() {
  std::string pattern = (std::filesystem::temp_directory_path() / "rotspec-rerun-XXXXXX").string();
  if (!mkdtemp(pattern.data())) throw std::runtime_error("cannot create a temporary directory");
  return pattern;
}

std::vector<std::filesystem::path> output_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".csv" || ext == ".json")) files.push_back(e.path().filename());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

std::vector<Report> run_acceptance(const PotentialParams& p, const Output& out, unsigned seed,
                                   const std::function<void(const Report&)>& progress) {
  Output first = out;
  std::optional<std::filesystem::path> scratch;
  if (!first.dir) {
    scratch = make_temp_dir();
    first = Output{scratch, true, true, true};
  }
  auto reports = run_criteria(p, first, seed, progress);
  write_report_json(first, p, reports);

  // Second run with the same configuration into a fresh directory.
  const auto t0 = Clock::now();
  Report det;
  const auto again_dir = make_temp_dir();
  Output again = first;
  again.dir = again_dir;
  const auto rerun = run_criteria(p, again, seed, {});
  write_report_json(again, p, rerun);
  // Compare what the rerun produced; `out` may hold unrelated older files.
  const auto files = output_files(again_dir);
  det.add_value("files", std::to_string(files.size()));
  bool same = true;
  std::string differing;
  for (const auto& f : files) {
    if (!std::filesystem::exists(*first.dir / f) || slurp(*first.dir / f) != slurp(again_dir / f)) {
      same = false;
      differing += (differing.empty() ? "" : " ") + f.string();
    }
  }
  det.add_check("CSV/JSON outputs byte-identical across two runs", same && !files.empty(),
                differing.empty() ? std::to_string(files.size()) + " files" : "differ: " + differing);
  std::filesystem::remove_all(again_dir);
  if (scratch) std::filesystem::remove_all(*scratch);
  det.wall_seconds = seconds_since(t0);
  reports.push_back(named(det, "determinism", 0));
  if (progress) progress(reports.back());

  write_report_json(out, p, reports);
  return reports;
}

}  // namespace rotspec
