#include "rotspec/reproduce.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace rotspec {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x, const char* format = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::string label_of(const PotentialParams& p, const Vec2Q& v, int k_max) {
  if (v == w_infinity(p)) return "w_inf";
  for (int k = 0; k <= k_max; ++k)
    if (v == w_point(p, k)) return "w_" + std::to_string(k);
  return "";
}

bool wants(const Output& out, bool flag) { return out.dir.has_value() && flag; }

std::filesystem::path out_path(const Output& out, const std::string& file) { return *out.dir / file; }

std::string hull_csv(const PotentialParams& p, const HullQ& hull, int k_max) {
  std::ostringstream s;
  s << "index,label,x,y,x_approx,y_approx\n";
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2Q& v = hull.vertices[i];
    s << i << ',' << label_of(p, v, k_max) << ',' << to_string(v.x()) << ',' << to_string(v.y()) << ','
      << num(to_double(v.x())) << ',' << num(to_double(v.y())) << '\n';
  }
  return s.str();
}

std::string hull_svg(const PotentialParams& p, const HullQ& hull, int k_max) {
  constexpr double width = 640, height = 480, margin = 60;
  double xmax = 0, ymax = 0, xmin = 0, ymin = 0;
  for (const auto& v : hull.vertices) {
    const Vec2d d = to_double(v);
    xmax = std::max(xmax, d.x());
    ymax = std::max(ymax, d.y());
    xmin = std::min(xmin, d.x());
    ymin = std::min(ymin, d.y());
  }
  const double a = to_double(p.a), b = to_double(p.b);
  ymax = std::max(ymax, b * std::sqrt(std::max(xmax, 0.0) / a));
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  const double sx = (width - 2 * margin) / (xmax - xmin);
  const double sy = (height - 2 * margin) / (ymax - ymin);
  auto px = [&](double x) { return num(margin + (x - xmin) * sx, "%.2f"); };
  auto py = [&](double y) { return num(height - margin - (y - ymin) * sy, "%.2f"); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  s << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  s << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(0) << "\" x2=\"" << px(xmax) << "\" y2=\"" << py(0)
    << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  s << "<line x1=\"" << px(0) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(0) << "\" y2=\"" << py(ymax)
    << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  s << "<polygon fill=\"#dde6f2\" stroke=\"#1f4e8c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2d d = to_double(hull.vertices[i]);
    s << (i ? " " : "") << px(d.x()) << ',' << py(d.y());
  }
  s << "\"/>\n";
  s << "<polyline fill=\"none\" stroke=\"#b03030\" stroke-width=\"1\" points=\"";
  constexpr int curve_samples = 200;
  for (int i = 0; i <= curve_samples; ++i) {
    const double x = xmax * i / curve_samples;
    s << (i ? " " : "") << px(x) << ',' << py(b * std::sqrt(x / a));
  }
  s << "\"/>\n";
  s << "<text x=\"" << px(xmax) << "\" y=\"" << py(b * std::sqrt(xmax / a))
    << "\" dx=\"6\" font-family=\"serif\" font-size=\"13\" fill=\"#b03030\">h</text>\n";
  for (const auto& v : hull.vertices) {
    const Vec2d d = to_double(v);
    s << "<circle cx=\"" << px(d.x()) << "\" cy=\"" << py(d.y()) << "\" r=\"2.5\" fill=\"#1f4e8c\"/>\n";
    const std::string label = label_of(p, v, k_max);
    if (!label.empty())
      s << "<text x=\"" << px(d.x()) << "\" y=\"" << py(d.y())
        << "\" dx=\"4\" dy=\"14\" font-family=\"serif\" font-size=\"11\">" << label << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace

void Report::add_check(std::string check_name, bool ok, std::string detail) {
  pass = pass && ok;
  checks.push_back({std::move(check_name), ok, std::move(detail)});
}

void Report::add_value(std::string key, std::string value) { values.emplace_back(std::move(key), std::move(value)); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

std::vector<OrbitRotation> orbit_rotation_vectors(const PotentialParams& p, int max_period) {
  std::vector<OrbitRotation> out;
  for (auto& orbit : enumerate_orbits(3, max_period)) {
    Vec2Q rv = rotation_vector(p, orbit);
    out.push_back({std::move(orbit), std::move(rv)});
  }
  return out;
}

Report rotation_set_report(const PotentialParams& p, int max_period, const Output& out) {
  if (max_period < 1) throw ValidationError("max_period", "must be >= 1");
  const auto t0 = Clock::now();
  Report r;
  r.name = "rotation-set N=" + std::to_string(max_period);

  const auto rvs = orbit_rotation_vectors(p, max_period);
  std::vector<Vec2Q> points;
  points.reserve(rvs.size());
  for (const auto& o : rvs) points.push_back(o.rv);
  const HullQ hull = exact_hull(points);
  const auto predicted = predicted_vertices(p, max_period);
  const HullQ expected = convex_hull(predicted);

  r.add_value("orbits", std::to_string(rvs.size()));
  r.add_value("hull_vertices", std::to_string(hull.size()));
  std::string listing;
  for (const auto& v : hull.vertices) listing += (listing.empty() ? "" : " ") + to_string(v);
  r.add_value("vertices", listing);
  r.add_check("every predicted point is a vertex", expected.size() == predicted.size(),
              std::to_string(expected.size()) + " of " + std::to_string(predicted.size()));
  r.add_check("hull equals predicted polygon (exact)", hull == expected,
              std::to_string(hull.size()) + " vertices");

  const int k_max = std::max(0, max_period - p.lambda);
  const std::string stem = "hull_" + std::to_string(max_period);
  if (wants(out, out.csv)) write_text(out_path(out, stem + ".csv"), hull_csv(p, hull, k_max));
  if (wants(out, out.svg)) write_text(out_path(out, stem + ".svg"), hull_svg(p, hull, k_max));
  r.wall_seconds = seconds_since(t0);
  return r;
}

Report uniqueness_report(const PotentialParams& p, int k, int max_period,
                         const std::vector<OrbitRotation>* precomputed) {
  if (k < 1) throw ValidationError("k", "must be >= 1");
  if (k + p.lambda > max_period) throw ValidationError("k", "k + lambda must not exceed max_period");
  const auto t0 = Clock::now();
  Report r;
  r.name = "uniqueness k=" + std::to_string(k) + " N=" + std::to_string(max_period);

  std::vector<OrbitRotation> local;
  if (!precomputed) local = orbit_rotation_vectors(p, max_period);
  const auto& rvs = precomputed ? *precomputed : local;

  std::vector<std::uint8_t> xi(static_cast<std::size_t>(k + p.lambda - 1), 1);
  xi.push_back(2);
  const PeriodicOrbit expected{Word(xi)};
  const Vec2Q target = w_point(p, k);

  std::vector<std::string> hits;
  bool only_expected = true;
  for (const auto& o : rvs) {
    if (o.orbit.period() > static_cast<std::size_t>(max_period) || o.rv != target) continue;
    hits.push_back(o.orbit.necklace().str());
    only_expected = only_expected && o.orbit == expected;
  }
  std::string joined;
  for (const auto& h : hits) joined += (joined.empty() ? "" : " ") + h;
  r.add_value("w_k", to_string(target));
  r.add_value("orbits_with_rv_w_k", joined);
  r.add_check("exactly one orbit has rv = w_k", hits.size() == 1, std::to_string(hits.size()) + " found");
  r.add_check("that orbit is " + expected.necklace().str(), !hits.empty() && only_expected, joined);
  r.wall_seconds = seconds_since(t0);
  return r;
}

Report slopes_report(const PotentialParams& p, int k_max) {
  if (k_max < 2) throw ValidationError("k_max", "must be >= 2");
  const auto t0 = Clock::now();
  Report r;
  r.name = "slopes k<=" + std::to_string(k_max);

  std::vector<Vec2Q> ws;
  for (int k = 0; k <= k_max; ++k) ws.push_back(w_point(p, k));
  const auto slopes = edge_slopes(ws);
  const Monotonicity mono = monotonicity(slopes);
  r.add_value("m_1", to_string(slopes[0]));
  r.add_value("m_2", to_string(slopes[1]));
  r.add_value("m_" + std::to_string(k_max), to_string(slopes.back()));
  r.add_check("slopes strictly monotone", mono != Monotonicity::None,
              mono == Monotonicity::StrictlyIncreasing   ? "increasing"
              : mono == Monotonicity::StrictlyDecreasing ? "decreasing"
                                                         : "not monotone");

  std::vector<Vec2Q> pts = ws;
  pts.push_back(w_infinity(p));
  const HullQ hull = convex_hull(pts);
  int missing = -1;
  for (int k = 0; k <= k_max && missing < 0; ++k)
    if (!is_vertex(hull, ws[static_cast<std::size_t>(k)])) missing = k;
  r.add_check("every w_k is a hull vertex", missing < 0,
              missing < 0 ? std::to_string(hull.size()) + " vertices" : "w_" + std::to_string(missing) + " is not");

  int above = -1;
  for (int k = 1; k <= k_max && above < 0; ++k)
    if (!strictly_below_h(p, ws[static_cast<std::size_t>(k)])) above = k;
  r.add_check("w_k strictly below h for k >= 1", above < 0, above < 0 ? "" : "fails at k=" + std::to_string(above));
  r.wall_seconds = seconds_since(t0);
  return r;
}

Report lipschitz_report(const PotentialParams& p, int max_period) {
  if (max_period < 1) throw ValidationError("max_period", "must be >= 1");
  const auto t0 = Clock::now();
  Report r;
  r.name = "lipschitz N=" + std::to_string(max_period);

  // Each periodic point is expanded over a window long enough to contain the
  // first difference with any other point (lcm of two periods <= N(N-1)).
  const std::size_t window = static_cast<std::size_t>(max_period) * std::max(max_period - 1, 1);
  std::vector<std::vector<std::uint8_t>> seqs;
  std::vector<int> cls;
  std::vector<Vec2Q> class_values;
  std::map<std::string, int> class_ids;
  for (const auto& orbit : enumerate_orbits(3, max_period)) {
    for (const auto& point : orbit_points(orbit)) {
      std::vector<std::uint8_t> s(window);
      for (std::size_t i = 0; i < window; ++i) s[i] = point[i % point.size()];
      const Vec2Q v = phi_on_periodic(p, point);
      const auto [it, fresh] = class_ids.emplace(to_string(v), static_cast<int>(class_values.size()));
      if (fresh) class_values.push_back(v);
      seqs.push_back(std::move(s));
      cls.push_back(it->second);
    }
  }

  // Ratios depend only on (class_i, class_j, first difference index).
  const std::size_t nc = class_values.size();
  std::vector<char> seen(nc * nc * (window + 1), 0);
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (std::size_t j = i + 1; j < seqs.size(); ++j) {
      if (cls[i] == cls[j]) continue;
      const auto& x = seqs[i];
      const auto& y = seqs[j];
      std::size_t k = 0;
      while (x[k] == y[k]) ++k;  // distinct periodic points differ inside the window
      const auto lo = static_cast<std::size_t>(std::min(cls[i], cls[j]));
      const auto hi = static_cast<std::size_t>(std::max(cls[i], cls[j]));
      seen[(lo * nc + hi) * (window + 1) + k + 1] = 1;
    }
  }
  Rational best = 0;
  for (std::size_t lo = 0; lo < nc; ++lo)
    for (std::size_t hi = lo + 1; hi < nc; ++hi) {
      const Rational diff = sup_norm(Vec2Q(class_values[lo] - class_values[hi]));
      for (std::size_t k = 1; k <= window; ++k)
        if (seen[(lo * nc + hi) * (window + 1) + k]) {
          const Rational ratio = diff / pow(p.theta, static_cast<int>(k));
          if (best < ratio) best = ratio;
        }
    }
  const Rational bound = lipschitz_bound(p);
  r.add_value("points", std::to_string(seqs.size()));
  r.add_value("value_classes", std::to_string(nc));
  r.add_value("max_ratio", to_string(best));
  r.add_value("bound", to_string(bound));
  r.add_check("max ratio <= bound (exact)", best <= bound, to_string(best) + " <= " + to_string(bound));
  r.wall_seconds = seconds_since(t0);
  return r;
}

SpectrumScan spectrum_scan(const PotentialParams& p, const std::vector<Vec2d>& targets, int memory,
                           const DualOptions& options, const Output& out) {
  const PotentialTable table = locally_constant_table(p, memory);
  const TransferGraph g(table);
  const SupportTable support = support_table(g);
  SpectrumScan scan;
  scan.targets = targets;
  for (const auto& w : targets) {
    try {
      check_feasible(support, w);
    } catch (const InfeasibleTarget&) {
      scan.samples.emplace_back(std::nullopt);
      continue;
    }
    scan.samples.emplace_back(dual_localized_entropy(g, w, options, &support));
  }
  scan.csv = spectrum_csv(scan);
  if (wants(out, out.csv)) write_text(out_path(out, "spectrum_" + std::to_string(memory) + ".csv"), scan.csv);
  return scan;
}

std::string spectrum_csv(const SpectrumScan& scan) {
  std::ostringstream s;
  s << "wx,wy,estimate_nats,alpha1,alpha2,converged,iterations\n";
  for (std::size_t i = 0; i < scan.targets.size(); ++i) {
    const Vec2d& w = scan.targets[i];
    s << num(w.x()) << ',' << num(w.y()) << ',';
    if (!scan.samples[i]) {
      s << "nan,nan,nan,infeasible,0\n";
      continue;
    }
    const SpectrumSample& x = *scan.samples[i];
    s << num(x.estimate, "%.10f") << ',' << num(x.alpha_star.x(), "%.6f") << ',' << num(x.alpha_star.y(), "%.6f")
      << ',' << (x.converged ? "true" : "false") << ',' << x.iterations << '\n';
  }
  return s.str();
}

Report discontinuity_report(const PotentialParams& p, const std::vector<int>& ks, int memory, double alpha_cap,
                            const Output& out) {
  if (ks.empty()) throw ValidationError("k", "empty list");
  for (int k : ks) {
    if (k < 1) throw ValidationError("k", "must be >= 1");
    if (k > memory - p.lambda - 1) throw ValidationError("k", "must not exceed memory - lambda - 1");
  }
  if (!(alpha_cap > 0)) throw ValidationError("alpha_cap", "must be positive");
  const auto t0 = Clock::now();
  Report r;
  r.name = "discontinuity m=" + std::to_string(memory);

  const PotentialTable table = locally_constant_table(p, memory);
  const TransferGraph g(table);
  const SupportTable support = support_table(g);
  DualOptions options;
  options.alpha_cap = alpha_cap;

  // Lower witness at w_inf: the Bernoulli(1/2, 1/2) measure on {0, 1}. Every
  // word without a 2 carries the value w_inf, so its rotation vector is w_inf.
  bool binary_words_at_w_inf = true;
  for (std::size_t e = 0; e < table.values.size(); ++e) {
    const Word word = PotentialTable::word_at(e, memory);
    bool has_two = false;
    for (std::size_t i = 0; i < word.size(); ++i) has_two = has_two || word[i] == 2;
    if (!has_two) binary_words_at_w_inf = binary_words_at_w_inf && table.values[e] == w_infinity(p);
  }
  const Eigen::MatrixXd fair = Eigen::MatrixXd::Constant(2, 2, 0.5);
  const double witness_inf = markov_entropy(fair, Eigen::VectorXd::Constant(2, 0.5));

  struct Row {
    std::string label;
    Vec2Q w;
    SpectrumSample sample;
    double limit;
    double witness;
  };
  std::vector<Row> rows;
  const Vec2Q winf = w_infinity(p);
  rows.push_back({"w_inf", winf, dual_localized_entropy(g, to_double(winf), options, &support), std::numbers::ln2,
                  witness_inf});
  for (int k : ks) {
    // The periodic orbit 1^(k+lambda-1) 2 is a zero-entropy witness.
    const Vec2Q wk = w_point(p, k);
    rows.push_back({"w_" + std::to_string(k), wk, dual_localized_entropy(g, to_double(wk), options, &support), 0.0,
                    0.0});
  }
  rows.front().sample.primal_witness = witness_inf;

  double worst_k = -1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) worst_k = std::max(worst_k, rows[i].sample.estimate);
  const double gap = rows.front().sample.estimate - worst_k;

  std::ostringstream csv;
  csv << "target,wx,wy,wx_approx,wy_approx,estimate_nats,limit_value_nats,witness_nats,alpha1,alpha2,converged,"
         "iterations\n";
  for (const auto& row : rows) {
    csv << row.label << ',' << to_string(row.w.x()) << ',' << to_string(row.w.y()) << ','
        << num(to_double(row.w.x())) << ',' << num(to_double(row.w.y())) << ','
        << num(row.sample.estimate, "%.10f") << ',' << num(row.limit, "%.10f") << ','
        << num(row.witness, "%.10f") << ',' << num(row.sample.alpha_star.x(), "%.6f") << ','
        << num(row.sample.alpha_star.y(), "%.6f") << ',' << (row.sample.converged ? "true" : "false") << ','
        << row.sample.iterations << '\n';
    r.add_value("estimate(" + row.label + ")", num(row.sample.estimate, "%.10f"));
  }
  r.add_value("gap", num(gap, "%.10f"));
  r.add_value("limit_gap", num(std::numbers::ln2, "%.10f"));

  r.add_check("binary words carry w_inf (exact)", binary_words_at_w_inf);
  r.add_check("witness entropy at w_inf is log 2", std::abs(witness_inf - std::numbers::ln2) <= 1e-15,
              num(witness_inf, "%.17g"));
  bool bounds_ok = true;
  for (const auto& row : rows) bounds_ok = bounds_ok && row.sample.estimate >= row.witness - 1e-10;
  r.add_check("estimates dominate witnesses", bounds_ok);
  r.add_check("gap >= 0.3 nats", gap >= 0.3, num(gap, "%.6f"));

  if (wants(out, out.csv)) write_text(out_path(out, "discontinuity.csv"), csv.str());
  r.wall_seconds = seconds_since(t0);
  return r;
}

Report gkr_report(int samples, unsigned seed) {
  if (samples < 1000) throw ValidationError("samples", "must be >= 1000");
  const auto t0 = Clock::now();
  Report r;
  r.name = "gkr samples=" + std::to_string(samples);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto sample_point = [&] {
    const double x1 = 2 * unit(rng) - 1;
    const double x2 = x1 * x1 + (1 - x1 * x1) * unit(rng);
    return Vec2d(x1, x2);
  };

  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const Vec2d x = sample_point(), y = sample_point();
    const double t = unit(rng);
    const Vec2d z = t * x + (1 - t) * y;
    const double violation = t * gkr_g(x.x(), x.y()) + (1 - t) * gkr_g(y.x(), y.y()) - gkr_g(z.x(), z.y());
    worst = std::max(worst, violation);
  }
  r.add_value("max_concavity_violation", num(worst, "%.3e"));
  r.add_check("concave on random triples", worst <= 1e-12, num(worst, "%.3e"));

  bool parabola_zero = true;
  for (double x1 : {1e-3, -1e-3, 1e-2, 0.1, -0.5, 0.9, 1.0}) parabola_zero = parabola_zero && gkr_g(x1, x1 * x1) == 0.0;
  r.add_check("g = 0 on the parabola", parabola_zero);

  bool axis_one = true;
  for (int i = 1; i <= 100; ++i) axis_one = axis_one && gkr_g(0.0, i / 100.0) == 1.0;
  r.add_check("g(0, x2) = 1 for x2 > 0", axis_one);
  r.add_check("g(0, 0) = 1", gkr_g(0.0, 0.0) == 1.0);

  // Along the segment from (0.9, 0.81) to the origin g takes every value in [0, 1].
  std::vector<double> values;
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    values.push_back(gkr_g(0.9 * t, 0.81 * t));
  }
  std::sort(values.begin(), values.end());
  double mesh = std::max(values.front(), 1 - values.back());
  for (std::size_t i = 1; i < values.size(); ++i) mesh = std::max(mesh, values[i] - values[i - 1]);
  r.add_value("segment_min", num(values.front()));
  r.add_value("segment_max", num(values.back()));
  r.add_check("segment covers [0, 1] with mesh <= 0.02", mesh <= 0.02, num(mesh, "%.4f"));
  r.wall_seconds = seconds_since(t0);
  return r;
}

double run_length_entropy(int lambda) {
  if (lambda < 1) throw ValidationError("lambda", "must be >= 1");
  auto f = [lambda](double x) {
    double rhs = 0;
    for (int j = 0; j < lambda; ++j) rhs = rhs * x + std::ldexp(1.0, j);
    return std::pow(x, lambda) - rhs;
  };
  // f(1) <= 0 and f(3) = 2^lambda > 0.
  double lo = 1, hi = 3;
  for (int i = 0; i < 200 && hi - lo > 0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0 ? hi : lo) = mid;
  }
  return std::log(0.5 * (lo + hi));
}

std::vector<Vec2d> builtin_targets(const std::string& name, const PotentialParams& p, int memory) {
  const auto vertices = predicted_vertices(p, memory);
  if (name == "vertices") {
    std::vector<Vec2d> out;
    for (const auto& v : vertices) out.push_back(to_double(v));
    return out;
  }
  if (name == "segment") {
    Vec2Q centroid = Vec2Q::Zero();
    for (const auto& v : vertices) centroid += v;
    centroid /= Rational(static_cast<long>(vertices.size()));
    const Vec2d c = to_double(centroid), e = to_double(w_infinity(p));
    std::vector<Vec2d> out;
    constexpr int samples = 10;
    for (int i = 0; i < samples; ++i) {
      const double t = static_cast<double>(i) / (samples - 1);
      out.push_back((1 - t) * c + t * e);
    }
    return out;
  }
  throw ValidationError("targets", "unknown builtin '" + name + "' (use segment or vertices)");
}

std::vector<Vec2d> load_targets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("targets", "cannot open " + path.string());
  auto parse_number = [](const std::string& token, int line) {
    try {
      if (token.find('/') != std::string::npos) return to_double(parse_rational(token));
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size() || !std::isfinite(v)) throw std::invalid_argument(token);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("targets", "line " + std::to_string(line) + ": bad number '" + token + "'");
    }
  };
  std::vector<Vec2d> out;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw ValidationError("targets", "line " + std::to_string(n) + ": expected two coordinates");
    out.emplace_back(parse_number(tokens[0], n), parse_number(tokens[1], n));
  }
  if (out.empty()) throw ValidationError("targets", "no targets in " + path.string());
  return out;
}

std::string report_json(const PotentialParams& p, const std::vector<Report>& reports) {
  nlohmann::ordered_json j;
  j["parameters"] = {{"a", to_string(p.a)},   {"b", to_string(p.b)},   {"lambda", p.lambda},
                     {"theta", to_string(p.theta)}, {"C", to_string(p.C)}, {"C1", to_string(p.C1)},
                     {"x_rule", "geometric"}};
  bool all = true;
  auto& list = j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json jr;
    jr["name"] = r.name;
    jr["pass"] = r.pass;
    auto& checks = jr["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    auto& values = jr["values"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.values) values[k] = v;
    list.push_back(std::move(jr));
    all = all && r.pass;
  }
  j["pass"] = all;
  return j.dump(2) + "\n";
}

void write_report_json(const Output& out, const PotentialParams& p, const std::vector<Report>& reports) {
  if (wants(out, out.json)) write_text(out_path(out, "report.json"), report_json(p, reports));
}

}  // namespace rotspec
