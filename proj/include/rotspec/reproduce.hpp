#pragma once

// End-to-end experiments. Each report carries its own pass/fail checks and,
// when an output directory is given, writes deterministic CSV/SVG files.

#include "rotspec/geometry.hpp"
#include "rotspec/potential.hpp"
#include "rotspec/transfer.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rotspec {

/// Where and what to write. No directory = compute only.
struct Output {
  std::optional<std::filesystem::path> dir;
  bool csv = true;
  bool svg = true;
  bool json = true;
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string name;
  bool pass = true;
  std::vector<Check> checks;
  /// Exact claims and numeric results, rendered as text (rationals as p/q).
  std::vector<std::pair<std::string, std::string>> values;
  /// Wall time; printed but kept out of report.json so reruns are byte-identical.
  double wall_seconds = 0;
  double budget_seconds = 0;  // 0 = no runtime target

  void add_check(std::string check_name, bool ok, std::string detail = {});
  void add_value(std::string key, std::string value);
  bool within_budget() const { return budget_seconds <= 0 || wall_seconds < budget_seconds; }
};

struct OrbitRotation {
  PeriodicOrbit orbit;
  Vec2Q rv;
};

/// Exact rotation vectors of every orbit with period <= max_period.
std::vector<OrbitRotation> orbit_rotation_vectors(const PotentialParams& p, int max_period);

/// Hull of all periodic rotation vectors vs predicted_vertices(N), exact.
/// Writes hull_N.csv and hull_N.svg.
Report rotation_set_report(const PotentialParams& p, int max_period, const Output& out = {});

/// The only orbit of period <= N with rotation vector w_k is O(1^(k+lambda-1) 2).
Report uniqueness_report(const PotentialParams& p, int k, int max_period,
                         const std::vector<OrbitRotation>* precomputed = nullptr);

/// Slopes m_k for k <= k_max: strictly monotone for k >= 2, each w_k a hull
/// vertex of {w_0..w_kmax, w_inf} and strictly below the graph of h.
Report slopes_report(const PotentialParams& p, int k_max);

/// Largest |Phi(x) - Phi(y)|_sup / d_theta(x, y) over periodic points of
/// period <= max_period, compared exactly to lipschitz_bound(p).
Report lipschitz_report(const PotentialParams& p, int max_period);

struct SpectrumScan {
  std::vector<Vec2d> targets;
  std::vector<std::optional<SpectrumSample>> samples;  // nullopt = infeasible
  std::string csv;
};

/// One dual solve per target on Phi_m; writes spectrum_m.csv.
SpectrumScan spectrum_scan(const PotentialParams& p, const std::vector<Vec2d>& targets, int memory,
                           const DualOptions& options, const Output& out = {});
std::string spectrum_csv(const SpectrumScan& scan);

/// Dual upper bounds at w_k (k in ks) and at w_inf on Phi_m; passes when
/// estimate(w_inf) - max_k estimate(w_k) >= 0.3. Writes discontinuity.csv.
Report discontinuity_report(const PotentialParams& p, const std::vector<int>& ks, int memory,
                            double alpha_cap, const Output& out = {});

/// Properties of g(x) = 1 - x1^2/x2 on { x1^2 <= x2 <= 1 }.
Report gkr_report(int samples, unsigned seed = 7);

/// log of the largest root of x^lambda = sum_{j<lambda} 2^j x^(lambda-1-j):
/// entropy of sequences with no lambda consecutive symbols from {0, 1}.
/// Computed by bisection on the characteristic polynomial.
double run_length_entropy(int lambda);

/// Named builtin target sets for the spectrum scan ("segment", "vertices").
std::vector<Vec2d> builtin_targets(const std::string& name, const PotentialParams& p, int memory);
/// Lines "x,y" (or "x y"), decimals or p/q; '#' comments.
std::vector<Vec2d> load_targets(const std::filesystem::path& path);

/// The acceptance criteria, in order. Writes every output file when `out` is
/// set. `progress` sees each report as soon as it finishes.
std::vector<Report> run_acceptance(const PotentialParams& p, const Output& out, unsigned seed = 7,
                                   const std::function<void(const Report&)>& progress = {});

/// Machine-readable pass/fail per check.
std::string report_json(const PotentialParams& p, const std::vector<Report>& reports);
/// Writes report.json when `out` asks for it.
void write_report_json(const Output& out, const PotentialParams& p, const std::vector<Report>& reports);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace rotspec
