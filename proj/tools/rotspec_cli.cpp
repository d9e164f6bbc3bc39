// rotspec: command-line driver for the rotation-set and localized-entropy reports.

#include "rotspec/reproduce.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

using namespace rotspec;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kInvalid = 2;

struct Global {
  std::string params_path;
  std::string out_dir = "out";
  unsigned seed = 7;
  bool no_csv = false;
  bool no_svg = false;
  bool no_json = false;
  double tolerance = 1e-9;
};

Output output_of(const Global& g) { return Output{std::filesystem::path(g.out_dir), !g.no_csv, !g.no_svg, !g.no_json}; }

bool print_report(const Report& r, bool with_budget) {
  const bool timely = !with_budget || r.within_budget();
  const bool pass = r.pass && timely;
  {
    std::printf("%s  %s  (%.2f s", pass ? "PASS" : "FAIL", r.name.c_str(), r.wall_seconds);
    if (with_budget && r.budget_seconds > 0) std::printf(", target < %.0f s", r.budget_seconds);
    std::printf(")\n");
    for (const auto& c : r.checks)
      std::printf("      %s %s%s%s\n", c.pass ? "ok  " : "FAIL", c.name.c_str(), c.detail.empty() ? "" : ": ",
                  c.detail.c_str());
    if (!timely) std::printf("      FAIL runtime target exceeded\n");
    for (const auto& [k, v] : r.values) std::printf("      %s = %s\n", k.c_str(), v.c_str());
  }
  std::fflush(stdout);
  return pass;
}

bool print_reports(const std::vector<Report>& reports, bool with_budget) {
  bool ok = true;
  for (const auto& r : reports) ok = print_report(r, with_budget) && ok;
  return ok;
}

std::vector<Vec2d> resolve_targets(const std::string& source, const PotentialParams& p, int memory) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return builtin_targets(source.substr(prefix.size()), p, memory);
  return load_targets(source);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation sets and localized entropy of a Lipschitz potential on the full 3-shift"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--params", g.params_path, "Parameter file (key = value); defaults when omitted")
      ->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "Output directory")->envname("ROTSPEC_OUT")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--tol", g.tolerance, "Dual solver tolerance on the gradient norm")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--no-csv", g.no_csv, "Do not write CSV files");
  app.add_flag("--no-svg", g.no_svg, "Do not write SVG files");
  app.add_flag("--no-json", g.no_json, "Do not write report.json");

  int max_period = 12;
  auto* rot = app.add_subcommand("rotation-set", "Exact hull of periodic rotation vectors vs the predicted polygon");
  rot->add_option("--max-period,-N", max_period, "Largest orbit period")->check(CLI::Range(1, 14))->capture_default_str();

  int memory = 8;
  std::string targets = "builtin:segment";
  double alpha_cap = 1e3;
  auto* spectrum = app.add_subcommand("spectrum", "Dual upper bounds for the localized entropy at given targets");
  spectrum->add_option("--memory,-m", memory, "Memory of the truncated potential")->check(CLI::Range(1, 10))->capture_default_str();
  spectrum->add_option("--targets", targets, "File of 'x,y' lines, or builtin:segment / builtin:vertices")
      ->capture_default_str();
  spectrum->add_option("--alpha-cap,-T", alpha_cap, "Bound T on |alpha|")->check(CLI::PositiveNumber)->capture_default_str();

  int k_max = 4;
  int disc_memory = 9;
  double disc_cap = 1e3;
  auto* disc = app.add_subcommand("discontinuity", "Entropy gap between w_inf and the vertices w_k");
  disc->add_option("--k-max", k_max, "Largest k")->check(CLI::PositiveNumber)->capture_default_str();
  disc->add_option("--memory,-m", disc_memory, "Memory of the truncated potential")
      ->check(CLI::Range(1, 10))
      ->capture_default_str();
  disc->add_option("--alpha-cap,-T", disc_cap, "Bound T on |alpha|")->check(CLI::PositiveNumber)->capture_default_str();

  int uk = 1;
  int u_period = 12;
  auto* uniq = app.add_subcommand("uniqueness", "The only orbit with rotation vector w_k");
  uniq->add_option("--k", uk, "Index k of w_k")->capture_default_str();
  uniq->add_option("--max-period,-N", u_period, "Largest orbit period")->check(CLI::Range(1, 14))->capture_default_str();

  int samples = 10000;
  auto* gkr = app.add_subcommand("gkr", "Property checks for the planar concave usc example g");
  gkr->add_option("--samples", samples, "Random triples for the concavity check")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the full acceptance suite and write every output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }

  try {
    const PotentialParams p = g.params_path.empty() ? PotentialParams{} : load_params(g.params_path);
    p.validate();
    const Output out = output_of(g);
    DualOptions dual;
    dual.tolerance = g.tolerance;

    if (*rot) {
      const std::vector<Report> reports{rotation_set_report(p, max_period, out)};
      write_report_json(out, p, reports);
      return print_reports(reports, false) ? kPass : kCheckFailed;
    }
    if (*spectrum) {
      dual.alpha_cap = alpha_cap;
      // Validate memory before reading targets or solving anything.
      (void)locally_constant_table(p, memory);
      const auto scan = spectrum_scan(p, resolve_targets(targets, p, memory), memory, dual, out);
      std::cout << scan.csv;
      return kPass;
    }
    if (*disc) {
      std::vector<int> ks;
      for (int k = 1; k <= k_max; ++k) ks.push_back(k);
      (void)locally_constant_table(p, disc_memory);
      const std::vector<Report> reports{discontinuity_report(p, ks, disc_memory, disc_cap, out)};
      write_report_json(out, p, reports);
      return print_reports(reports, false) ? kPass : kCheckFailed;
    }
    if (*uniq) {
      const std::vector<Report> reports{uniqueness_report(p, uk, u_period)};
      write_report_json(out, p, reports);
      return print_reports(reports, false) ? kPass : kCheckFailed;
    }
    if (*gkr) {
      const std::vector<Report> reports{gkr_report(samples, g.seed)};
      write_report_json(out, p, reports);
      return print_reports(reports, false) ? kPass : kCheckFailed;
    }
    if (*verify) {
      bool ok = true;
      run_acceptance(p, out, g.seed, [&](const Report& r) { ok = print_report(r, true) && ok; });
      return ok ? kPass : kCheckFailed;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
