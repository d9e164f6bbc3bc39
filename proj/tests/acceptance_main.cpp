// Runs the acceptance suite and prints one line per criterion.
// Exit status is 0 only when every criterion passes within its runtime target.

#include "rotspec/reproduce.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>

using namespace rotspec;

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "acceptance_out";
  std::filesystem::remove_all(dir);
  int index = 0;
  int failed = 0;
  run_acceptance(PotentialParams{}, Output{dir}, 7, [&](const Report& r) {
    ++index;
    const bool ok = r.pass && r.within_budget();
    if (!ok) ++failed;
    std::printf("criterion %2d  %s  %s  (%.2f s)\n", index, ok ? "PASS" : "FAIL", r.name.c_str(), r.wall_seconds);
    for (const auto& c : r.checks)
      if (!c.pass) std::printf("              failed check: %s %s\n", c.name.c_str(), c.detail.c_str());
    if (!r.within_budget()) std::printf("              runtime target %.0f s exceeded\n", r.budget_seconds);
    std::fflush(stdout);
  });
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 && index == 12 ? EXIT_SUCCESS : EXIT_FAILURE;
}
