// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "interp_lab/harness.hpp"

using namespace interp;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  std::string suite;
  std::vector<std::string> prefixes;  // empty: every check of the suite counts
  double budget_seconds;
};

bool counts(const CheckRecord& c, const std::vector<std::string>& prefixes) {
  if (prefixes.empty()) return true;
  for (const auto& p : prefixes)
    if (c.name.rfind(p, 0) == 0) return true;
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  const std::uint64_t seed = 1;
  const fs::path root = fs::temp_directory_path() / "interp_lab_acceptance";
  fs::remove_all(root);

  const std::vector<Criterion> criteria = {
      {1, "polarization", {}, 60},
      {2, "lemma-expansion", {}, 60},
      {3, "riesz-thorin", {}, 120},
      {4, "calderon-crosscheck", {}, 600},
      {5, "three-lines", {"interpolation inequality"}, 60},
      {6, "parseval", {}, 60},
      {7, "vallee-poussin", {}, 120},
      {8, "lemma3", {"(b)", "(c)"}, 300},
      {9, "lions-peetre", {}, 300},
      {10, "truncation-chain", {}, 300},
      {11, "later-transfer", {"coverage"}, 300},
      {12, "radius-bound", {}, 60},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    ExperimentConfig cfg;
    cfg.suite = c.suite;
    cfg.seed = seed;
    cfg.output_dir = (root / "a").string();
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteReport r = run_suite(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    int considered = 0, bad = 0, heuristic = 0;
    std::string first_bad;
    for (const auto& rec : r.checks) {
      if (!counts(rec, c.prefixes)) continue;
      ++considered;
      if (rec.status == CheckStatus::kHeuristic) ++heuristic;
      if (rec.status == CheckStatus::kFail) {
        if (bad++ == 0) first_bad = rec.name;
      }
    }
    const bool in_time = secs < c.budget_seconds;
    const bool ok = considered > 0 && bad == 0 && in_time;
    if (!ok) ++failed;
    std::printf("%s criterion %2d  %-20s checks=%d failed=%d heuristic=%d time=%.1fs/%.0fs%s%s\n",
                ok ? "PASS" : "FAIL", c.id, c.suite.c_str(), considered, bad, heuristic, secs, c.budget_seconds,
                first_bad.empty() ? "" : "  first failure: ", first_bad.c_str());
    std::fflush(stdout);
  }

  // 13: rerun into a second directory and compare the CSV bytes.
  int compared = 0, differing = 0;
  for (const auto& c : criteria) {
    ExperimentConfig cfg;
    cfg.suite = c.suite;
    cfg.seed = seed;
    if (c.suite == "calderon-crosscheck") cfg.params = {{"couples", 5}};
    cfg.output_dir = (root / "b").string();
    run_suite(cfg);
    if (c.suite == "calderon-crosscheck") {
      cfg.output_dir = (root / "c").string();
      run_suite(cfg);
    }
  }
  for (const auto& e : fs::directory_iterator(root / "b")) {
    if (e.path().extension() != ".csv") continue;
    const bool calderon = e.path().filename().string().rfind("calderon", 0) == 0;
    const fs::path other = (calderon ? root / "c" : root / "a") / e.path().filename();
    ++compared;
    if (!fs::exists(other) || slurp(other) != slurp(e.path())) ++differing;
  }
  const bool det = compared > 0 && differing == 0;
  if (!det) ++failed;
  std::printf("%s criterion 13  %-20s csv_files=%d differing=%d\n", det ? "PASS" : "FAIL", "determinism", compared,
              differing);

  fs::remove_all(root);
  std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
