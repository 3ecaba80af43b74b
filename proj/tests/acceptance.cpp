// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: acceptance <path-to-cli> [criterion ids...]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <string>
#include <thread>

#include <unistd.h>

#include "anitm/checks.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kCriteria = 10;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

int run_cli(const std::string& cli, const fs::path& config, const fs::path& out, int threads) {
  const std::string cmd = quoted(cli) + " sweep --config " + quoted(config.string()) + " --out " +
                          quoted(out.string()) + " --threads " + std::to_string(threads) + " > /dev/null";
  return std::system(cmd.c_str());
}

anitm::CheckResult determinism(const std::string& cli) {
  const auto start = std::chrono::steady_clock::now();
  anitm::CheckResult r{10, "sweep determinism", false, "", 0.0, 60.0};
  const fs::path dir = fs::temp_directory_path() / ("anitm_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path config = dir / "config.json";
  std::ofstream(config) << R"({
  "gauge": {"kind": "pnorm", "p": 4},
  "params": {"n": 2, "q": 2, "beta": 0.5, "lambda_fraction": 0.5},
  "search": {"knots": 24, "restarts": 6, "budget": 3000, "seed": 11, "grid_size": 12}
})";
  const int counts[] = {1, 3, 1};
  std::string first;
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const fs::path out = dir / ("run" + std::to_string(i));
    const int rc = run_cli(cli, config, out, counts[i]);
    if (rc != 0) {
      ok = false;
      detail = "cli exited with status " + std::to_string(rc);
      break;
    }
    const std::string csv = slurp(out / "sweep.csv");
    if (csv.empty()) {
      ok = false;
      detail = "empty sweep.csv";
      break;
    }
    if (i == 0) {
      first = csv;
    } else if (csv != first) {
      ok = false;
      detail = "sweep.csv differs between runs (threads " + std::to_string(counts[0]) + " vs " +
               std::to_string(counts[i]) + ")";
      break;
    }
  }
  fs::remove_all(dir);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ok) detail = "3 runs (threads 1, 3, 1) byte-identical, " + std::to_string(first.size()) + " bytes";
  r.passed = ok && r.seconds <= r.time_limit;
  if (ok && !r.passed) detail += "; over time limit";
  r.detail = detail;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <cli> [criterion ids...]\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  std::set<int> only;
  for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));

  anitm::CheckOptions options;
  options.threads = static_cast<int>(std::clamp(std::thread::hardware_concurrency(), 1u, 4u));
  options.seed = 1;

  int failed = 0;
  for (int id = 1; id <= kCriteria; ++id) {
    if (!only.empty() && !only.count(id)) continue;
    const anitm::CheckResult r = id < kCriteria ? anitm::run_check(id, options) : determinism(cli);
    if (!r.passed) ++failed;
    std::printf("criterion %2d %s  %s (%.1f s, limit %.0f s): %s\n", id, r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.seconds, r.time_limit, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, only.empty() ? static_cast<std::size_t>(kCriteria) : only.size());
  return failed == 0 ? 0 : 1;
}
