#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anitm/finsler.hpp"

namespace anitm {

/// The l^inf gauge sampled on `directions` angles with polygon interpolation; its polar is l^1.
FinslerNorm max_gauge_2d(int directions = 720);
/// sqrt(2c^2 + s^2) + 0.5 sqrt(c^2 + cs + 2s^2) tabulated on `directions` angles (cubic).
FinslerNorm smooth_sampled_gauge_2d(int directions = 720);

struct CheckOptions {
  int threads = 1;
  std::uint64_t seed = 1;
};

struct CheckResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;     // measured quantities against their tolerances
  double seconds;
  double time_limit;      // seconds; exceeding it fails the check
};

/// Number of library-level checks (ids 1..check_count()).
int check_count();
std::string check_name(int id);
/// Runs one check. Never throws; errors are reported as a failed result.
CheckResult run_check(int id, const CheckOptions& options);

}  // namespace anitm
