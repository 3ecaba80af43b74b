#pragma once

#include <string>

#include "anitm/maximize.hpp"

namespace anitm {

/// Provenance carried by every output file.
struct Stamp {
  std::string version;
  std::string config_hash;
};

Stamp make_stamp(const std::string& config_hash);
/// "# anitm <version> config <hash>\n"
std::string stamp_line(const Stamp& s);

/// 17 significant digits.
std::string format_number(double v);

std::string sweep_json(const SweepResult& r, const FunctionalParams& params, const Stamp& s);
/// Header `t,bracket,f,product`, one row per grid point, preceded by the stamp line.
std::string sweep_csv(const SweepResult& r, const Stamp& s);

std::string maximizer_json(const MaximizerReport& r, const FunctionalParams& params, const Stamp& s);
/// Header `restart,value`.
std::string restarts_csv(const std::vector<double>& values, const Stamp& s);

}  // namespace anitm
