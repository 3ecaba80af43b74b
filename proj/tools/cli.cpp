// anitm command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anitm/anitm.h"

namespace {

struct Args {
  std::string config;
  std::string out;
  std::string input;
  std::string second;
  std::uint64_t seed = 0;
  int threads = 1;
  std::vector<int> only;
};

int read_config(const std::string& path, std::string& text) {
  if (path.empty()) return ANITM_OK;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read config " << path << "\n";
    return ANITM_ERR_IO;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return ANITM_OK;
}

int run(const std::string& name, const Args& a, bool seed_given) {
  std::string config;
  if (a.config.empty() && name != "check") {
    std::cerr << "error: " << name << " requires --config\n";
    return ANITM_ERR_VALIDATION;
  }
  if (int rc = read_config(a.config, config)) return rc;

  anitm_command_options o;
  anitm_command_options_default(&o);
  o.out_dir = a.out.empty() ? nullptr : a.out.c_str();
  o.input = a.input.empty() ? nullptr : a.input.c_str();
  o.second_input = a.second.empty() ? nullptr : a.second.c_str();
  o.has_seed = seed_given ? 1 : 0;
  o.seed = a.seed;
  o.threads = a.threads;
  o.only = a.only.empty() ? nullptr : a.only.data();
  o.only_count = a.only.size();

  char* summary = nullptr;
  const int rc = anitm_run_command(name.c_str(), config.c_str(), &o, &summary);
  if (summary) {
    std::fputs(summary, stdout);
    anitm_string_free(summary);
  }
  if (rc != ANITM_OK && rc != ANITM_CHECK_FAILED) std::cerr << "error: " << anitm_last_error() << "\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic Trudinger-Moser toolkit"};
  app.set_version_flag("--version", std::string(anitm_version()));
  app.require_subcommand(1);

  Args a;
  auto common = [&a](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", a.config, "JSON run configuration");
    if (config_required) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", a.out, "output directory");
    sub->add_option("--seed", a.seed, "random seed (overrides search.seed)");
    sub->add_option("--threads", a.threads, "worker threads")->check(CLI::Range(1, 1024));
  };

  auto* geometry = app.add_subcommand("geometry", "gauge constants and identity residuals");
  common(geometry, true);
  auto* symmetrize = app.add_subcommand("symmetrize", "convex symmetrization of a grid function");
  common(symmetrize, true);
  symmetrize->add_option("input", a.input, "grid file")->required();
  symmetrize->add_option("--second", a.second, "second grid for the Hardy-Littlewood check");
  auto* maximize = app.add_subcommand("maximize", "search for an extremal profile");
  common(maximize, true);
  auto* sweep = app.add_subcommand("sweep", "subcritical to critical supremum sweep");
  common(sweep, true);
  auto* check = app.add_subcommand("check", "run the invariant suite");
  common(check, false);
  check->add_option("--only", a.only, "check ids to run")->check(CLI::Range(1, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ANITM_ERR_VALIDATION;
  }

  for (auto* sub : app.get_subcommands()) {
    bool seed_given = sub->count("--seed") > 0;
    return run(sub->get_name(), a, seed_given);
  }
  return ANITM_ERR_VALIDATION;
}
