// Command-line front end: `stmhd run --config <file> [overrides]` and
// `stmhd verify`. Talks to the library through its C interface only.
#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "stmhd.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNotConverged = 2;

int fail(const char* what) {
  std::cerr << "stmhd: " << what << ": " << stmhd_last_error() << "\n";
  return kExitConfig;
}

int run(const std::string& config_path, const std::vector<std::pair<std::string, std::string>>& overrides) {
  stmhd_config* cfg = nullptr;
  if (stmhd_config_from_file(config_path.c_str(), &cfg) != STMHD_OK) return fail("cannot load configuration");
  for (const auto& [key, value] : overrides)
    if (!value.empty() && stmhd_config_set(cfg, key.c_str(), value.c_str()) != STMHD_OK) {
      stmhd_config_free(cfg);
      return fail(("bad value for --" + key).c_str());
    }
  if (stmhd_config_validate(cfg) != STMHD_OK) {
    stmhd_config_free(cfg);
    return fail("invalid configuration");
  }
  stmhd_results* res = nullptr;
  const stmhd_status st = stmhd_run_sweep(cfg, &res);
  const std::string out = stmhd_config_output_path(cfg);
  stmhd_config_free(cfg);
  if (st != STMHD_OK) return fail("sweep failed");

  int code = stmhd_results_all_converged(res) ? kExitOk : kExitNotConverged;
  if (out.empty()) {
    std::fputs(stmhd_results_csv(res), stdout);
  } else if (stmhd_results_write_csv(res, out.c_str()) != STMHD_OK) {
    std::cerr << "stmhd: " << stmhd_last_error() << "\n";
    code = kExitConfig;
  }
  stmhd_results_free(res);
  return code;
}

int verify() {
  int failures = 0;
  const stmhd_status st = stmhd_verify([](const char* line, void*) { std::puts(line); }, nullptr, &failures);
  if (st != STMHD_OK) return fail("verification could not run");
  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time all-at-once solver for incompressible resistive MHD"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a (dx, dt, T) sweep and write CSV");
  std::string config_path;
  std::string problem, dx, dt, T, mode, precond, out;
  run_cmd->add_option("--config", config_path, "Key-value configuration file")->required();
  run_cmd->add_option("--problem", problem, "tearing | island");
  run_cmd->add_option("--dx", dx, "Comma-separated mesh sizes, e.g. 2^-2,2^-3");
  run_cmd->add_option("--dt", dt, "Comma-separated time steps");
  run_cmd->add_option("--T", T, "Comma-separated final times");
  run_cmd->add_option("--mode", mode, "spacetime | sequential | both");
  run_cmd->add_option("--precond", precond, "PT | P | Ptilde");
  run_cmd->add_option("--out", out, "CSV output path (default: standard output)");

  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (*run_cmd)
    return run(config_path, {{"problem", problem}, {"dx", dx}, {"dt", dt}, {"T", T}, {"mode", mode}, {"precond", precond}, {"out", out}});
  if (*verify_cmd) return verify();
  return kExitConfig;
}
