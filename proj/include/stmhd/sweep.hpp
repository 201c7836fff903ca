#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stmhd/discretization.hpp"
#include "stmhd/solver.hpp"

namespace stmhd {

enum class RunMode { SpaceTime, Sequential, Both };

std::string_view to_string(RunMode m);
RunMode parse_run_mode(std::string_view name);

/// Sweep description. Text form: one `key = value` per line, `#` starts a
/// comment, lists separated by commas or blanks, numbers may be written as
/// powers such as `2^-3`. Keys:
///   problem, dx, dt, T, mode, precond, newton_tol, newton_max_iters,
///   gmres_rel_tol, gmres_abs_tol, gmres_max_iters, gmres_restart, epsilon,
///   forcing, timing, out, seed
struct ExperimentConfig {
  ProblemKind problem = ProblemKind::TearingMode;
  std::vector<double> dx, dt, T;
  RunMode mode = RunMode::SpaceTime;
  NewtonConfig newton{};
  double epsilon = 1e-3;
  ForcingMode forcing = ForcingMode::DiscreteEquilibrium;
  bool timing = true;  // off: wall_s left empty so output is reproducible
  std::string out;     // empty: standard output
  unsigned long seed = 0;

  /// Applies one key/value pair; throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Throws ConfigError when the sweep is empty or inconsistent.
  void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct ResultRow {
  std::string problem;
  double dx = 0, dt = 0, T = 0;
  int nt = 0;
  std::string mode;
  int newton = 0;
  double avg_gmres = 0;
  std::optional<int> effective_steps;
  std::optional<double> newton_ratio, gmres_ratio;
  std::string status;  // "converged", "not_converged" or "failed: <reason>"
  std::optional<double> wall_s;

  bool converged() const { return status == "converged"; }
};

/// Rows ordered by dx, then dt, then T. In "both" mode every cell yields a
/// spacetime row, a sequential row and a "both" row carrying the ratios.
/// Solver failures are recorded in the status column and the sweep goes on.
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg);

inline constexpr const char* kCsvHeader =
    "problem,dx,dt,T,Nt,mode,newton,avg_gmres,effective_steps,newton_ratio,gmres_ratio,status,wall_s";

std::string format_csv(const std::vector<ResultRow>& rows);
/// Throws IoError if the file cannot be written.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
/// Inverse of format_csv; throws IoError on a malformed document.
std::vector<ResultRow> parse_csv(const std::string& text);

}  // namespace stmhd
