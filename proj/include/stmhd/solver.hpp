#pragma once

#include <string>
#include <vector>

#include "stmhd/gmres.hpp"
#include "stmhd/precond.hpp"

namespace stmhd {

struct NewtonConfig {
  /// Absolute tolerance on the Euclidean norm of the space-time residual. The
  /// sequential solver uses abs_tol / sqrt(N_t) per step.
  double abs_tol = 1e-10;
  int max_iters = 20;
  GmresConfig gmres{};
  PrecondVariant variant = PrecondVariant::UpperTriangularPT;
};

struct StepStats {
  int newton_iters = 0;
  int total_gmres = 0;
  bool frozen = false;  // initial residual already within tolerance
  bool converged = false;
};

struct SolveStats {
  bool converged = false;
  int newton_iters = 0;                 // total Newton iterations performed
  std::vector<int> gmres_per_newton;    // one entry per Newton iteration
  std::vector<double> residual_history; // ‖R‖ before each iteration and at exit
  bool monotone = true;                 // residual norms never increased
  std::vector<StepStats> steps;         // sequential solves only
  int effective_steps = 0;              // sequential: non-frozen steps
  double wall_seconds = 0.0;
  std::string message;

  int total_gmres() const;
  /// Mean GMRES count per Newton iteration (0 when no iteration ran).
  double avg_gmres() const;
};

struct SolveResult {
  BlockVector state;
  SolveStats stats;
};

/// Newton on the all-at-once system, GMRES right-preconditioned by the
/// selected space-time preconditioner, full steps. Starts from
/// disc.initial_state() unless an initial guess is given.
SolveResult solve_all_at_once(const Discretization& disc, const NewtonConfig& cfg);
SolveResult solve_all_at_once(const SpaceTimeSystem& system, BlockVector guess, const NewtonConfig& cfg);

/// Backward Euler time stepping, one Newton solve per step with the
/// single-step preconditioner, warm started from the previous step.
SolveResult solve_sequential(const Discretization& disc, const NewtonConfig& cfg);

struct OverheadRatios {
  double newton = 0.0;
  double gmres = 0.0;
};

/// newton: space-time Newton iterations over the sequential Newton iterations
/// per effective step; gmres: total space-time GMRES iterations over the
/// sequential GMRES iterations per effective step. Throws ConfigError when
/// the sequential run has no effective step.
OverheadRatios compute_overhead_ratios(const SolveStats& spacetime, const SolveStats& sequential);

}  // namespace stmhd
