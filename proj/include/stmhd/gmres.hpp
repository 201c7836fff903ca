#pragma once

#include <functional>
#include <vector>

#include "stmhd/sparse.hpp"

namespace stmhd {

struct GmresConfig {
  double rel_tol = 1e-2;
  double abs_tol = 1e-14;
  int max_iters = 500;
  int restart = 0;  // 0: full GMRES
};

struct GmresResult {
  Vector x;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // ‖r0‖ followed by one estimate per iteration
  double true_residual = 0.0;
};

using LinearOperator = std::function<Vector(const Vector&)>;

/// Right-preconditioned GMRES: iterates on A P^{-1} y = b with x = P^{-1} y,
/// so the monitored residual is the true residual of A x = b. Stops at
/// ‖r‖ <= max(rel_tol ‖r0‖, abs_tol), confirmed on the recomputed residual.
/// Throws BreakdownError when NaN or Inf shows up in the Arnoldi process.
GmresResult gmres(const LinearOperator& apply_A, const LinearOperator& apply_Pinv, const Vector& b, const Vector& x0,
                  const GmresConfig& cfg);

}  // namespace stmhd
