#pragma once

#include <memory>

#include "stmhd/assembly.hpp"
#include "stmhd/block_vector.hpp"
#include "stmhd/boundary.hpp"
#include "stmhd/lu.hpp"
#include "stmhd/problem.hpp"

namespace stmhd {

/// How the steady source terms f (momentum) and E (induction) are built.
enum class ForcingMode {
  /// Chosen so that the interpolated equilibrium is an exact discrete steady
  /// state: f = B^T p_eq + Lorentz(j_eq, A_eq), E = -(eta/mu0) K_A A_eq.
  DiscreteEquilibrium,
  /// Galerkin projection of the continuous sources: f = 0, E = ∫ E_eq χ.
  Projected,
};

std::string_view to_string(ForcingMode mode);
ForcingMode parse_forcing_mode(std::string_view name);

/// Spatial discretization, time grid and every operator that does not depend
/// on the state. Immutable after construction.
class Discretization {
 public:
  Discretization(ProblemSpec problem, double dx, double dt, double T,
                 ForcingMode forcing = ForcingMode::DiscreteEquilibrium);

  ProblemSpec problem;
  std::shared_ptr<const Mesh> mesh;
  FESpace Vu, Vp, Vj, VA;
  FieldSizes sizes;
  double dx, dt, T;
  int num_steps;
  ForcingMode forcing;

  // Raw Galerkin operators (no boundary treatment).
  SparseMatrix Mu, Ku, B, Mp, Kp, Mj, KjA, MA, KA;

  Constraints u_bc;  // slip: normal components fixed to zero
  Constraints A_bc;  // Dirichlet data on the top side
  int pressure_pin = 0;
  double pressure_ref = 0.0;

  // Source vectors of one time step (time independent here).
  Vector f, h, E;

  // Interpolated equilibrium, its current from the j equation, and the
  // (possibly perturbed) potential at t = 0.
  Vector p_eq, j_eq, A_eq, A_init;
  double p_mean = 0.0;  // mean of the raw pressure interpolant that was removed

  // Blocks of the space-time Jacobian that never change.
  SparseMatrix Bt_c;       // B^T with constrained velocity rows cleared
  SparseMatrix B_c;        // B with the pinned pressure row cleared
  SparseMatrix Jpp;        // unit entry at the pinned pressure DOF
  SparseMatrix KjA_s;      // K_jA / mu0
  SparseMatrix Mu_dt_c;    // M_u / dt with constrained rows cleared (minus the sub-diagonal)
  SparseMatrix MA_dt_c;    // M_A / dt with Dirichlet rows cleared
  SparseMatrix Fu_base;    // M_u / dt + mu K_u
  SparseMatrix FA_base;    // M_A / dt + (eta / mu0) K_A

  LUFactor Mj_lu;

  /// Initial guess: u = 0, p = p_eq, j = j_eq, A = A_eq on every slab.
  BlockVector initial_state(int steps) const;
  BlockVector initial_state() const { return initial_state(num_steps); }

  /// Velocity at t = 0 (zero).
  Vector u_init() const { return Vector::Zero(sizes.u); }

  /// Subtracts the mean of each pressure slab (reporting convention).
  void remove_pressure_mean(BlockVector& x) const;
};

}  // namespace stmhd
