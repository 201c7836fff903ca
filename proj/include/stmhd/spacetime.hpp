#pragma once

#include <vector>

#include "stmhd/discretization.hpp"

namespace stmhd {

/// State-dependent blocks of one time slab, linearized at (u^k, j^k, A^k).
struct SlabBlocks {
  SparseMatrix Fu;  // M_u/dt + mu K_u + W_u + dW_u, identity rows at constrained DOFs
  SparseMatrix Zj;  // depends on A^k
  SparseMatrix ZA;  // depends on j^k
  SparseMatrix Y;   // depends on A^k
  SparseMatrix FA;  // M_A/dt + (eta/mu0) K_A + W_A, identity rows at Dirichlet DOFs
  Vector u, A;      // linearization point, kept for the preconditioner
};

/// All-at-once Jacobian: per-slab blocks plus the shared blocks held by the
/// discretization. Slab k couples to slab k-1 through -M/dt only.
class SpaceTimeJacobian {
 public:
  SpaceTimeJacobian(const Discretization& disc, std::vector<SlabBlocks> slabs);

  const Discretization& disc() const { return *disc_; }
  int num_steps() const { return static_cast<int>(slabs_.size()); }
  const SlabBlocks& slab(int k) const { return slabs_[static_cast<std::size_t>(k)]; }

  Vector apply(const Vector& v) const;
  BlockVector apply(const BlockVector& v) const;

  /// One-slab Jacobian made of slab k's blocks.
  SpaceTimeJacobian restrict_to_slab(int k) const;

  /// Number of sparse block products performed by apply() so far.
  long block_multiplies() const { return block_multiplies_; }
  void reset_counter() const { block_multiplies_ = 0; }

 private:
  const Discretization* disc_;
  std::vector<SlabBlocks> slabs_;
  mutable long block_multiplies_ = 0;
};

/// Residual and Jacobian of the backward Euler recurrence over N_t slabs,
/// started from the initial data (u_init, A_init).
class SpaceTimeSystem {
 public:
  SpaceTimeSystem(const Discretization& disc, int num_steps, Vector u_init, Vector A_init);
  /// Full time grid, started from the problem's initial condition.
  explicit SpaceTimeSystem(const Discretization& disc);

  const Discretization& disc() const { return *disc_; }
  int num_steps() const { return nt_; }

  BlockVector residual(const BlockVector& x) const;
  SpaceTimeJacobian jacobian(const BlockVector& x) const;

 private:
  const Discretization* disc_;
  int nt_;
  Vector u_init_, A_init_;
};

}  // namespace stmhd
