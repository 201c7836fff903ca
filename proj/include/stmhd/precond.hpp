#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "stmhd/lu.hpp"
#include "stmhd/spacetime.hpp"

namespace stmhd {

/// Spatial average of B = curl(A k) = (dA/dy, -dA/dx) for a P1 potential,
/// computed exactly element by element.
std::array<double, 2> mean_magnetic_field(const FESpace& pot, const Vector& A);
/// ‖B̄‖² / mu0.
double alfven_scaling(const FESpace& pot, const Vector& A, double mu0);

/// Block lower-bidiagonal time-stepping operator with per-slab diagonal
/// blocks and one shared sub-diagonal block (entering with a minus sign).
/// Inversion is a sequential forward substitution with per-slab LU.
class BlockBidiagonal {
 public:
  BlockBidiagonal() = default;
  BlockBidiagonal(std::vector<SparseMatrix> diag, SparseMatrix coupling, std::string label);

  int num_steps() const { return static_cast<int>(diag_.size()); }
  int block_size() const { return static_cast<int>(coupling_.rows()); }
  const SparseMatrix& diag(int k) const { return diag_[static_cast<std::size_t>(k)]; }
  const SparseMatrix& coupling() const { return coupling_; }

  Vector apply(const Vector& x) const;
  Vector solve(const Vector& b) const;
  /// Factorizes every diagonal block now instead of on first solve.
  void factorize() const;
  SparseMatrix assemble() const;

 private:
  std::vector<SparseMatrix> diag_;
  SparseMatrix coupling_;
  std::string label_;
  mutable std::vector<LUFactor> lu_;
};

/// PCD approximation S̃_p = -K_p F_p^{-1} M_p of the pressure Schur complement.
/// On the pinned pressure DOF it acts as the identity, like the Jacobian row.
class PressureSchurApprox {
 public:
  PressureSchurApprox(const Discretization& disc, const std::vector<const Vector*>& u_slabs);

  Vector apply_inverse(const Vector& r) const;  // -M_p^{-1} F_p K_p^{-1} r
  Vector apply(const Vector& x) const;          // -K_p F_p^{-1} M_p x

  const BlockBidiagonal& Fp() const { return Fp_; }
  const SparseMatrix& Kp_pinned() const { return Kp_pinned_; }
  int num_steps() const { return Fp_.num_steps(); }

 private:
  const Discretization* disc_;
  SparseMatrix Kp_pinned_;
  LUFactor Kp_lu_, Mp_lu_;
  BlockBidiagonal Fp_;
};

/// Wave-limit approximation S̃_A = M_A F_A^{-1} C̃_A of the magnetic Schur
/// complement, with C̃_A = F_A D^{-1} F_A + diag(s_k) K_A and D the diagonal of
/// M_A. All ingredients use symmetric elimination of the Dirichlet DOFs.
class MagneticSchurApprox {
 public:
  MagneticSchurApprox(const Discretization& disc, const std::vector<const Vector*>& u_slabs,
                      const std::vector<const Vector*>& A_slabs);

  Vector apply_inverse(const Vector& r) const;  // C̃_A^{-1} F_A M_A^{-1} r
  Vector apply(const Vector& x) const;          // M_A F_A^{-1} C̃_A x
  Vector apply_C(const Vector& x) const;
  Vector solve_C(const Vector& b) const;

  int num_steps() const { return FA_.num_steps(); }
  const BlockBidiagonal& FA() const { return FA_; }
  const SparseMatrix& C_diag(int k) const { return C_diag_[static_cast<std::size_t>(k)]; }
  /// Block (k, k-1), k >= 1.
  const SparseMatrix& C_sub1(int k) const { return C_sub1_[static_cast<std::size_t>(k)]; }
  /// Block (k, k-2), identical for every k >= 2.
  const SparseMatrix& C_sub2() const { return C_sub2_; }
  const SparseMatrix& M_eliminated() const { return Ms_; }
  const SparseMatrix& K_eliminated() const { return Ks_; }
  const Vector& inverse_diagonal() const { return Dinv_; }
  double scaling(int k) const { return scaling_[static_cast<std::size_t>(k)]; }
  SparseMatrix assemble_C() const;

 private:
  const Discretization* disc_;
  SparseMatrix Ms_, Ks_;
  Vector Dinv_;
  LUFactor Ms_lu_;
  BlockBidiagonal FA_;
  std::vector<SparseMatrix> C_diag_, C_sub1_;
  SparseMatrix C_sub2_;
  std::vector<LUFactor> C_lu_;
  std::vector<double> scaling_;
};

enum class PrecondVariant { FullP, SimplifiedPtilde, UpperTriangularPT };

std::string_view to_string(PrecondVariant v);
/// Accepts "P"/"full", "Ptilde"/"simplified", "PT"/"upper" (case-insensitive).
PrecondVariant parse_precond_variant(std::string_view name);

/// Space-time block preconditioner built on one Jacobian linearization.
/// apply_inverse is what GMRES uses; apply is the forward operator, provided
/// for round-trip checks.
class SpaceTimePreconditioner {
 public:
  SpaceTimePreconditioner(const SpaceTimeJacobian& J, PrecondVariant variant);

  PrecondVariant variant() const { return variant_; }
  Vector apply_inverse(const Vector& r) const;
  Vector apply(const Vector& x) const;

  const BlockBidiagonal& Fu() const { return Fu_; }
  const PressureSchurApprox& pressure() const { return pressure_; }
  const MagneticSchurApprox& magnetic() const { return magnetic_; }
  int num_steps() const { return J_->num_steps(); }

 private:
  // Stacked (all slabs of one field) block-diagonal products.
  Vector mul_Bt(const Vector& xp) const;
  Vector mul_B(const Vector& xu) const;
  Vector mul_Jpp(const Vector& xp) const;
  Vector mul_Zj(const Vector& xj) const;
  Vector mul_ZA(const Vector& xa) const;
  Vector mul_Y(const Vector& xu) const;
  Vector mul_Mj(const Vector& xj) const;
  Vector solve_Mj(const Vector& bj) const;
  Vector mul_KjA(const Vector& xa) const;

  const SpaceTimeJacobian* J_;
  PrecondVariant variant_;
  BlockBidiagonal Fu_;
  PressureSchurApprox pressure_;
  MagneticSchurApprox magnetic_;
};

/// Single-step preconditioner of slab k: P_T built from slab k's blocks only.
/// The returned object keeps a reference to `J`'s discretization and owns the
/// restricted Jacobian.
class SingleStepPreconditioner {
 public:
  SingleStepPreconditioner(const SpaceTimeJacobian& J, int k);
  SingleStepPreconditioner(const SingleStepPreconditioner&) = delete;
  SingleStepPreconditioner& operator=(const SingleStepPreconditioner&) = delete;
  Vector apply_inverse(const Vector& r_slab) const { return pc_.apply_inverse(r_slab); }
  Vector apply(const Vector& x_slab) const { return pc_.apply(x_slab); }

 private:
  SpaceTimeJacobian J1_;
  SpaceTimePreconditioner pc_;
};

}  // namespace stmhd
