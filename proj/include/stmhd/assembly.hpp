#pragma once

#include <functional>

#include "stmhd/fe_space.hpp"
#include "stmhd/sparse.hpp"

namespace stmhd {

/// Quadrature used by every assembly routine: exact to degree 8, which covers
/// the trilinear P3 advection integrand.
const TriangleQuadrature& assembly_quadrature();
inline constexpr int kAssemblyQuadratureDegree = 8;

/// Physical basis values and gradients of one space on one element.
class ElementEval {
 public:
  ElementEval(const FESpace& space, const TriangleQuadrature& quad);

  void reinit(int t);

  int num_points() const { return tab_.num_points; }
  int num_basis() const { return tab_.num_basis; }
  /// Quadrature weight times |det J| on the current element.
  double weight(int q) const { return weights_[static_cast<std::size_t>(q)]; }
  double value(int q, int i) const { return tab_.values[idx(q, i)]; }
  const std::array<double, 2>& grad(int q, int i) const { return grads_[idx(q, i)]; }
  Point point(int q) const;
  std::span<const int> nodes() const { return space_.element_nodes(t_); }

  /// Component `c` of a coefficient vector, evaluated at point q.
  double field_value(const Vector& coef, int c, int q) const;
  std::array<double, 2> field_grad(const Vector& coef, int c, int q) const;

 private:
  std::size_t idx(int q, int i) const { return static_cast<std::size_t>(q * tab_.num_basis + i); }

  const FESpace& space_;
  const TriangleQuadrature& quad_;
  Tabulation tab_;
  int t_ = -1;
  ElementGeometry geo_{};
  std::vector<double> weights_;
  std::vector<std::array<double, 2>> grads_;
};

// Linear operators. Vector spaces produce component-blocked, block-diagonal
// matrices.
SparseMatrix assemble_mass(const FESpace& space);
SparseMatrix assemble_stiffness(const FESpace& space);
/// B[m, n] = -∫ q_m div(φ_n); rows pressure, columns velocity.
SparseMatrix assemble_divergence(const FESpace& vel, const FESpace& prs);
/// K_jA[m, n] = ∫ ∇χ_n · ∇ψ_m; rows current, columns potential.
SparseMatrix assemble_mixed_jA(const FESpace& cur, const FESpace& pot);

struct AdvectionU {
  Vector residual;  // ∫ ((u·∇)u)·φ_m
  SparseMatrix W;   // transport by u: ∫ (u·∇φ_n) φ_m per component
  SparseMatrix dW;  // derivative in the advecting field: ∫ φ_n ∂_d u_c φ_m
  SparseMatrix linearization() const { return W + dW; }
};
AdvectionU assemble_advection_u(const FESpace& vel, const Vector& u);

struct LorentzBlocks {
  Vector residual;  // ∫ j ∇A · φ_m
  SparseMatrix Zj;  // ∫ ψ_n ∂_c A φ_m, depends on A
  SparseMatrix ZA;  // ∫ j ∂_c χ_n φ_m, depends on j
};
LorentzBlocks assemble_lorentz_blocks(const FESpace& vel, const FESpace& cur, const FESpace& pot,
                                      const Vector& j, const Vector& A);

struct AdvectionA {
  Vector residual;  // ∫ (u·∇A) χ_m
  SparseMatrix WA;  // ∫ (u·∇χ_n) χ_m, depends on u
  SparseMatrix Y;   // ∫ (φ_n ∂_c A) χ_m, depends on A
};
AdvectionA assemble_advection_A(const FESpace& pot, const FESpace& vel, const Vector& u, const Vector& A);

/// W_p[m, n] = ∫ (u·∇q_n) q_m on the pressure space.
SparseMatrix assemble_pcd_advection(const FESpace& prs, const FESpace& vel, const Vector& u);

using ScalarField = std::function<double(double, double)>;

/// ∫ f φ_m on a scalar space.
Vector assemble_load(const FESpace& space, const ScalarField& f);
/// ∫_side g φ_m ds on a scalar space.
Vector assemble_boundary_load(const FESpace& space, BoundaryTag side, const ScalarField& g);

/// ∫ v_h over the domain for a scalar coefficient vector.
double integrate(const FESpace& space, const Vector& coef);

}  // namespace stmhd
