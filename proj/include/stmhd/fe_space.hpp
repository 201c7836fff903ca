#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <span>
#include <vector>

#include "stmhd/mesh.hpp"
#include "stmhd/quadrature.hpp"

namespace stmhd {

/// Lagrange basis of degree 1..3 on the reference triangle, nodes on the
/// lattice (i/k, j/k), i + j <= k.
class LagrangeBasis {
 public:
  explicit LagrangeBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<std::array<int, 2>>& lattice_nodes() const { return nodes_; }

  void eval(double xi, double eta, std::span<double> values) const;
  void eval_grad(double xi, double eta, std::span<std::array<double, 2>> grads) const;

 private:
  int degree_;
  std::vector<std::array<int, 2>> nodes_;
  std::vector<std::array<int, 2>> monomials_;
  std::vector<double> coeffs_;  // coeffs_[m * n + i]: coefficient of monomial m in basis i
};

/// Basis values and reference gradients at the points of a quadrature rule.
struct Tabulation {
  int num_points = 0;
  int num_basis = 0;
  std::vector<double> values;                 // [q * num_basis + i]
  std::vector<std::array<double, 2>> grads;   // reference gradients, same layout
};

Tabulation tabulate(const LagrangeBasis& basis, const TriangleQuadrature& quad);

/// Affine map data of one triangle.
struct ElementGeometry {
  Point origin;
  std::array<std::array<double, 2>, 2> jac;      // columns: v1 - v0, v2 - v0
  std::array<std::array<double, 2>, 2> inv_jac;  // inverse of jac
  double det;

  Point map(double xi, double eta) const {
    return {origin[0] + jac[0][0] * xi + jac[0][1] * eta, origin[1] + jac[1][0] * xi + jac[1][1] * eta};
  }
  /// Physical gradient from a reference gradient: J^{-T} g.
  std::array<double, 2> push_grad(const std::array<double, 2>& g) const {
    return {inv_jac[0][0] * g[0] + inv_jac[1][0] * g[1], inv_jac[0][1] * g[0] + inv_jac[1][1] * g[1]};
  }
};

ElementGeometry element_geometry(const Mesh& mesh, int t);

/// Continuous Lagrange space (scalar or 2-vector) on a structured mesh.
///
/// Scalar nodes sit on the lattice refined k times; node (a, b) has index
/// b * (k * nx + 1) + a. Vector spaces store components blocked:
/// dof = component * num_nodes + node.
class FESpace {
 public:
  FESpace(std::shared_ptr<const Mesh> mesh, int degree, int components);

  const Mesh& mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  int degree() const { return degree_; }
  int components() const { return components_; }
  int num_nodes() const { return num_nodes_; }
  int dof_count() const { return num_nodes_ * components_; }
  int dof(int component, int node) const { return component * num_nodes_ + node; }

  const LagrangeBasis& basis() const { return basis_; }
  int nodes_per_element() const { return basis_.size(); }
  /// Global scalar node indices of triangle t, in the basis' local order.
  std::span<const int> element_nodes(int t) const;

  const Point& node_coords(int node) const { return coords_[static_cast<std::size_t>(node)]; }
  /// Sorted scalar nodes lying on one side of the rectangle.
  const std::vector<int>& boundary_nodes(BoundaryTag tag) const {
    return boundary_nodes_[static_cast<std::size_t>(tag)];
  }
  std::vector<int> boundary_dofs(BoundaryTag tag, int component) const;

  /// Closed-form Lagrange DOF count on the structured mesh.
  static int expected_dof_count(int nx, int ny, int degree, int components) {
    return (degree * nx + 1) * (degree * ny + 1) * components;
  }

 private:
  std::shared_ptr<const Mesh> mesh_;
  int degree_;
  int components_;
  LagrangeBasis basis_;
  int num_nodes_;
  std::vector<int> element_nodes_;
  std::vector<Point> coords_;
  std::array<std::vector<int>, 4> boundary_nodes_;
};

/// Nodal interpolation of a scalar function (component 0 of the space).
template <class F>
Eigen::VectorXd interpolate(const FESpace& space, F&& f) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(space.dof_count());
  for (int n = 0; n < space.num_nodes(); ++n) {
    const Point& p = space.node_coords(n);
    v[n] = f(p[0], p[1]);
  }
  return v;
}

}  // namespace stmhd
