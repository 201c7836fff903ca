#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stmhd/fe_space.hpp"
#include "stmhd/sparse.hpp"

namespace stmhd {

enum class BCKind { None, Dirichlet, Slip };

struct BoundaryCondition {
  BCKind kind = BCKind::None;
  /// Dirichlet data; ignored for the other kinds. Empty means zero.
  std::function<double(double, double)> value;
};

/// One condition per side for one field.
struct FieldBC {
  std::array<BoundaryCondition, 4> sides;
  BoundaryCondition& operator[](BoundaryTag t) { return sides[static_cast<std::size_t>(t)]; }
  const BoundaryCondition& operator[](BoundaryTag t) const { return sides[static_cast<std::size_t>(t)]; }
};

/// Boundary conditions of all four fields.
struct BCSpec {
  FieldBC u, p, j, A;

  /// Sets a condition by side name; throws ConfigError on an unknown tag.
  void set(FieldBC& field, std::string_view side, BoundaryCondition bc) { field[parse_boundary_tag(side)] = std::move(bc); }
};

/// Constrained DOFs of one field with their prescribed values, sorted by DOF.
struct Constraints {
  std::vector<int> dofs;
  std::vector<double> values;
  bool empty() const { return dofs.empty(); }
};

/// Dirichlet sides constrain every component; slip sides constrain only the
/// component normal to the (axis-aligned) side, with value zero. Nodes shared
/// by two sides are listed once; a Dirichlet value wins over a slip zero.
Constraints build_constraints(const FESpace& space, const FieldBC& bc);

/// Symmetric elimination with RHS lift: b -= A(:, d) g, rows and columns of
/// the constrained DOFs cleared, unit diagonal, b(d) = g.
void apply_dirichlet_symmetric(SparseMatrix& a, Vector& b, const Constraints& c);

/// Sets the constrained entries of a vector to their values.
void impose_values(Vector& x, const Constraints& c);

}  // namespace stmhd
