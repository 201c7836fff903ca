#include "stmhd/boundary.hpp"

#include "stmhd/errors.hpp"

namespace stmhd {

Constraints build_constraints(const FESpace& space, const FieldBC& bc) {
  std::map<int, double> fixed;
  // Slip first so Dirichlet data overrides it at shared corners.
  for (BoundaryTag tag : kAllBoundaryTags) {
    const BoundaryCondition& c = bc[tag];
    if (c.kind != BCKind::Slip) continue;
    if (space.components() != 2) throw ConfigError("slip condition needs a vector field");
    const int normal = (tag == BoundaryTag::Left || tag == BoundaryTag::Right) ? 0 : 1;
    for (int d : space.boundary_dofs(tag, normal)) fixed[d] = 0.0;
  }
  for (BoundaryTag tag : kAllBoundaryTags) {
    const BoundaryCondition& c = bc[tag];
    if (c.kind != BCKind::Dirichlet) continue;
    for (int comp = 0; comp < space.components(); ++comp)
      for (int n : space.boundary_nodes(tag)) {
        const Point& p = space.node_coords(n);
        fixed[space.dof(comp, n)] = c.value ? c.value(p[0], p[1]) : 0.0;
      }
  }
  Constraints out;
  for (const auto& [d, v] : fixed) {
    out.dofs.push_back(d);
    out.values.push_back(v);
  }
  return out;
}

void apply_dirichlet_symmetric(SparseMatrix& a, Vector& b, const Constraints& c) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw Error("apply_dirichlet_symmetric: size mismatch");
  Vector g = Vector::Zero(b.size());
  for (std::size_t i = 0; i < c.dofs.size(); ++i) g[c.dofs[i]] = c.values[i];
  b -= a * g;
  a = eliminate_symmetric(a, c.dofs, 1.0);
  for (std::size_t i = 0; i < c.dofs.size(); ++i) b[c.dofs[i]] = c.values[i];
}

void impose_values(Vector& x, const Constraints& c) {
  for (std::size_t i = 0; i < c.dofs.size(); ++i) x[c.dofs[i]] = c.values[i];
}

}  // namespace stmhd
