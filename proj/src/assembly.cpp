#include "stmhd/assembly.hpp"

#include <algorithm>
#include <map>

#include "stmhd/errors.hpp"

namespace stmhd {

const TriangleQuadrature& assembly_quadrature() {
  static const TriangleQuadrature quad = triangle_quadrature(kAssemblyQuadratureDegree);
  return quad;
}

ElementEval::ElementEval(const FESpace& space, const TriangleQuadrature& quad)
    : space_(space), quad_(quad), tab_(tabulate(space.basis(), quad)) {
  weights_.resize(static_cast<std::size_t>(tab_.num_points));
  grads_.resize(tab_.grads.size());
}

void ElementEval::reinit(int t) {
  t_ = t;
  geo_ = element_geometry(space_.mesh(), t);
  const double adet = std::abs(geo_.det);
  for (int q = 0; q < tab_.num_points; ++q) weights_[static_cast<std::size_t>(q)] = quad_.weights[static_cast<std::size_t>(q)] * adet;
  for (std::size_t k = 0; k < grads_.size(); ++k) grads_[k] = geo_.push_grad(tab_.grads[k]);
}

Point ElementEval::point(int q) const {
  const auto& p = quad_.points[static_cast<std::size_t>(q)];
  return geo_.map(p[0], p[1]);
}

double ElementEval::field_value(const Vector& coef, int c, int q) const {
  const auto nd = nodes();
  double v = 0.0;
  for (int i = 0; i < num_basis(); ++i) v += coef[space_.dof(c, nd[static_cast<std::size_t>(i)])] * value(q, i);
  return v;
}

std::array<double, 2> ElementEval::field_grad(const Vector& coef, int c, int q) const {
  const auto nd = nodes();
  std::array<double, 2> g{0.0, 0.0};
  for (int i = 0; i < num_basis(); ++i) {
    const double a = coef[space_.dof(c, nd[static_cast<std::size_t>(i)])];
    g[0] += a * grad(q, i)[0];
    g[1] += a * grad(q, i)[1];
  }
  return g;
}

namespace {

void check_size(const FESpace& s, const Vector& v, const char* what) {
  if (v.size() != s.dof_count()) throw Error(std::string(what) + ": coefficient vector has wrong size");
}

// Scalar bilinear form on one space, copied onto every component block.
template <class Kernel>
SparseMatrix assemble_scalar_form(const FESpace& space, Kernel&& kernel) {
  ElementEval ev(space, assembly_quadrature());
  const int nb = ev.num_basis();
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(space.mesh().num_triangles() * nb * nb * space.components()));
  std::vector<double> local(static_cast<std::size_t>(nb * nb));
  for (int e = 0; e < space.mesh().num_triangles(); ++e) {
    ev.reinit(e);
    std::fill(local.begin(), local.end(), 0.0);
    for (int q = 0; q < ev.num_points(); ++q)
      for (int m = 0; m < nb; ++m)
        for (int n = 0; n < nb; ++n) local[static_cast<std::size_t>(m * nb + n)] += ev.weight(q) * kernel(ev, q, m, n);
    const auto nodes = ev.nodes();
    for (int c = 0; c < space.components(); ++c)
      for (int m = 0; m < nb; ++m)
        for (int n = 0; n < nb; ++n)
          t.emplace_back(space.dof(c, nodes[static_cast<std::size_t>(m)]), space.dof(c, nodes[static_cast<std::size_t>(n)]),
                         local[static_cast<std::size_t>(m * nb + n)]);
  }
  return from_triplets(space.dof_count(), space.dof_count(), t);
}

}  // namespace

SparseMatrix assemble_mass(const FESpace& space) {
  return assemble_scalar_form(space, [](const ElementEval& ev, int q, int m, int n) { return ev.value(q, m) * ev.value(q, n); });
}

SparseMatrix assemble_stiffness(const FESpace& space) {
  return assemble_scalar_form(space, [](const ElementEval& ev, int q, int m, int n) {
    const auto& a = ev.grad(q, m);
    const auto& b = ev.grad(q, n);
    return a[0] * b[0] + a[1] * b[1];
  });
}

SparseMatrix assemble_divergence(const FESpace& vel, const FESpace& prs) {
  if (vel.components() != 2 || prs.components() != 1) throw ConfigError("divergence needs vector velocity, scalar pressure");
  ElementEval ev(vel, assembly_quadrature());
  ElementEval ep(prs, assembly_quadrature());
  std::vector<Triplet> t;
  for (int e = 0; e < vel.mesh().num_triangles(); ++e) {
    ev.reinit(e);
    ep.reinit(e);
    const auto vn = ev.nodes();
    const auto pn = ep.nodes();
    for (int m = 0; m < ep.num_basis(); ++m)
      for (int n = 0; n < ev.num_basis(); ++n)
        for (int c = 0; c < 2; ++c) {
          double s = 0.0;
          for (int q = 0; q < ev.num_points(); ++q) s -= ev.weight(q) * ep.value(q, m) * ev.grad(q, n)[c];
          t.emplace_back(pn[static_cast<std::size_t>(m)], vel.dof(c, vn[static_cast<std::size_t>(n)]), s);
        }
  }
  return from_triplets(prs.dof_count(), vel.dof_count(), t);
}

SparseMatrix assemble_mixed_jA(const FESpace& cur, const FESpace& pot) {
  ElementEval ej(cur, assembly_quadrature());
  ElementEval ea(pot, assembly_quadrature());
  std::vector<Triplet> t;
  for (int e = 0; e < cur.mesh().num_triangles(); ++e) {
    ej.reinit(e);
    ea.reinit(e);
    const auto jn = ej.nodes();
    const auto an = ea.nodes();
    for (int m = 0; m < ej.num_basis(); ++m)
      for (int n = 0; n < ea.num_basis(); ++n) {
        double s = 0.0;
        for (int q = 0; q < ej.num_points(); ++q)
          s += ej.weight(q) * (ej.grad(q, m)[0] * ea.grad(q, n)[0] + ej.grad(q, m)[1] * ea.grad(q, n)[1]);
        t.emplace_back(jn[static_cast<std::size_t>(m)], an[static_cast<std::size_t>(n)], s);
      }
  }
  return from_triplets(cur.dof_count(), pot.dof_count(), t);
}

AdvectionU assemble_advection_u(const FESpace& vel, const Vector& u) {
  check_size(vel, u, "advection_u");
  ElementEval ev(vel, assembly_quadrature());
  const int nb = ev.num_basis();
  AdvectionU out;
  out.residual = Vector::Zero(vel.dof_count());
  std::vector<Triplet> tw, tdw;
  // Local blocks: transport (shared by both components) and the 2x2
  // component coupling of the derivative term.
  std::vector<double> lw(static_cast<std::size_t>(nb * nb));
  std::vector<double> ldw(static_cast<std::size_t>(4 * nb * nb));
  for (int e = 0; e < vel.mesh().num_triangles(); ++e) {
    ev.reinit(e);
    const auto nodes = ev.nodes();
    std::fill(lw.begin(), lw.end(), 0.0);
    std::fill(ldw.begin(), ldw.end(), 0.0);
    for (int q = 0; q < ev.num_points(); ++q) {
      const double w = ev.weight(q);
      const std::array<double, 2> uq{ev.field_value(u, 0, q), ev.field_value(u, 1, q)};
      const std::array<std::array<double, 2>, 2> gu{ev.field_grad(u, 0, q), ev.field_grad(u, 1, q)};
      for (int m = 0; m < nb; ++m) {
        const double phim = w * ev.value(q, m);
        const int nm = nodes[static_cast<std::size_t>(m)];
        for (int c = 0; c < 2; ++c) out.residual[vel.dof(c, nm)] += (uq[0] * gu[c][0] + uq[1] * gu[c][1]) * phim;
        for (int n = 0; n < nb; ++n) {
          const auto& gn = ev.grad(q, n);
          lw[static_cast<std::size_t>(m * nb + n)] += (uq[0] * gn[0] + uq[1] * gn[1]) * phim;
          const double pp = ev.value(q, n) * phim;
          for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) ldw[static_cast<std::size_t>(((c * 2 + d) * nb + m) * nb + n)] += pp * gu[c][d];
        }
      }
    }
    for (int m = 0; m < nb; ++m)
      for (int n = 0; n < nb; ++n) {
        const int nm = nodes[static_cast<std::size_t>(m)], nn = nodes[static_cast<std::size_t>(n)];
        for (int c = 0; c < 2; ++c) {
          tw.emplace_back(vel.dof(c, nm), vel.dof(c, nn), lw[static_cast<std::size_t>(m * nb + n)]);
          for (int d = 0; d < 2; ++d)
            tdw.emplace_back(vel.dof(c, nm), vel.dof(d, nn), ldw[static_cast<std::size_t>(((c * 2 + d) * nb + m) * nb + n)]);
        }
      }
  }
  out.W = from_triplets(vel.dof_count(), vel.dof_count(), tw);
  out.dW = from_triplets(vel.dof_count(), vel.dof_count(), tdw);
  return out;
}

LorentzBlocks assemble_lorentz_blocks(const FESpace& vel, const FESpace& cur, const FESpace& pot, const Vector& j,
                                      const Vector& A) {
  check_size(cur, j, "lorentz(j)");
  check_size(pot, A, "lorentz(A)");
  ElementEval ev(vel, assembly_quadrature());
  ElementEval ej(cur, assembly_quadrature());
  ElementEval ea(pot, assembly_quadrature());
  const int nv = ev.num_basis(), nj = ej.num_basis(), na = ea.num_basis();
  LorentzBlocks out;
  out.residual = Vector::Zero(vel.dof_count());
  std::vector<Triplet> tzj, tza;
  std::vector<double> lzj(static_cast<std::size_t>(2 * nv * nj)), lza(static_cast<std::size_t>(2 * nv * na));
  for (int e = 0; e < vel.mesh().num_triangles(); ++e) {
    ev.reinit(e);
    ej.reinit(e);
    ea.reinit(e);
    const auto vn = ev.nodes();
    const auto jn = ej.nodes();
    const auto an = ea.nodes();
    std::fill(lzj.begin(), lzj.end(), 0.0);
    std::fill(lza.begin(), lza.end(), 0.0);
    for (int q = 0; q < ev.num_points(); ++q) {
      const double w = ev.weight(q);
      const double jq = ej.field_value(j, 0, q);
      const auto gA = ea.field_grad(A, 0, q);
      for (int m = 0; m < nv; ++m) {
        const double phim = w * ev.value(q, m);
        for (int c = 0; c < 2; ++c) {
          out.residual[vel.dof(c, vn[static_cast<std::size_t>(m)])] += jq * gA[c] * phim;
          for (int n = 0; n < nj; ++n) lzj[static_cast<std::size_t>((c * nv + m) * nj + n)] += ej.value(q, n) * gA[c] * phim;
          for (int n = 0; n < na; ++n) lza[static_cast<std::size_t>((c * nv + m) * na + n)] += jq * ea.grad(q, n)[c] * phim;
        }
      }
    }
    for (int c = 0; c < 2; ++c)
      for (int m = 0; m < nv; ++m) {
        const int row = vel.dof(c, vn[static_cast<std::size_t>(m)]);
        for (int n = 0; n < nj; ++n) tzj.emplace_back(row, jn[static_cast<std::size_t>(n)], lzj[static_cast<std::size_t>((c * nv + m) * nj + n)]);
        for (int n = 0; n < na; ++n) tza.emplace_back(row, an[static_cast<std::size_t>(n)], lza[static_cast<std::size_t>((c * nv + m) * na + n)]);
      }
  }
  out.Zj = from_triplets(vel.dof_count(), cur.dof_count(), tzj);
  out.ZA = from_triplets(vel.dof_count(), pot.dof_count(), tza);
  return out;
}

AdvectionA assemble_advection_A(const FESpace& pot, const FESpace& vel, const Vector& u, const Vector& A) {
  check_size(vel, u, "advection_A(u)");
  check_size(pot, A, "advection_A(A)");
  ElementEval ev(vel, assembly_quadrature());
  ElementEval ea(pot, assembly_quadrature());
  const int nv = ev.num_basis(), na = ea.num_basis();
  AdvectionA out;
  out.residual = Vector::Zero(pot.dof_count());
  std::vector<Triplet> tw, ty;
  std::vector<double> lw(static_cast<std::size_t>(na * na)), ly(static_cast<std::size_t>(2 * na * nv));
  for (int e = 0; e < pot.mesh().num_triangles(); ++e) {
    ev.reinit(e);
    ea.reinit(e);
    const auto vn = ev.nodes();
    const auto an = ea.nodes();
    std::fill(lw.begin(), lw.end(), 0.0);
    std::fill(ly.begin(), ly.end(), 0.0);
    for (int q = 0; q < ea.num_points(); ++q) {
      const double w = ea.weight(q);
      const std::array<double, 2> uq{ev.field_value(u, 0, q), ev.field_value(u, 1, q)};
      const auto gA = ea.field_grad(A, 0, q);
      for (int m = 0; m < na; ++m) {
        const double chim = w * ea.value(q, m);
        out.residual[an[static_cast<std::size_t>(m)]] += (uq[0] * gA[0] + uq[1] * gA[1]) * chim;
        for (int n = 0; n < na; ++n) {
          const auto& g = ea.grad(q, n);
          lw[static_cast<std::size_t>(m * na + n)] += (uq[0] * g[0] + uq[1] * g[1]) * chim;
        }
        for (int n = 0; n < nv; ++n) {
          const double phin = ev.value(q, n) * chim;
          for (int c = 0; c < 2; ++c) ly[static_cast<std::size_t>((c * na + m) * nv + n)] += phin * gA[c];
        }
      }
    }
    for (int m = 0; m < na; ++m) {
      const int row = an[static_cast<std::size_t>(m)];
      for (int n = 0; n < na; ++n) tw.emplace_back(row, an[static_cast<std::size_t>(n)], lw[static_cast<std::size_t>(m * na + n)]);
      for (int c = 0; c < 2; ++c)
        for (int n = 0; n < nv; ++n)
          ty.emplace_back(row, vel.dof(c, vn[static_cast<std::size_t>(n)]), ly[static_cast<std::size_t>((c * na + m) * nv + n)]);
    }
  }
  out.WA = from_triplets(pot.dof_count(), pot.dof_count(), tw);
  out.Y = from_triplets(pot.dof_count(), vel.dof_count(), ty);
  return out;
}

SparseMatrix assemble_pcd_advection(const FESpace& prs, const FESpace& vel, const Vector& u) {
  check_size(vel, u, "pcd_advection");
  ElementEval ev(vel, assembly_quadrature());
  ElementEval ep(prs, assembly_quadrature());
  const int np = ep.num_basis();
  std::vector<Triplet> t;
  std::vector<double> local(static_cast<std::size_t>(np * np));
  for (int e = 0; e < prs.mesh().num_triangles(); ++e) {
    ev.reinit(e);
    ep.reinit(e);
    const auto pn = ep.nodes();
    std::fill(local.begin(), local.end(), 0.0);
    for (int q = 0; q < ep.num_points(); ++q) {
      const double w = ep.weight(q);
      const double ux = ev.field_value(u, 0, q), uy = ev.field_value(u, 1, q);
      for (int m = 0; m < np; ++m)
        for (int n = 0; n < np; ++n) {
          const auto& g = ep.grad(q, n);
          local[static_cast<std::size_t>(m * np + n)] += w * (ux * g[0] + uy * g[1]) * ep.value(q, m);
        }
    }
    for (int m = 0; m < np; ++m)
      for (int n = 0; n < np; ++n)
        t.emplace_back(pn[static_cast<std::size_t>(m)], pn[static_cast<std::size_t>(n)], local[static_cast<std::size_t>(m * np + n)]);
  }
  return from_triplets(prs.dof_count(), prs.dof_count(), t);
}

Vector assemble_load(const FESpace& space, const ScalarField& f) {
  ElementEval ev(space, assembly_quadrature());
  Vector b = Vector::Zero(space.dof_count());
  for (int e = 0; e < space.mesh().num_triangles(); ++e) {
    ev.reinit(e);
    const auto nodes = ev.nodes();
    for (int q = 0; q < ev.num_points(); ++q) {
      const Point p = ev.point(q);
      const double fw = f(p[0], p[1]) * ev.weight(q);
      for (int m = 0; m < ev.num_basis(); ++m) b[nodes[static_cast<std::size_t>(m)]] += fw * ev.value(q, m);
    }
  }
  return b;
}

Vector assemble_boundary_load(const FESpace& space, BoundaryTag side, const ScalarField& g) {
  const Mesh& mesh = space.mesh();
  std::map<std::pair<int, int>, int> edge_owner;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[static_cast<std::size_t>(t)];
    for (int a = 0; a < 3; ++a) {
      const int v0 = tri[a], v1 = tri[(a + 1) % 3];
      edge_owner[{std::min(v0, v1), std::max(v0, v1)}] = t;
    }
  }
  const GaussRule1D rule = gauss_legendre(6);
  const LagrangeBasis& basis = space.basis();
  std::vector<double> vals(static_cast<std::size_t>(basis.size()));
  Vector b = Vector::Zero(space.dof_count());
  for (const auto& f : mesh.boundary_facets()) {
    if (f.tag != side) continue;
    const int t = edge_owner.at({std::min(f.v0, f.v1), std::max(f.v0, f.v1)});
    const ElementGeometry geo = element_geometry(mesh, t);
    const Point& a = mesh.vertices()[static_cast<std::size_t>(f.v0)];
    const Point& c = mesh.vertices()[static_cast<std::size_t>(f.v1)];
    const double len = std::hypot(c[0] - a[0], c[1] - a[1]);
    const auto nodes = space.element_nodes(t);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double s = rule.points[q];
      const double x = a[0] + s * (c[0] - a[0]), y = a[1] + s * (c[1] - a[1]);
      const double dx = x - geo.origin[0], dy = y - geo.origin[1];
      const double xi = geo.inv_jac[0][0] * dx + geo.inv_jac[0][1] * dy;
      const double eta = geo.inv_jac[1][0] * dx + geo.inv_jac[1][1] * dy;
      basis.eval(xi, eta, vals);
      const double gw = g(x, y) * rule.weights[q] * len;
      for (std::size_t m = 0; m < vals.size(); ++m) b[nodes[m]] += gw * vals[m];
    }
  }
  return b;
}

double integrate(const FESpace& space, const Vector& coef) {
  check_size(space, coef, "integrate");
  ElementEval ev(space, assembly_quadrature());
  double s = 0.0;
  for (int e = 0; e < space.mesh().num_triangles(); ++e) {
    ev.reinit(e);
    for (int q = 0; q < ev.num_points(); ++q) s += ev.weight(q) * ev.field_value(coef, 0, q);
  }
  return s;
}

}  // namespace stmhd
