#include "stmhd/fe_space.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "stmhd/errors.hpp"

namespace stmhd {

LagrangeBasis::LagrangeBasis(int degree) : degree_(degree) {
  if (degree < 1 || degree > 3) throw ConfigError("Lagrange degree must be 1, 2 or 3");
  // Local node order: the three vertices first, then edge and interior nodes
  // in lattice order. Only the vertex positions matter for downstream code.
  const int k = degree;
  nodes_ = {{0, 0}, {k, 0}, {0, k}};
  for (int j = 0; j <= k; ++j)
    for (int i = 0; i + j <= k; ++i) {
      const bool vertex = (i == 0 && j == 0) || (i == k && j == 0) || (i == 0 && j == k);
      if (!vertex) nodes_.push_back({i, j});
    }
  for (int s = 0; s <= k; ++s)
    for (int b = 0; b <= s; ++b) monomials_.push_back({s - b, b});

  const int n = size();
  Eigen::MatrixXd V(n, n);
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(nodes_[i][0]) / k;
    const double y = static_cast<double>(nodes_[i][1]) / k;
    for (int m = 0; m < n; ++m) V(i, m) = std::pow(x, monomials_[m][0]) * std::pow(y, monomials_[m][1]);
  }
  const Eigen::MatrixXd C = V.inverse();
  coeffs_.resize(static_cast<std::size_t>(n * n));
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i) coeffs_[static_cast<std::size_t>(m * n + i)] = C(m, i);
}

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

void LagrangeBasis::eval(double xi, double eta, std::span<double> values) const {
  const int n = size();
  for (int i = 0; i < n; ++i) values[i] = 0.0;
  for (int m = 0; m < n; ++m) {
    const double mono = ipow(xi, monomials_[m][0]) * ipow(eta, monomials_[m][1]);
    for (int i = 0; i < n; ++i) values[i] += coeffs_[static_cast<std::size_t>(m * n + i)] * mono;
  }
}

void LagrangeBasis::eval_grad(double xi, double eta, std::span<std::array<double, 2>> grads) const {
  const int n = size();
  for (int i = 0; i < n; ++i) grads[i] = {0.0, 0.0};
  for (int m = 0; m < n; ++m) {
    const int a = monomials_[m][0], b = monomials_[m][1];
    const double dx = a > 0 ? a * ipow(xi, a - 1) * ipow(eta, b) : 0.0;
    const double dy = b > 0 ? b * ipow(xi, a) * ipow(eta, b - 1) : 0.0;
    for (int i = 0; i < n; ++i) {
      const double c = coeffs_[static_cast<std::size_t>(m * n + i)];
      grads[i][0] += c * dx;
      grads[i][1] += c * dy;
    }
  }
}

Tabulation tabulate(const LagrangeBasis& basis, const TriangleQuadrature& quad) {
  Tabulation tab;
  tab.num_points = static_cast<int>(quad.points.size());
  tab.num_basis = basis.size();
  tab.values.resize(static_cast<std::size_t>(tab.num_points * tab.num_basis));
  tab.grads.resize(tab.values.size());
  for (int q = 0; q < tab.num_points; ++q) {
    const auto& p = quad.points[static_cast<std::size_t>(q)];
    const std::size_t off = static_cast<std::size_t>(q * tab.num_basis);
    basis.eval(p[0], p[1], std::span<double>(tab.values).subspan(off, static_cast<std::size_t>(tab.num_basis)));
    basis.eval_grad(p[0], p[1],
                    std::span<std::array<double, 2>>(tab.grads).subspan(off, static_cast<std::size_t>(tab.num_basis)));
  }
  return tab;
}

ElementGeometry element_geometry(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles()[static_cast<std::size_t>(t)];
  const Point& a = mesh.vertices()[static_cast<std::size_t>(tri[0])];
  const Point& b = mesh.vertices()[static_cast<std::size_t>(tri[1])];
  const Point& c = mesh.vertices()[static_cast<std::size_t>(tri[2])];
  ElementGeometry g;
  g.origin = a;
  g.jac = {{{b[0] - a[0], c[0] - a[0]}, {b[1] - a[1], c[1] - a[1]}}};
  g.det = g.jac[0][0] * g.jac[1][1] - g.jac[0][1] * g.jac[1][0];
  g.inv_jac = {{{g.jac[1][1] / g.det, -g.jac[0][1] / g.det}, {-g.jac[1][0] / g.det, g.jac[0][0] / g.det}}};
  return g;
}

FESpace::FESpace(std::shared_ptr<const Mesh> mesh, int degree, int components)
    : mesh_(std::move(mesh)), degree_(degree), components_(components), basis_(degree) {
  if (components != 1 && components != 2) throw ConfigError("FE space needs 1 or 2 components");
  const int k = degree;
  const int nx = mesh_->nx(), ny = mesh_->ny();
  const int row = k * nx + 1;
  num_nodes_ = row * (k * ny + 1);

  const double hx = (mesh_->x1() - mesh_->x0()) / nx;
  const double hy = (mesh_->y1() - mesh_->y0()) / ny;
  coords_.resize(static_cast<std::size_t>(num_nodes_));
  for (int b = 0; b <= k * ny; ++b)
    for (int a = 0; a < row; ++a) {
      const double x = (a == k * nx) ? mesh_->x1() : mesh_->x0() + a * hx / k;
      const double y = (b == k * ny) ? mesh_->y1() : mesh_->y0() + b * hy / k;
      coords_[static_cast<std::size_t>(b * row + a)] = {x, y};
    }

  const int npe = basis_.size();
  element_nodes_.resize(static_cast<std::size_t>(mesh_->num_triangles() * npe));
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    const auto& tri = mesh_->triangles()[static_cast<std::size_t>(t)];
    std::array<int, 3> I{}, J{};
    for (int v = 0; v < 3; ++v) {
      I[v] = tri[v] % (nx + 1);
      J[v] = tri[v] / (nx + 1);
    }
    for (int l = 0; l < npe; ++l) {
      const auto [i, j] = basis_.lattice_nodes()[static_cast<std::size_t>(l)];
      const int a = k * I[0] + i * (I[1] - I[0]) + j * (I[2] - I[0]);
      const int b = k * J[0] + i * (J[1] - J[0]) + j * (J[2] - J[0]);
      element_nodes_[static_cast<std::size_t>(t * npe + l)] = b * row + a;
    }
  }

  for (int b = 0; b <= k * ny; ++b)
    for (int a = 0; a < row; ++a) {
      const int n = b * row + a;
      if (a == 0) boundary_nodes_[static_cast<std::size_t>(BoundaryTag::Left)].push_back(n);
      if (a == k * nx) boundary_nodes_[static_cast<std::size_t>(BoundaryTag::Right)].push_back(n);
      if (b == 0) boundary_nodes_[static_cast<std::size_t>(BoundaryTag::Bottom)].push_back(n);
      if (b == k * ny) boundary_nodes_[static_cast<std::size_t>(BoundaryTag::Top)].push_back(n);
    }
}

std::span<const int> FESpace::element_nodes(int t) const {
  const std::size_t npe = static_cast<std::size_t>(basis_.size());
  return std::span<const int>(element_nodes_).subspan(static_cast<std::size_t>(t) * npe, npe);
}

std::vector<int> FESpace::boundary_dofs(BoundaryTag tag, int component) const {
  if (component < 0 || component >= components_) throw ConfigError("component out of range");
  std::vector<int> dofs;
  for (int n : boundary_nodes(tag)) dofs.push_back(dof(component, n));
  return dofs;
}

}  // namespace stmhd
