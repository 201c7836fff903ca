#include "stmhd/discretization.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "stmhd/errors.hpp"

namespace stmhd {

std::string_view to_string(ForcingMode mode) {
  return mode == ForcingMode::DiscreteEquilibrium ? "discrete" : "projected";
}

ForcingMode parse_forcing_mode(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "discrete" || s == "discrete_equilibrium") return ForcingMode::DiscreteEquilibrium;
  if (s == "projected") return ForcingMode::Projected;
  throw ConfigError("unknown forcing mode '" + std::string(name) + "'");
}

namespace {

std::shared_ptr<const Mesh> make_mesh(const ProblemSpec& p, double dx) {
  return std::make_shared<const Mesh>(build_rect_mesh(p.x0, p.x1, p.y0, p.y1, dx));
}

int count_steps(double dt, double T) {
  if (!(dt > 0.0) || !(T > 0.0)) throw ConfigError("dt and T must be positive");
  if (dt > T * (1.0 + 1e-12)) throw ConfigError("dt must not exceed T");
  const double r = T / dt;
  const double n = std::round(r);
  if (std::abs(r - n) > 1e-9 * std::max(1.0, r)) throw ConfigError("T is not an integer multiple of dt");
  return static_cast<int>(n);
}

}  // namespace

Discretization::Discretization(ProblemSpec prob, double dx_, double dt_, double T_, ForcingMode forcing_)
    : problem(std::move(prob)),
      mesh(make_mesh(problem, dx_)),
      Vu(mesh, 3, 2),
      Vp(mesh, 2, 1),
      Vj(mesh, 1, 1),
      VA(mesh, 1, 1),
      dx(dx_),
      dt(dt_),
      T(T_),
      num_steps(count_steps(dt_, T_)),
      forcing(forcing_) {
  sizes = {Vu.dof_count(), Vp.dof_count(), Vj.dof_count(), VA.dof_count()};
  const double mu = problem.mu, eta = problem.eta, mu0 = problem.mu0;

  Mu = assemble_mass(Vu);
  Ku = assemble_stiffness(Vu);
  B = assemble_divergence(Vu, Vp);
  Mp = assemble_mass(Vp);
  Kp = assemble_stiffness(Vp);
  Mj = assemble_mass(Vj);
  KjA = assemble_mixed_jA(Vj, VA);
  MA = assemble_mass(VA);
  KA = assemble_stiffness(VA);

  u_bc = build_constraints(Vu, problem.bcs.u);
  A_bc = build_constraints(VA, problem.bcs.A);
  if (!build_constraints(Vp, problem.bcs.p).empty() || !build_constraints(Vj, problem.bcs.j).empty())
    throw ConfigError("pressure and current only support natural boundary conditions");

  // Equilibrium interpolants. The pressure mean is the exact integral of the
  // P2 interpolant, so the shifted field has zero mean on this mesh.
  Vector p_raw = interpolate(Vp, problem.p_raw);
  p_mean = integrate(Vp, p_raw) / mesh->area();
  p_eq = p_raw.array() - p_mean;
  A_eq = interpolate(VA, problem.A_eq);
  const auto& pert = problem.A_perturbation;
  A_init = interpolate(VA, [&](double x, double y) { return problem.A_eq(x, y) + pert(x, y); });
  impose_values(A_init, A_bc);

  // Boundary flux of the Dirichlet data on the top side.
  h = assemble_boundary_load(Vj, BoundaryTag::Top, [&](double x, double y) { return problem.grad_A_eq(x, y)[1] / mu0; });
  KjA_s = KjA / mu0;
  Mj_lu = LUFactor(Mj, "current mass matrix");
  j_eq = Mj_lu.solve(h - KjA_s * A_eq);

  if (forcing == ForcingMode::DiscreteEquilibrium) {
    f = B.transpose() * p_eq + assemble_lorentz_blocks(Vu, Vj, VA, j_eq, A_eq).residual;
    E = -(eta / mu0) * (KA * A_eq);
  } else {
    f = Vector::Zero(sizes.u);
    E = assemble_load(VA, problem.E_eq);
  }
  for (int d : u_bc.dofs) f[d] = 0.0;
  for (int d : A_bc.dofs) E[d] = 0.0;

  pressure_pin = 0;
  pressure_ref = p_eq[pressure_pin];

  Bt_c = SparseMatrix(B.transpose());
  zero_rows(Bt_c, u_bc.dofs);
  B_c = B;
  zero_rows(B_c, {pressure_pin});
  Jpp = from_triplets(sizes.p, sizes.p, {Triplet(pressure_pin, pressure_pin, 1.0)});
  Mu_dt_c = Mu / dt;
  zero_rows(Mu_dt_c, u_bc.dofs);
  MA_dt_c = MA / dt;
  zero_rows(MA_dt_c, A_bc.dofs);
  Fu_base = Mu / dt + mu * Ku;
  FA_base = MA / dt + (eta / mu0) * KA;
}

BlockVector Discretization::initial_state(int steps) const {
  BlockVector x(sizes, steps);
  for (int k = 0; k < steps; ++k) {
    x.field(k, Field::U).setZero();
    x.field(k, Field::P) = p_eq;
    x.field(k, Field::J) = j_eq;
    x.field(k, Field::A) = A_eq;
  }
  return x;
}

void Discretization::remove_pressure_mean(BlockVector& x) const {
  for (int k = 0; k < x.num_steps(); ++k) {
    Vector p = x.field(k, Field::P);
    const double mean = integrate(Vp, p) / mesh->area();
    x.field(k, Field::P).array() -= mean;
  }
}

}  // namespace stmhd
