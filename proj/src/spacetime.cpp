#include "stmhd/spacetime.hpp"

#include "stmhd/errors.hpp"

namespace stmhd {

SpaceTimeJacobian::SpaceTimeJacobian(const Discretization& disc, std::vector<SlabBlocks> slabs)
    : disc_(&disc), slabs_(std::move(slabs)) {
  if (slabs_.empty()) throw Error("space-time Jacobian needs at least one slab");
}

SpaceTimeJacobian SpaceTimeJacobian::restrict_to_slab(int k) const { return SpaceTimeJacobian(*disc_, {slab(k)}); }

BlockVector SpaceTimeJacobian::apply(const BlockVector& v) const {
  if (v.num_steps() != num_steps() || !(v.sizes() == disc_->sizes)) throw Error("Jacobian apply: size mismatch");
  const Discretization& d = *disc_;
  BlockVector y(d.sizes, num_steps());
  for (int k = 0; k < num_steps(); ++k) {
    const SlabBlocks& s = slab(k);
    const Vector vu = v.field(k, Field::U), vp = v.field(k, Field::P);
    const Vector vj = v.field(k, Field::J), va = v.field(k, Field::A);
    y.field(k, Field::U) = s.Fu * vu + d.Bt_c * vp + s.Zj * vj + s.ZA * va;
    y.field(k, Field::P) = d.B_c * vu + d.Jpp * vp;
    y.field(k, Field::J) = d.Mj * vj + d.KjA_s * va;
    y.field(k, Field::A) = s.Y * vu + s.FA * va;
    block_multiplies_ += 10;
    if (k > 0) {
      y.field(k, Field::U) -= d.Mu_dt_c * v.field(k - 1, Field::U);
      y.field(k, Field::A) -= d.MA_dt_c * v.field(k - 1, Field::A);
      block_multiplies_ += 2;
    }
  }
  return y;
}

Vector SpaceTimeJacobian::apply(const Vector& v) const {
  BlockVector bv(disc_->sizes, num_steps());
  if (v.size() != bv.size()) throw Error("Jacobian apply: size mismatch");
  bv.data() = v;
  return apply(bv).data();
}

SpaceTimeSystem::SpaceTimeSystem(const Discretization& disc, int num_steps, Vector u_init, Vector A_init)
    : disc_(&disc), nt_(num_steps), u_init_(std::move(u_init)), A_init_(std::move(A_init)) {
  if (nt_ < 1) throw ConfigError("need at least one time step");
  if (u_init_.size() != disc.sizes.u || A_init_.size() != disc.sizes.a) throw Error("initial data has wrong size");
}

SpaceTimeSystem::SpaceTimeSystem(const Discretization& disc)
    : SpaceTimeSystem(disc, disc.num_steps, disc.u_init(), disc.A_init) {}

BlockVector SpaceTimeSystem::residual(const BlockVector& x) const {
  const Discretization& d = *disc_;
  if (x.num_steps() != nt_ || !(x.sizes() == d.sizes)) throw Error("residual: state has wrong shape");
  const ProblemSpec& pr = d.problem;
  BlockVector r(d.sizes, nt_);
  for (int k = 0; k < nt_; ++k) {
    const Vector u = x.field(k, Field::U), p = x.field(k, Field::P);
    const Vector j = x.field(k, Field::J), A = x.field(k, Field::A);
    const Vector u_prev = k == 0 ? u_init_ : Vector(x.field(k - 1, Field::U));
    const Vector A_prev = k == 0 ? A_init_ : Vector(x.field(k - 1, Field::A));

    Vector ru = d.Mu * (u - u_prev) / d.dt + pr.mu * (d.Ku * u) + d.B.transpose() * p +
                assemble_advection_u(d.Vu, u).residual + assemble_lorentz_blocks(d.Vu, d.Vj, d.VA, j, A).residual - d.f;
    for (std::size_t i = 0; i < d.u_bc.dofs.size(); ++i) ru[d.u_bc.dofs[i]] = u[d.u_bc.dofs[i]] - d.u_bc.values[i];

    Vector rp = d.B * u;
    rp[d.pressure_pin] = p[d.pressure_pin] - d.pressure_ref;

    Vector rA = d.MA * (A - A_prev) / d.dt + (pr.eta / pr.mu0) * (d.KA * A) + assemble_advection_A(d.VA, d.Vu, u, A).residual + d.E;
    for (std::size_t i = 0; i < d.A_bc.dofs.size(); ++i) rA[d.A_bc.dofs[i]] = A[d.A_bc.dofs[i]] - d.A_bc.values[i];

    r.field(k, Field::U) = ru;
    r.field(k, Field::P) = rp;
    r.field(k, Field::J) = d.Mj * j + d.KjA_s * A - d.h;
    r.field(k, Field::A) = rA;
  }
  return r;
}

SpaceTimeJacobian SpaceTimeSystem::jacobian(const BlockVector& x) const {
  const Discretization& d = *disc_;
  if (x.num_steps() != nt_ || !(x.sizes() == d.sizes)) throw Error("jacobian: state has wrong shape");
  std::vector<SlabBlocks> slabs(static_cast<std::size_t>(nt_));
  for (int k = 0; k < nt_; ++k) {
    SlabBlocks& s = slabs[static_cast<std::size_t>(k)];
    s.u = x.field(k, Field::U);
    s.A = x.field(k, Field::A);
    const Vector j = x.field(k, Field::J);

    const AdvectionU adv = assemble_advection_u(d.Vu, s.u);
    s.Fu = d.Fu_base + adv.W + adv.dW;
    set_identity_rows(s.Fu, d.u_bc.dofs);

    LorentzBlocks lor = assemble_lorentz_blocks(d.Vu, d.Vj, d.VA, j, s.A);
    s.Zj = std::move(lor.Zj);
    s.ZA = std::move(lor.ZA);
    zero_rows(s.Zj, d.u_bc.dofs);
    zero_rows(s.ZA, d.u_bc.dofs);

    AdvectionA adA = assemble_advection_A(d.VA, d.Vu, s.u, s.A);
    s.Y = std::move(adA.Y);
    zero_rows(s.Y, d.A_bc.dofs);
    s.FA = d.FA_base + adA.WA;
    set_identity_rows(s.FA, d.A_bc.dofs);
  }
  return SpaceTimeJacobian(d, std::move(slabs));
}

}  // namespace stmhd
