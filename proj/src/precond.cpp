#include "stmhd/precond.hpp"

#include <algorithm>
#include <cctype>

#include "stmhd/errors.hpp"

namespace stmhd {

std::array<double, 2> mean_magnetic_field(const FESpace& pot, const Vector& A) {
  if (pot.degree() != 1 || pot.components() != 1) throw ConfigError("mean field needs a scalar P1 potential");
  if (A.size() != pot.dof_count()) throw Error("mean field: potential has wrong size");
  ElementEval ev(pot, assembly_quadrature());
  std::array<double, 2> b{0.0, 0.0};
  for (int t = 0; t < pot.mesh().num_triangles(); ++t) {
    ev.reinit(t);
    for (int q = 0; q < ev.num_points(); ++q) {
      const auto g = ev.field_grad(A, 0, q);
      b[0] += ev.weight(q) * g[1];
      b[1] -= ev.weight(q) * g[0];
    }
  }
  const double area = pot.mesh().area();
  return {b[0] / area, b[1] / area};
}

double alfven_scaling(const FESpace& pot, const Vector& A, double mu0) {
  const auto b = mean_magnetic_field(pot, A);
  return (b[0] * b[0] + b[1] * b[1]) / mu0;
}

// ---------------------------------------------------------------------------

BlockBidiagonal::BlockBidiagonal(std::vector<SparseMatrix> diag, SparseMatrix coupling, std::string label)
    : diag_(std::move(diag)), coupling_(std::move(coupling)), label_(std::move(label)) {}

Vector BlockBidiagonal::apply(const Vector& x) const {
  const int n = block_size();
  Vector y(x.size());
  for (int k = 0; k < num_steps(); ++k) {
    y.segment(k * n, n) = diag(k) * x.segment(k * n, n);
    if (k > 0) y.segment(k * n, n) -= coupling_ * x.segment((k - 1) * n, n);
  }
  return y;
}

void BlockBidiagonal::factorize() const {
  if (!lu_.empty()) return;
  std::vector<LUFactor> lu;
  lu.reserve(diag_.size());
  for (int k = 0; k < num_steps(); ++k) lu.emplace_back(diag(k), label_ + " block " + std::to_string(k + 1));
  lu_ = std::move(lu);
}

Vector BlockBidiagonal::solve(const Vector& b) const {
  factorize();
  const int n = block_size();
  Vector x(b.size());
  for (int k = 0; k < num_steps(); ++k) {
    Vector rhs = b.segment(k * n, n);
    if (k > 0) rhs += coupling_ * x.segment((k - 1) * n, n);
    x.segment(k * n, n) = lu_[static_cast<std::size_t>(k)].solve(rhs);
  }
  return x;
}

SparseMatrix BlockBidiagonal::assemble() const {
  const int n = block_size();
  std::vector<Triplet> t;
  for (int k = 0; k < num_steps(); ++k) {
    for (int r = 0; r < n; ++r)
      for (SparseMatrix::InnerIterator it(diag(k), r); it; ++it) t.emplace_back(k * n + r, k * n + it.col(), it.value());
    if (k > 0)
      for (int r = 0; r < n; ++r)
        for (SparseMatrix::InnerIterator it(coupling_, r); it; ++it) t.emplace_back(k * n + r, (k - 1) * n + it.col(), -it.value());
  }
  return from_triplets(n * num_steps(), n * num_steps(), t);
}

// ---------------------------------------------------------------------------

PressureSchurApprox::PressureSchurApprox(const Discretization& disc, const std::vector<const Vector*>& u_slabs)
    : disc_(&disc) {
  Kp_pinned_ = eliminate_symmetric(disc.Kp, {disc.pressure_pin}, 1.0);
  Kp_lu_ = LUFactor(Kp_pinned_, "pinned pressure stiffness");
  Mp_lu_ = LUFactor(disc.Mp, "pressure mass");
  std::vector<SparseMatrix> diag;
  const SparseMatrix base = disc.Mp / disc.dt + disc.problem.mu * disc.Kp;
  for (const Vector* u : u_slabs) diag.push_back(base + assemble_pcd_advection(disc.Vp, disc.Vu, *u));
  Fp_ = BlockBidiagonal(std::move(diag), disc.Mp / disc.dt, "pressure convection-diffusion");
}

// The Jacobian replaces the pinned pressure row by an identity row. The
// unpinned PCD operator and the unpinned Schur complement both annihilate
// per-slab constants, so the pinned inverse is: make the right-hand side
// compatible (zero sum), apply the unpinned PCD inverse, then shift each slab
// by a constant so that x_pin = r_pin.
Vector PressureSchurApprox::apply_inverse(const Vector& r) const {
  const int n = disc_->sizes.p;
  const int pin = disc_->pressure_pin;
  Vector a(r.size());
  for (int k = 0; k < num_steps(); ++k) {
    Vector rk = r.segment(k * n, n);
    rk[pin] -= rk.sum();
    a.segment(k * n, n) = Kp_lu_.solve(rk);
    a[k * n + pin] = 0.0;
  }
  const Vector b = Fp_.apply(a);
  Vector x(r.size());
  for (int k = 0; k < num_steps(); ++k) {
    x.segment(k * n, n) = -Mp_lu_.solve(b.segment(k * n, n));
    x.segment(k * n, n).array() += r[k * n + pin] - x[k * n + pin];
  }
  return x;
}

Vector PressureSchurApprox::apply(const Vector& x) const {
  const int n = disc_->sizes.p;
  const int pin = disc_->pressure_pin;
  Vector a(x.size());
  for (int k = 0; k < num_steps(); ++k) a.segment(k * n, n) = disc_->Mp * x.segment(k * n, n);
  const Vector b = Fp_.solve(a);
  Vector y(x.size());
  for (int k = 0; k < num_steps(); ++k) {
    y.segment(k * n, n) = -(disc_->Kp * b.segment(k * n, n));
    y[k * n + pin] = x[k * n + pin];
  }
  return y;
}

// ---------------------------------------------------------------------------

MagneticSchurApprox::MagneticSchurApprox(const Discretization& disc, const std::vector<const Vector*>& u_slabs,
                                         const std::vector<const Vector*>& A_slabs)
    : disc_(&disc) {
  if (u_slabs.size() != A_slabs.size()) throw Error("magnetic Schur approximation: slab count mismatch");
  const auto& dir = disc.A_bc.dofs;
  Ms_ = eliminate_symmetric(disc.MA, dir, 1.0);
  Ks_ = eliminate_symmetric(disc.KA, dir, 0.0);
  Dinv_ = Ms_.diagonal().cwiseInverse();
  Ms_lu_ = LUFactor(Ms_, "potential mass");
  const SparseMatrix coupling = eliminate_symmetric(disc.MA / disc.dt, dir, 0.0);

  const int nt = static_cast<int>(u_slabs.size());
  std::vector<SparseMatrix> F;
  for (int k = 0; k < nt; ++k)
    F.push_back(eliminate_symmetric(disc.FA_base + assemble_advection_A(disc.VA, disc.Vu, *u_slabs[k], *A_slabs[k]).WA, dir, 1.0));

  SparseMatrix D(Dinv_.size(), Dinv_.size());
  D.reserve(Dinv_.size());
  for (Eigen::Index i = 0; i < Dinv_.size(); ++i) D.insert(i, i) = Dinv_[i];
  D.makeCompressed();

  for (int k = 0; k < nt; ++k) {
    const double s = alfven_scaling(disc.VA, *A_slabs[k], disc.problem.mu0);
    scaling_.push_back(s);
    C_diag_.push_back(SparseMatrix(F[k] * D * F[k]) + s * Ks_);
    if (k == 0)
      C_sub1_.emplace_back(Ms_.rows(), Ms_.cols());
    else
      C_sub1_.push_back(-(SparseMatrix(coupling * D * F[k - 1]) + SparseMatrix(F[k] * D * coupling)));
  }
  C_sub2_ = SparseMatrix(coupling * D * coupling);
  for (int k = 0; k < nt; ++k) C_lu_.emplace_back(C_diag_[k], "wave operator block " + std::to_string(k + 1));
  FA_ = BlockBidiagonal(std::move(F), coupling, "potential advection-diffusion");
}

Vector MagneticSchurApprox::apply_C(const Vector& x) const {
  const int n = disc_->sizes.a;
  Vector y(x.size());
  for (int k = 0; k < num_steps(); ++k) {
    y.segment(k * n, n) = C_diag(k) * x.segment(k * n, n);
    if (k >= 1) y.segment(k * n, n) += C_sub1(k) * x.segment((k - 1) * n, n);
    if (k >= 2) y.segment(k * n, n) += C_sub2_ * x.segment((k - 2) * n, n);
  }
  return y;
}

Vector MagneticSchurApprox::solve_C(const Vector& b) const {
  const int n = disc_->sizes.a;
  Vector x(b.size());
  for (int k = 0; k < num_steps(); ++k) {
    Vector rhs = b.segment(k * n, n);
    if (k >= 1) rhs -= C_sub1(k) * x.segment((k - 1) * n, n);
    if (k >= 2) rhs -= C_sub2_ * x.segment((k - 2) * n, n);
    x.segment(k * n, n) = C_lu_[static_cast<std::size_t>(k)].solve(rhs);
  }
  return x;
}

Vector MagneticSchurApprox::apply_inverse(const Vector& r) const {
  const int n = disc_->sizes.a;
  Vector v(r.size());
  for (int k = 0; k < num_steps(); ++k) v.segment(k * n, n) = Ms_lu_.solve(r.segment(k * n, n));
  return solve_C(FA_.apply(v));
}

Vector MagneticSchurApprox::apply(const Vector& x) const {
  const int n = disc_->sizes.a;
  const Vector v = FA_.solve(apply_C(x));
  Vector y(x.size());
  for (int k = 0; k < num_steps(); ++k) y.segment(k * n, n) = Ms_ * v.segment(k * n, n);
  return y;
}

SparseMatrix MagneticSchurApprox::assemble_C() const {
  const int n = disc_->sizes.a;
  std::vector<Triplet> t;
  auto put = [&](const SparseMatrix& m, int bi, int bj) {
    for (int r = 0; r < n; ++r)
      for (SparseMatrix::InnerIterator it(m, r); it; ++it) t.emplace_back(bi * n + r, bj * n + it.col(), it.value());
  };
  for (int k = 0; k < num_steps(); ++k) {
    put(C_diag(k), k, k);
    if (k >= 1) put(C_sub1(k), k, k - 1);
    if (k >= 2) put(C_sub2_, k, k - 2);
  }
  return from_triplets(n * num_steps(), n * num_steps(), t);
}

// ---------------------------------------------------------------------------

std::string_view to_string(PrecondVariant v) {
  switch (v) {
    case PrecondVariant::FullP: return "P";
    case PrecondVariant::SimplifiedPtilde: return "Ptilde";
    case PrecondVariant::UpperTriangularPT: return "PT";
  }
  return "?";
}

PrecondVariant parse_precond_variant(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "p" || s == "full" || s == "fullp") return PrecondVariant::FullP;
  if (s == "ptilde" || s == "simplified" || s == "simplifiedptilde") return PrecondVariant::SimplifiedPtilde;
  if (s == "pt" || s == "p_t" || s == "upper" || s == "uppertriangularpt") return PrecondVariant::UpperTriangularPT;
  throw ConfigError("unknown preconditioner '" + std::string(name) + "'");
}

namespace {

std::vector<const Vector*> slab_u(const SpaceTimeJacobian& J) {
  std::vector<const Vector*> v;
  for (int k = 0; k < J.num_steps(); ++k) v.push_back(&J.slab(k).u);
  return v;
}

std::vector<const Vector*> slab_A(const SpaceTimeJacobian& J) {
  std::vector<const Vector*> v;
  for (int k = 0; k < J.num_steps(); ++k) v.push_back(&J.slab(k).A);
  return v;
}

BlockBidiagonal make_Fu(const SpaceTimeJacobian& J) {
  std::vector<SparseMatrix> diag;
  for (int k = 0; k < J.num_steps(); ++k) diag.push_back(J.slab(k).Fu);
  return BlockBidiagonal(std::move(diag), J.disc().Mu_dt_c, "velocity advection-diffusion");
}

// Per-slab product with a block-diagonal operator on stacked field vectors.
template <class Get>
Vector block_diag_mul(int nt, int rows, int cols, const Vector& x, Get&& get) {
  Vector y(static_cast<Eigen::Index>(nt) * rows);
  for (int k = 0; k < nt; ++k) y.segment(k * rows, rows) = get(k) * x.segment(k * cols, cols);
  return y;
}

}  // namespace

SpaceTimePreconditioner::SpaceTimePreconditioner(const SpaceTimeJacobian& J, PrecondVariant variant)
    : J_(&J),
      variant_(variant),
      Fu_(make_Fu(J)),
      pressure_(J.disc(), slab_u(J)),
      magnetic_(J.disc(), slab_u(J), slab_A(J)) {
  Fu_.factorize();
}

Vector SpaceTimePreconditioner::mul_Bt(const Vector& x) const {
  const auto& d = J_->disc();
  return block_diag_mul(num_steps(), d.sizes.u, d.sizes.p, x, [&](int) -> const SparseMatrix& { return d.Bt_c; });
}
Vector SpaceTimePreconditioner::mul_B(const Vector& x) const {
  const auto& d = J_->disc();
  return block_diag_mul(num_steps(), d.sizes.p, d.sizes.u, x, [&](int) -> const SparseMatrix& { return d.B_c; });
}
Vector SpaceTimePreconditioner::mul_Jpp(const Vector& x) const {
  const auto& d = J_->disc();
  return block_diag_mul(num_steps(), d.sizes.p, d.sizes.p, x, [&](int) -> const SparseMatrix& { return d.Jpp; });
}
Vector SpaceTimePreconditioner::mul_Zj(const Vector& x) const {
  const auto& d = J_->disc();
  return block_diag_mul(num_steps(), d.sizes.u, d.sizes.j, x, [&](int k) -> const SparseMatrix& { return J_->slab(k).Zj; });
}
Vector SpaceTimePreconditioner::mul_ZA(const Vector& x) const {
  const auto& d = J_->disc();
  return block_diag_mul(num_steps(), d.sizes.u, d.sizes.a, x, [&](int k) -> const SparseMatrix& { return J_->slab(k).ZA; });
}
Vector SpaceTimePreconditioner::mul_Y(const Vector& x) const {
  const auto& d = J_->disc();
  return block_diag_mul(num_steps(), d.sizes.a, d.sizes.u, x, [&](int k) -> const SparseMatrix& { return J_->slab(k).Y; });
}
Vector SpaceTimePreconditioner::mul_Mj(const Vector& x) const {
  const auto& d = J_->disc();
  return block_diag_mul(num_steps(), d.sizes.j, d.sizes.j, x, [&](int) -> const SparseMatrix& { return d.Mj; });
}
Vector SpaceTimePreconditioner::mul_KjA(const Vector& x) const {
  const auto& d = J_->disc();
  return block_diag_mul(num_steps(), d.sizes.j, d.sizes.a, x, [&](int) -> const SparseMatrix& { return d.KjA_s; });
}
Vector SpaceTimePreconditioner::solve_Mj(const Vector& b) const {
  const auto& d = J_->disc();
  const int n = d.sizes.j;
  Vector x(b.size());
  for (int k = 0; k < num_steps(); ++k) x.segment(k * n, n) = d.Mj_lu.solve(b.segment(k * n, n));
  return x;
}

namespace {

struct Split {
  Vector u, p, j, a;
};

Split split(const Discretization& d, int nt, const Vector& flat) {
  BlockVector bv(d.sizes, nt);
  if (flat.size() != bv.size()) throw Error("preconditioner: vector has wrong size");
  bv.data() = flat;
  return {bv.gather(Field::U), bv.gather(Field::P), bv.gather(Field::J), bv.gather(Field::A)};
}

Vector join(const Discretization& d, int nt, const Split& s) {
  BlockVector bv(d.sizes, nt);
  bv.scatter(Field::U, s.u);
  bv.scatter(Field::P, s.p);
  bv.scatter(Field::J, s.j);
  bv.scatter(Field::A, s.a);
  return bv.data();
}

}  // namespace

Vector SpaceTimePreconditioner::apply_inverse(const Vector& r_flat) const {
  const auto& d = J_->disc();
  const Split r = split(d, num_steps(), r_flat);
  Split x;
  if (variant_ == PrecondVariant::UpperTriangularPT) {
    x.a = magnetic_.apply_inverse(r.a);
    x.j = solve_Mj(r.j - mul_KjA(x.a));
    x.p = pressure_.apply_inverse(r.p);
    x.u = Fu_.solve(r.u - mul_Bt(x.p) - mul_Zj(x.j) - mul_ZA(x.a));
    return join(d, num_steps(), x);
  }
  // Step 1: lower velocity-magnetic factor (full P only).
  Vector ya = r.a;
  if (variant_ == PrecondVariant::FullP) ya += mul_Y(Fu_.solve(mul_Zj(solve_Mj(r.j)) - r.u));
  // Step 2: upper velocity-magnetic factor, followed by multiplication with F_u.
  x.a = magnetic_.apply_inverse(ya);
  x.j = solve_Mj(r.j - mul_KjA(x.a));
  const Vector zu = r.u - mul_Zj(x.j) - mul_ZA(x.a);
  // Step 3: lower velocity-pressure factor.
  const Vector wp = r.p - mul_B(Fu_.solve(zu));
  // Step 4: upper velocity-pressure factor.
  x.p = pressure_.apply_inverse(wp);
  x.u = Fu_.solve(zu - mul_Bt(x.p));
  return join(d, num_steps(), x);
}

Vector SpaceTimePreconditioner::apply(const Vector& x_flat) const {
  const auto& d = J_->disc();
  const Split x = split(d, num_steps(), x_flat);
  Split r;
  if (variant_ == PrecondVariant::UpperTriangularPT) {
    r.u = Fu_.apply(x.u) + mul_Bt(x.p) + mul_Zj(x.j) + mul_ZA(x.a);
    r.p = pressure_.apply(x.p);
    r.j = mul_Mj(x.j) + mul_KjA(x.a);
    r.a = magnetic_.apply(x.a);
    return join(d, num_steps(), r);
  }
  // Reverse of the four steps of apply_inverse.
  const Vector wu = Fu_.apply(x.u) + mul_Bt(x.p);
  const Vector wp = pressure_.apply(x.p) + mul_B(Fu_.solve(wu));
  r.u = wu + mul_Zj(x.j) + mul_ZA(x.a);
  r.p = wp;
  r.j = mul_Mj(x.j) + mul_KjA(x.a);
  r.a = magnetic_.apply(x.a);
  if (variant_ == PrecondVariant::FullP) r.a -= mul_Y(Fu_.solve(mul_Zj(solve_Mj(r.j)) - r.u));
  return join(d, num_steps(), r);
}

SingleStepPreconditioner::SingleStepPreconditioner(const SpaceTimeJacobian& J, int k)
    : J1_(J.restrict_to_slab(k)), pc_(J1_, PrecondVariant::UpperTriangularPT) {}

}  // namespace stmhd
