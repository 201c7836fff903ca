#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <random>

#include "stmhd/assembly.hpp"

using namespace stmhd;

namespace {

std::shared_ptr<const Mesh> unit_mesh(int n) { return std::make_shared<const Mesh>(0.0, 1.0, 0.0, 1.0, n, n); }

Vector random_vector(int n, unsigned seed, double scale = 1.0) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> d(-scale, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = d(gen);
  return v;
}

// Vector field interpolated componentwise.
template <class F, class G>
Vector interpolate_vector(const FESpace& s, F fx, G fy) {
  Vector v(s.dof_count());
  for (int n = 0; n < s.num_nodes(); ++n) {
    const Point& p = s.node_coords(n);
    v[s.dof(0, n)] = fx(p[0], p[1]);
    v[s.dof(1, n)] = fy(p[0], p[1]);
  }
  return v;
}

DenseMatrix local_matrix(const FESpace& s, int t, bool stiffness) {
  ElementEval ev(s, assembly_quadrature());
  ev.reinit(t);
  const int n = ev.num_basis();
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (int q = 0; q < ev.num_points(); ++q)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (stiffness)
          a(i, j) += ev.weight(q) * (ev.grad(q, i)[0] * ev.grad(q, j)[0] + ev.grad(q, i)[1] * ev.grad(q, j)[1]);
        else
          a(i, j) += ev.weight(q) * ev.value(q, i) * ev.value(q, j);
      }
  return a;
}

}  // namespace

TEST(Assembly, P1ReferenceMassAndStiffness) {
  // Reference-triangle oracles from the tabulated basis.
  const LagrangeBasis b(1);
  const Tabulation tab = tabulate(b, assembly_quadrature());
  const auto& quad = assembly_quadrature();
  DenseMatrix m = DenseMatrix::Zero(3, 3), k = DenseMatrix::Zero(3, 3);
  for (int q = 0; q < tab.num_points; ++q)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double w = quad.weights[static_cast<std::size_t>(q)];
        m(i, j) += w * tab.values[q * 3 + i] * tab.values[q * 3 + j];
        k(i, j) += w * (tab.grads[q * 3 + i][0] * tab.grads[q * 3 + j][0] + tab.grads[q * 3 + i][1] * tab.grads[q * 3 + j][1]);
      }
  DenseMatrix m_ref(3, 3), k_ref(3, 3);
  m_ref << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  k_ref << 2, -1, -1, -1, 1, 0, -1, 0, 1;
  EXPECT_LT((m - m_ref / 24.0).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((k - k_ref / 2.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Assembly, P1ElementMatricesOnMeshTriangles) {
  auto mesh = unit_mesh(1);
  const FESpace s(mesh, 1, 1);
  DenseMatrix m_ref(3, 3);
  m_ref << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  // Triangle 0 is (0,0),(1,0),(1,1): right angle at the second vertex.
  DenseMatrix k0(3, 3);
  k0 << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  EXPECT_LT((local_matrix(s, 0, false) - m_ref / 24.0).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((local_matrix(s, 0, true) - k0 / 2.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Assembly, MassAndStiffnessInvariants) {
  auto mesh = std::make_shared<const Mesh>(0.0, 2.0, 0.0, 1.0, 4, 2);
  for (int k = 1; k <= 3; ++k) {
    const FESpace s(mesh, k, 1);
    const SparseMatrix M = assemble_mass(s);
    const SparseMatrix K = assemble_stiffness(s);
    EXPECT_TRUE(is_well_formed(M));
    const Vector one = Vector::Ones(s.dof_count());
    EXPECT_NEAR(one.dot(M * one), 2.0, 1e-13);
    EXPECT_LT((K * one).cwiseAbs().maxCoeff(), 1e-12);
    const DenseMatrix Md = to_dense(M), Kd = to_dense(K);
    EXPECT_LT((Md - Md.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((Kd - Kd.transpose()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_EQ(Eigen::LLT<DenseMatrix>(Md).info(), Eigen::Success);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<DenseMatrix>(Kd).eigenvalues().minCoeff(), -1e-12);
    // ∫ |∇x|² = area, ∫ x y = (2²/2)(1/2) = 1 on [0,2]x[0,1].
    const Vector x = interpolate(s, [](double a, double) { return a; });
    const Vector y = interpolate(s, [](double, double b) { return b; });
    EXPECT_NEAR(x.dot(K * x), 2.0, 1e-12);
    EXPECT_NEAR(x.dot(M * y), 1.0, 1e-13);
  }
}

TEST(Assembly, VectorMassIsComponentBlockDiagonal) {
  auto mesh = unit_mesh(2);
  const FESpace s1(mesh, 3, 1), s2(mesh, 3, 2);
  const DenseMatrix M1 = to_dense(assemble_mass(s1));
  const DenseMatrix M2 = to_dense(assemble_mass(s2));
  const int n = s1.dof_count();
  EXPECT_LT((M2.topLeftCorner(n, n) - M1).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((M2.bottomRightCorner(n, n) - M1).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(M2.topRightCorner(n, n).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Assembly, DivergenceBilinearForm) {
  auto mesh = unit_mesh(3);
  const FESpace vel(mesh, 3, 2), prs(mesh, 2, 1);
  const SparseMatrix B = assemble_divergence(vel, prs);
  EXPECT_EQ(B.rows(), prs.dof_count());
  EXPECT_EQ(B.cols(), vel.dof_count());
  const Vector u = interpolate_vector(vel, [](double x, double) { return x * x; }, [](double x, double y) { return x * y; });
  const Vector q = interpolate(prs, [](double, double y) { return 1.0 + y; });
  // -∫ (1 + y) 3x = -9/4
  EXPECT_NEAR(q.dot(B * u), -2.25, 1e-13);
}

TEST(Assembly, MixedCurrentPotential) {
  auto mesh = unit_mesh(3);
  const FESpace cur(mesh, 1, 1), pot(mesh, 1, 1);
  const SparseMatrix K = assemble_mixed_jA(cur, pot);
  const Vector chi = interpolate(pot, [](double x, double y) { return x + 2.0 * y; });
  const Vector psi = interpolate(cur, [](double x, double) { return 3.0 * x; });
  EXPECT_NEAR(psi.dot(K * chi), 3.0, 1e-13);
  const DenseMatrix Kd = to_dense(K), Sd = to_dense(assemble_stiffness(pot));
  EXPECT_LT((Kd - Sd).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Assembly, AdvectionUResidualAndLinearization) {
  auto mesh = unit_mesh(2);
  const FESpace vel(mesh, 3, 2);
  const Vector u = random_vector(vel.dof_count(), 1);
  const Vector v = random_vector(vel.dof_count(), 2);
  const AdvectionU a = assemble_advection_u(vel, u);
  // The convective form is bilinear: residual(u) = W(u) u = dW(u) u.
  EXPECT_LT((a.residual - a.W * u).norm(), 1e-12 * a.residual.norm());
  EXPECT_LT((a.residual - a.dW * u).norm(), 1e-12 * a.residual.norm());
  for (double eps : {1e-4, 1e-6}) {
    const Vector fd = (assemble_advection_u(vel, u + eps * v).residual - assemble_advection_u(vel, u - eps * v).residual) / (2 * eps);
    const Vector lin = a.linearization() * v;
    EXPECT_LT((fd - lin).norm() / lin.norm(), 1e-7) << "eps=" << eps;
  }
}

TEST(Assembly, AdvectionUExactValue) {
  // u = (1, 0): (u·∇)u = 0. u = (x, 0): (u·∇)u = (x, 0), ∫ x φ tested with φ = (1, 0) gives 1/2.
  auto mesh = unit_mesh(2);
  const FESpace vel(mesh, 3, 2);
  const Vector c = interpolate_vector(vel, [](double, double) { return 1.0; }, [](double, double) { return 0.0; });
  EXPECT_LT(assemble_advection_u(vel, c).residual.cwiseAbs().maxCoeff(), 1e-14);
  const Vector u = interpolate_vector(vel, [](double x, double) { return x; }, [](double, double) { return 0.0; });
  EXPECT_NEAR(c.dot(assemble_advection_u(vel, u).residual), 0.5, 1e-13);
}

TEST(Assembly, LorentzBilinearIdentities) {
  for (int n : {2, 4, 8}) {
    auto mesh = unit_mesh(n);
    const FESpace vel(mesh, 3, 2), cur(mesh, 1, 1), pot(mesh, 1, 1);
    const Vector j = random_vector(cur.dof_count(), 3);
    const Vector A = random_vector(pot.dof_count(), 4);
    const LorentzBlocks l = assemble_lorentz_blocks(vel, cur, pot, j, A);
    const double s = l.residual.norm();
    EXPECT_LT((l.residual - l.Zj * j).norm(), 1e-12 * s);
    EXPECT_LT((l.residual - l.ZA * A).norm(), 1e-12 * s);
  }
}

TEST(Assembly, LorentzExactValue) {
  // j = 2, A = y: ∫ j ∂_y A φ_y with φ = (0, 1) equals 2 on the unit square.
  auto mesh = unit_mesh(2);
  const FESpace vel(mesh, 3, 2), cur(mesh, 1, 1), pot(mesh, 1, 1);
  const Vector j = interpolate(cur, [](double, double) { return 2.0; });
  const Vector A = interpolate(pot, [](double, double y) { return y; });
  const Vector phi = interpolate_vector(vel, [](double, double) { return 0.0; }, [](double, double) { return 1.0; });
  EXPECT_NEAR(phi.dot(assemble_lorentz_blocks(vel, cur, pot, j, A).residual), 2.0, 1e-13);
}

TEST(Assembly, AdvectionABilinearIdentities) {
  for (int n : {2, 4, 8}) {
    auto mesh = unit_mesh(n);
    const FESpace vel(mesh, 3, 2), pot(mesh, 1, 1);
    const Vector u = random_vector(vel.dof_count(), 5);
    const Vector A = random_vector(pot.dof_count(), 6);
    const AdvectionA a = assemble_advection_A(pot, vel, u, A);
    const double s = a.residual.norm();
    EXPECT_LT((a.residual - a.WA * A).norm(), 1e-12 * s);
    EXPECT_LT((a.residual - a.Y * u).norm(), 1e-12 * s);
  }
}

TEST(Assembly, PcdAdvectionAnnihilatesConstants) {
  auto mesh = unit_mesh(3);
  const FESpace vel(mesh, 3, 2), prs(mesh, 2, 1);
  const Vector u = random_vector(vel.dof_count(), 7);
  const SparseMatrix W = assemble_pcd_advection(prs, vel, u);
  EXPECT_LT((W * Vector::Ones(prs.dof_count())).cwiseAbs().maxCoeff(), 1e-13);
  // u = (1, 0): ∫ ∂_x q_n q_m, tested with q = x and 1 gives area.
  const Vector c = interpolate_vector(vel, [](double, double) { return 1.0; }, [](double, double) { return 0.0; });
  const Vector x = interpolate(prs, [](double a, double) { return a; });
  EXPECT_NEAR(Vector::Ones(prs.dof_count()).dot(assemble_pcd_advection(prs, vel, c) * x), 1.0, 1e-13);
}

TEST(Assembly, LoadsAndIntegrals) {
  auto mesh = std::make_shared<const Mesh>(0.0, 3.0, 0.0, 0.5, 6, 2);
  const FESpace s(mesh, 2, 1);
  EXPECT_NEAR(assemble_load(s, [](double, double) { return 1.0; }).sum(), 1.5, 1e-13);
  EXPECT_NEAR(assemble_load(s, [](double x, double y) { return x * y; }).sum(), 4.5 * 0.125, 1e-13);
  EXPECT_NEAR(assemble_boundary_load(s, BoundaryTag::Top, [](double, double) { return 1.0; }).sum(), 3.0, 1e-13);
  EXPECT_NEAR(assemble_boundary_load(s, BoundaryTag::Left, [](double, double y) { return y; }).sum(), 0.125, 1e-13);
  const Vector bl = assemble_boundary_load(s, BoundaryTag::Top, [](double x, double) { return x; });
  for (int n = 0; n < s.num_nodes(); ++n)
    if (s.node_coords(n)[1] < 0.5) EXPECT_NEAR(bl[n], 0.0, 1e-15);
  EXPECT_NEAR(integrate(s, interpolate(s, [](double x, double) { return x * x; })), 9.0 * 0.5, 1e-12);
}
