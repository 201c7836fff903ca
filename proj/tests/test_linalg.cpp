#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "stmhd/block_vector.hpp"
#include "stmhd/errors.hpp"
#include "stmhd/gmres.hpp"
#include "stmhd/lu.hpp"
#include "stmhd/sparse.hpp"

using namespace stmhd;

namespace {

Vector random_vector(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = d(gen);
  return v;
}

// Nonsymmetric, diagonally dominant tridiagonal test matrix.
SparseMatrix convection_diffusion(int n, double c) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 2.0 + 0.01 * i);
    if (i > 0) t.emplace_back(i, i - 1, -1.0 - c);
    if (i + 1 < n) t.emplace_back(i, i + 1, -1.0 + c);
  }
  return from_triplets(n, n, t);
}

}  // namespace

TEST(Sparse, TripletsSumDuplicatesAndStayWellFormed) {
  const SparseMatrix a = from_triplets(3, 3, {Triplet(0, 2, 1.0), Triplet(0, 0, 2.0), Triplet(0, 2, 3.0), Triplet(2, 1, -1.0)});
  EXPECT_TRUE(is_well_formed(a));
  EXPECT_EQ(a.coeff(0, 2), 4.0);
  EXPECT_EQ(a.coeff(0, 0), 2.0);
  EXPECT_EQ(a.nonZeros(), 3);
  const SparseMatrix i = identity(4);
  EXPECT_EQ(to_dense(i), DenseMatrix::Identity(4, 4));
}

TEST(Sparse, RowAndSymmetricElimination) {
  SparseMatrix a = convection_diffusion(5, 0.3);
  const DenseMatrix d = to_dense(a);
  SparseMatrix z = a;
  zero_rows(z, {1, 3});
  DenseMatrix dz = d;
  dz.row(1).setZero();
  dz.row(3).setZero();
  EXPECT_EQ(to_dense(z), dz);

  SparseMatrix s = a;
  set_identity_rows(s, {2}, 7.0);
  DenseMatrix ds = d;
  ds.row(2).setZero();
  ds(2, 2) = 7.0;
  EXPECT_EQ(to_dense(s), ds);

  const SparseMatrix e = eliminate_symmetric(a, {0, 4}, 1.0);
  DenseMatrix de = d;
  for (int k : {0, 4}) {
    de.row(k).setZero();
    de.col(k).setZero();
    de(k, k) = 1.0;
  }
  EXPECT_EQ(to_dense(e), de);
  EXPECT_TRUE(is_well_formed(e));
}

TEST(LU, SolvesNonsymmetricSystem) {
  const SparseMatrix a = convection_diffusion(200, 0.4);
  const Vector x = random_vector(200, 11);
  const Vector b = a * x;
  const LUFactor lu(a, "test");
  EXPECT_TRUE(lu.valid());
  EXPECT_EQ(lu.size(), 200);
  EXPECT_LT((lu.solve(b) - x).norm() / x.norm(), 1e-12);
}

TEST(LU, NeedsPivoting) {
  // Zero leading diagonal: fails without row exchanges.
  const SparseMatrix a = from_triplets(2, 2, {Triplet(0, 1, 1.0), Triplet(1, 0, 1.0), Triplet(1, 1, 1.0)});
  const Vector x = LUFactor(a).solve(Vector::Ones(2));
  EXPECT_NEAR(x[0], 0.0, 1e-15);
  EXPECT_NEAR(x[1], 1.0, 1e-15);
}

TEST(LU, SingularMatrixNamesTheBlock) {
  const SparseMatrix a = from_triplets(3, 3, {Triplet(0, 0, 1.0), Triplet(1, 1, 1.0), Triplet(2, 0, 1.0)});
  try {
    LUFactor lu(a, "pressure stiffness");
    FAIL() << "expected SingularMatrixError";
  } catch (const SingularMatrixError& e) {
    EXPECT_NE(std::string(e.what()).find("pressure stiffness"), std::string::npos);
  }
}

TEST(Gmres, ExactPreconditionerConvergesInOneIteration) {
  const SparseMatrix a = convection_diffusion(100, 0.2);
  const LUFactor lu(a);
  const Vector b = random_vector(100, 3);
  GmresConfig cfg;
  cfg.rel_tol = 1e-12;
  const GmresResult r = gmres([&](const Vector& v) { return Vector(a * v); }, [&](const Vector& v) { return lu.solve(v); }, b,
                              Vector::Zero(100), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_LT((a * r.x - b).norm(), 1e-12 * b.norm());
}

TEST(Gmres, UnpreconditionedMonotoneHistory) {
  const SparseMatrix a = convection_diffusion(60, 0.3);
  const Vector b = random_vector(60, 5);
  GmresConfig cfg;
  cfg.rel_tol = 1e-10;
  const GmresResult r = gmres([&](const Vector& v) { return Vector(a * v); }, [](const Vector& v) { return v; }, b,
                              Vector::Zero(60), cfg);
  EXPECT_TRUE(r.converged);
  ASSERT_EQ(static_cast<int>(r.residual_history.size()), r.iterations + 1);
  for (std::size_t i = 1; i < r.residual_history.size(); ++i)
    EXPECT_LE(r.residual_history[i], r.residual_history[i - 1] * (1 + 1e-12));
  EXPECT_LE(r.true_residual, 1e-10 * b.norm() * 1.0001);
  EXPECT_NEAR(r.true_residual, (b - a * r.x).norm(), 1e-12);
}

TEST(Gmres, RestartedVariantConverges) {
  const SparseMatrix a = convection_diffusion(80, 0.1);
  const Vector b = random_vector(80, 6);
  GmresConfig cfg;
  cfg.rel_tol = 1e-8;
  cfg.restart = 10;
  cfg.max_iters = 2000;
  const GmresResult r = gmres([&](const Vector& v) { return Vector(a * v); }, [](const Vector& v) { return v; }, b,
                              Vector::Zero(80), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_LT((b - a * r.x).norm(), 1e-8 * b.norm() * 1.0001);
}

TEST(Gmres, ZeroRightHandSideAndInitialGuess) {
  const SparseMatrix a = convection_diffusion(10, 0.0);
  GmresConfig cfg;
  const GmresResult r0 = gmres([&](const Vector& v) { return Vector(a * v); }, [](const Vector& v) { return v; },
                               Vector::Zero(10), Vector::Zero(10), cfg);
  EXPECT_TRUE(r0.converged);
  EXPECT_EQ(r0.iterations, 0);
  // An exact initial guess also needs no iteration.
  const Vector x = random_vector(10, 8);
  const GmresResult r1 = gmres([&](const Vector& v) { return Vector(a * v); }, [](const Vector& v) { return v; },
                               a * x, x, cfg);
  EXPECT_EQ(r1.iterations, 0);
}

TEST(Gmres, AbsoluteToleranceStops) {
  const SparseMatrix a = convection_diffusion(40, 0.2);
  const Vector b = 1e-16 * random_vector(40, 9);
  GmresConfig cfg;
  cfg.rel_tol = 1e-30;
  cfg.abs_tol = 1e-14;
  const GmresResult r = gmres([&](const Vector& v) { return Vector(a * v); }, [](const Vector& v) { return v; }, b,
                              Vector::Zero(40), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
}

TEST(Gmres, IterationLimitReportsNonConvergence) {
  const SparseMatrix a = convection_diffusion(100, 0.0);
  const Vector b = random_vector(100, 10);
  GmresConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.max_iters = 3;
  const GmresResult r = gmres([&](const Vector& v) { return Vector(a * v); }, [](const Vector& v) { return v; }, b,
                              Vector::Zero(100), cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
}

TEST(Gmres, NanRaisesBreakdown) {
  const Vector b = Vector::Ones(5);
  GmresConfig cfg;
  auto bad = [](const Vector& v) { return Vector(v * std::numeric_limits<double>::quiet_NaN()); };
  EXPECT_THROW(gmres(bad, [](const Vector& v) { return v; }, b, Vector::Zero(5), cfg), BreakdownError);
}

TEST(BlockVector, LayoutGatherScatter) {
  const FieldSizes s{5, 3, 2, 2};
  EXPECT_EQ(s.slab(), 12);
  EXPECT_EQ(s.offset(Field::J), 8);
  BlockVector v(s, 3);
  EXPECT_EQ(v.size(), 36);
  v.data() = random_vector(36, 12);
  for (Field f : {Field::U, Field::P, Field::J, Field::A}) {
    const Vector g = v.gather(f);
    ASSERT_EQ(g.size(), 3 * s[f]);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(g.segment(k * s[f], s[f]), Vector(v.field(k, f)));
    BlockVector w(s, 3);
    w.data().setZero();
    w.scatter(f, g);
    EXPECT_EQ(w.gather(f), g);
  }
  EXPECT_EQ(v.field(1, Field::P)[0], v.data()[12 + 5]);
  EXPECT_NEAR(v.norm(), v.data().norm(), 0.0);
}
