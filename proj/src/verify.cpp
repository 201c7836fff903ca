#include "stmhd/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "stmhd/errors.hpp"
#include "stmhd/precond.hpp"
#include "stmhd/solver.hpp"

namespace stmhd {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Vector random_vector(Eigen::Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

// Worst relative central-difference error of the Jacobian over a few
// random directions.
double jacobian_fd_error(const SpaceTimeSystem& sys, const BlockVector& x, std::mt19937& rng) {
  const SpaceTimeJacobian J = sys.jacobian(x);
  const double eps = 1e-6;
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    BlockVector v(x.sizes(), x.num_steps());
    v.data() = random_vector(x.size(), rng);
    BlockVector xp = x, xm = x;
    xp.data() += eps * v.data();
    xm.data() -= eps * v.data();
    const Vector fd = (sys.residual(xp).data() - sys.residual(xm).data()) / (2.0 * eps);
    const Vector jv = J.apply(v.data());
    worst = std::max(worst, (fd - jv).norm() / jv.norm());
  }
  return worst;
}

}  // namespace

int run_verification(const std::function<void(const std::string&)>& report) {
  int failures = 0;
  auto check = [&](const std::string& name, auto&& body) {
    try {
      std::string detail;
      const bool ok = body(detail);
      if (!ok) ++failures;
      report((ok ? "PASS " : "FAIL ") + name + ": " + detail);
    } catch (const std::exception& e) {
      ++failures;
      report("FAIL " + name + ": exception: " + e.what());
    }
  };
  std::mt19937 rng(12345);

  check("mesh area tiling", [&](std::string& d) {
    const Mesh m = build_rect_mesh(0.0, 3.0, 0.0, 0.5, 0.125);
    double area = 0.0;
    bool positive = true;
    for (int t = 0; t < m.num_triangles(); ++t) {
      area += m.signed_area(t);
      positive = positive && m.signed_area(t) > 0.0;
    }
    d = "area error " + sci(std::abs(area - 1.5));
    return positive && std::abs(area - 1.5) <= 1e-12;
  });

  check("mass matrix partition of unity", [&](std::string& d) {
    auto mesh = std::make_shared<const Mesh>(0.0, 1.0, 0.0, 1.0, 2, 2);
    double worst = 0.0;
    for (int degree = 1; degree <= 3; ++degree) {
      const FESpace V(mesh, degree, 1);
      worst = std::max(worst, std::abs(assemble_mass(V).sum() - 1.0));
    }
    d = "worst deviation from the area " + sci(worst);
    return worst <= 1e-13;
  });

  for (ProblemKind kind : {ProblemKind::TearingMode, ProblemKind::IslandCoalescence}) {
    check(std::string("Jacobian finite differences, ") + std::string(to_string(kind)), [&](std::string& d) {
      const Discretization disc(make_problem(kind), 0.5, 0.5, 1.0);
      const SpaceTimeSystem sys(disc);
      BlockVector x = disc.initial_state();
      x.data() += 0.1 * random_vector(x.size(), rng);
      const double err = jacobian_fd_error(sys, x, rng);
      d = "relative error " + sci(err);
      return err <= 1e-6;
    });
  }

  check("preconditioner round trips", [&](std::string& d) {
    const Discretization disc(island_coalescence(), 0.5, 0.25, 0.75);
    const SpaceTimeSystem sys(disc);
    BlockVector x = disc.initial_state();
    x.data() += 0.05 * random_vector(x.size(), rng);
    const SpaceTimeJacobian J = sys.jacobian(x);
    double worst = 0.0;
    for (PrecondVariant v : {PrecondVariant::UpperTriangularPT, PrecondVariant::FullP, PrecondVariant::SimplifiedPtilde}) {
      const SpaceTimePreconditioner P(J, v);
      const Vector y = random_vector(x.size(), rng);
      worst = std::max(worst, (P.apply_inverse(P.apply(y)) - y).norm() / y.norm());
    }
    d = "worst relative error " + sci(worst);
    return worst <= 1e-9;
  });

  check("Alfven scaling of the tearing-mode equilibrium", [&](std::string& d) {
    const Discretization disc(tearing_mode(), 0.25, 1.0, 1.0);
    const auto b = mean_magnetic_field(disc.VA, disc.A_eq);
    const double norm = std::hypot(b[0], b[1]);
    const double expected = 0.4 * std::log(std::cosh(2.5));
    d = "|B| = " + sci(norm) + ", error " + sci(std::abs(norm - expected));
    return std::abs(norm - expected) <= 1e-8;
  });

  check("GMRES with exact preconditioner", [&](std::string& d) {
    DenseMatrix A = DenseMatrix::Random(20, 20) + 5.0 * DenseMatrix::Identity(20, 20);
    const Eigen::PartialPivLU<DenseMatrix> lu(A);
    const Vector b = random_vector(20, rng);
    GmresConfig cfg;
    cfg.rel_tol = 1e-12;
    const GmresResult r = gmres([&](const Vector& v) { return Vector(A * v); },
                                [&](const Vector& v) { return Vector(lu.solve(v)); }, b, Vector::Zero(20), cfg);
    d = std::to_string(r.iterations) + " iteration(s)";
    return r.converged && r.iterations == 1;
  });

  check("discrete equilibrium is stationary", [&](std::string& d) {
    const Discretization disc(island_coalescence(0.0), 0.25, 0.25, 0.5);
    const SpaceTimeSystem sys(disc);
    const double r = sys.residual(disc.initial_state()).norm();
    d = "initial residual " + sci(r);
    return r <= 1e-10;
  });

  return failures;
}

}  // namespace stmhd
