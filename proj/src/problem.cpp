#include "stmhd/problem.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "stmhd/errors.hpp"

namespace stmhd {

namespace {

constexpr double kPi = std::numbers::pi;

// Symmetric conditions on the left, right and bottom sides; the top side
// keeps slip for u and fixes A to its equilibrium value.
BCSpec standard_bcs(const Field2D& A_eq) {
  BCSpec bcs;
  for (BoundaryTag t : kAllBoundaryTags) {
    bcs.u[t] = {BCKind::Slip, {}};
    bcs.p[t] = {BCKind::None, {}};
    bcs.j[t] = {BCKind::None, {}};
    bcs.A[t] = {BCKind::None, {}};
  }
  bcs.A[BoundaryTag::Top] = {BCKind::Dirichlet, A_eq};
  return bcs;
}

double sech2(double z) {
  const double c = std::cosh(z);
  return 1.0 / (c * c);
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  return kind == ProblemKind::TearingMode ? "TearingMode" : "IslandCoalescence";
}

ProblemKind parse_problem_kind(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "tearingmode" || s == "tearing" || s == "tearing_mode" || s == "tm" || s == "1") return ProblemKind::TearingMode;
  if (s == "islandcoalescence" || s == "island" || s == "island_coalescence" || s == "ic" || s == "2")
    return ProblemKind::IslandCoalescence;
  throw ConfigError("unknown problem '" + std::string(name) + "'");
}

ProblemSpec tearing_mode(double epsilon) {
  ProblemSpec p;
  p.kind = ProblemKind::TearingMode;
  p.epsilon = epsilon;
  p.x0 = 0.0;
  p.x1 = p.length;
  p.y0 = 0.0;
  p.y1 = 0.5;
  const double lam = p.lambda, L = p.length, eta = p.eta, mu0 = p.mu0;
  p.A_eq = [lam](double, double y) { return std::log(std::cosh(lam * y)) / lam; };
  p.grad_A_eq = [lam](double, double y) { return std::array<double, 2>{0.0, std::tanh(lam * y)}; };
  p.lap_A_eq = [lam](double, double y) { return lam * sech2(lam * y); };
  p.A_perturbation = [epsilon, L](double x, double y) { return -epsilon * std::cos(kPi * y) * std::cos(2.0 * kPi * x / L); };
  p.E_eq = [lam, eta, mu0](double, double y) { return lam * eta / mu0 * sech2(lam * y); };
  p.p_raw = [lam, mu0](double, double y) { return sech2(lam * y) / (2.0 * mu0); };
  p.grad_p_raw = [lam, mu0](double, double y) {
    return std::array<double, 2>{0.0, -lam * sech2(lam * y) * std::tanh(lam * y) / mu0};
  };
  p.bcs = standard_bcs(p.A_eq);
  return p;
}

ProblemSpec island_coalescence(double epsilon) {
  ProblemSpec p;
  p.kind = ProblemKind::IslandCoalescence;
  p.epsilon = epsilon;
  const double beta = p.beta, eta = p.eta, mu0 = p.mu0;
  const double k = 2.0 * kPi;
  auto D = [beta, k](double x, double y) { return std::cosh(k * y) + beta * std::cos(k * x); };
  p.A_eq = [D, k](double x, double y) { return std::log(D(x, y)) / k; };
  p.grad_A_eq = [D, beta, k](double x, double y) {
    const double d = D(x, y);
    return std::array<double, 2>{-beta * std::sin(k * x) / d, std::sinh(k * y) / d};
  };
  p.lap_A_eq = [D, beta, k](double x, double y) {
    const double d = D(x, y);
    return k * (1.0 - beta * beta) / (d * d);
  };
  p.A_perturbation = [epsilon](double x, double y) { return epsilon * std::cos(0.5 * kPi * y) * std::cos(kPi * x); };
  p.E_eq = [D, beta, k, eta, mu0](double x, double y) {
    const double d = D(x, y);
    return eta / mu0 * k * (1.0 - beta * beta) / (d * d);
  };
  p.p_raw = [D, beta, mu0](double x, double y) {
    const double d = D(x, y);
    return (1.0 - beta * beta) / (2.0 * mu0 * d * d);
  };
  p.grad_p_raw = [D, beta, k, mu0](double x, double y) {
    const double d = D(x, y);
    const double c = -(1.0 - beta * beta) / (mu0 * d * d * d);
    return std::array<double, 2>{c * (-beta * k * std::sin(k * x)), c * k * std::sinh(k * y)};
  };
  p.bcs = standard_bcs(p.A_eq);
  return p;
}

ProblemSpec make_problem(ProblemKind kind, double epsilon) {
  return kind == ProblemKind::TearingMode ? tearing_mode(epsilon) : island_coalescence(epsilon);
}

}  // namespace stmhd
