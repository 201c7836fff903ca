#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>

#include "stmhd/boundary.hpp"

namespace stmhd {

enum class ProblemKind { TearingMode, IslandCoalescence };

std::string_view to_string(ProblemKind kind);
/// Accepts "TearingMode"/"tearing"/"tm"/"1" and "IslandCoalescence"/"island"/"ic"/"2",
/// case-insensitive. Throws ConfigError otherwise.
ProblemKind parse_problem_kind(std::string_view name);

using Field2D = std::function<double(double, double)>;
using Grad2D = std::function<std::array<double, 2>(double, double)>;

struct ProblemSpec {
  ProblemKind kind = ProblemKind::TearingMode;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  double mu = 1.0, eta = 1.0, mu0 = 1.0;
  double epsilon = 1e-3;
  double lambda = 5.0, length = 3.0;  // tearing mode
  double beta = 0.2;                  // island coalescence

  Field2D A_eq;         // equilibrium vector potential
  Grad2D grad_A_eq;
  Field2D lap_A_eq;
  Field2D A_perturbation;  // shape of the initial perturbation, scaled by epsilon already
  Field2D E_eq;         // equilibrium source of the induction equation
  Field2D p_raw;        // equilibrium pressure before mean removal
  Grad2D grad_p_raw;

  BCSpec bcs;

  double area() const { return (x1 - x0) * (y1 - y0); }
  /// Equilibrium current (1/mu0) lap A_eq.
  double j_eq(double x, double y) const { return lap_A_eq(x, y) / mu0; }
};

/// Problem 1: Harris-sheet tearing mode on [0, L] x [0, 1/2].
ProblemSpec tearing_mode(double epsilon = 1e-3);
/// Problem 2: Fadeev-equilibrium island coalescence on [0, 1]^2.
ProblemSpec island_coalescence(double epsilon = 1e-3);
ProblemSpec make_problem(ProblemKind kind, double epsilon = 1e-3);

}  // namespace stmhd
