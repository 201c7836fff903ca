#pragma once

#include <array>
#include <vector>

namespace stmhd {

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule1D {
  std::vector<double> points;
  std::vector<double> weights;
};

GaussRule1D gauss_legendre(int n);

struct TriangleQuadrature {
  std::vector<std::array<double, 2>> points;  // reference coordinates (xi, eta)
  std::vector<double> weights;                // sum to 1/2, the reference area
  int exact_degree = 0;
};

/// Collapsed (Duffy) tensor Gauss rule on the reference triangle
/// {xi, eta >= 0, xi + eta <= 1}, exact for polynomials of total degree
/// `degree`.
TriangleQuadrature triangle_quadrature(int degree);

}  // namespace stmhd
