#include "stmhd/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace stmhd {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussRule1D gauss_legendre(int n) {
  GaussRule1D rule;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    rule.points[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    rule.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

TriangleQuadrature triangle_quadrature(int degree) {
  // The Duffy map adds one power of (1 - s); n points integrate 2n - 1 exactly.
  const int n = (degree + 3) / 2;
  const GaussRule1D g = gauss_legendre(n);
  TriangleQuadrature q;
  q.exact_degree = 2 * n - 2;
  for (std::size_t a = 0; a < g.points.size(); ++a)
    for (std::size_t b = 0; b < g.points.size(); ++b) {
      const double s = g.points[a];
      const double t = g.points[b];
      q.points.push_back({s, t * (1.0 - s)});
      q.weights.push_back(g.weights[a] * g.weights[b] * (1.0 - s));
    }
  return q;
}

}  // namespace stmhd
