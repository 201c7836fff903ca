#include <gtest/gtest.h>

#include <cmath>

#include "stmhd/quadrature.hpp"

using namespace stmhd;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// ∫ over the reference triangle of x^a y^b = a! b! / (a + b + 2)!.
double monomial_integral(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

}  // namespace

TEST(Quadrature, GaussLegendreExactness) {
  for (int n = 1; n <= 6; ++n) {
    const GaussRule1D g = gauss_legendre(n);
    ASSERT_EQ(static_cast<int>(g.points.size()), n);
    for (double p : g.points) {
      EXPECT_GT(p, 0.0);
      EXPECT_LT(p, 1.0);
    }
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.points[i], d);
      EXPECT_NEAR(s, 1.0 / (d + 1), 1e-14) << "n=" << n << " degree=" << d;
    }
  }
}

class TriangleRule : public ::testing::TestWithParam<int> {};

TEST_P(TriangleRule, ExactForAllMonomialsUpToDegree) {
  const int degree = GetParam();
  const TriangleQuadrature q = triangle_quadrature(degree);
  EXPECT_GE(q.exact_degree, degree);
  double wsum = 0.0;
  for (std::size_t i = 0; i < q.points.size(); ++i) {
    wsum += q.weights[i];
    EXPECT_GE(q.points[i][0], 0.0);
    EXPECT_GE(q.points[i][1], 0.0);
    EXPECT_LE(q.points[i][0] + q.points[i][1], 1.0 + 1e-15);
  }
  EXPECT_NEAR(wsum, 0.5, 1e-15);
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.points.size(); ++i)
        s += q.weights[i] * std::pow(q.points[i][0], a) * std::pow(q.points[i][1], b);
      EXPECT_NEAR(s, monomial_integral(a, b), 1e-15) << "x^" << a << " y^" << b;
    }
}

INSTANTIATE_TEST_SUITE_P(Degrees, TriangleRule, ::testing::Values(1, 2, 4, 7, 8));

TEST(Quadrature, DegreeSevenRuleIsNotExactForDegreeTwelve) {
  const TriangleQuadrature q = triangle_quadrature(7);
  double s = 0.0;
  for (std::size_t i = 0; i < q.points.size(); ++i) s += q.weights[i] * std::pow(q.points[i][0], 12);
  EXPECT_GT(std::abs(s - monomial_integral(12, 0)), 1e-12);
}
