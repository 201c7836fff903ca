#include "stmhd/gmres.hpp"

#include <cmath>

#include "stmhd/errors.hpp"

namespace stmhd {

GmresResult gmres(const LinearOperator& apply_A, const LinearOperator& apply_Pinv, const Vector& b, const Vector& x0,
                  const GmresConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_iters < 1)
    throw ConfigError("GMRES needs positive tolerances and max_iters >= 1");
  if (!b.allFinite()) throw BreakdownError("GMRES right-hand side is not finite");

  GmresResult res;
  res.x = x0;
  Vector r = b - apply_A(res.x);
  const double r0 = r.norm();
  const double target = std::max(cfg.rel_tol * r0, cfg.abs_tol);
  res.residual_history.push_back(r0);
  res.true_residual = r0;
  if (r0 <= target) {
    res.converged = true;
    return res;
  }

  const int m_max = cfg.restart > 0 ? cfg.restart : cfg.max_iters;
  double beta = r0;
  while (true) {
    const int m = std::min(m_max, cfg.max_iters - res.iterations);
    std::vector<Vector> V, Z;
    V.reserve(static_cast<std::size_t>(m + 1));
    Z.reserve(static_cast<std::size_t>(m));
    V.push_back(r / beta);
    DenseMatrix H = DenseMatrix::Zero(m + 1, m);
    Vector cs = Vector::Zero(m), sn = Vector::Zero(m), g = Vector::Zero(m + 1);
    g[0] = beta;
    int j = 0;
    bool done = false;
    for (; j < m && !done; ++j) {
      Z.push_back(apply_Pinv(V[static_cast<std::size_t>(j)]));
      Vector w = apply_A(Z.back());
      if (!w.allFinite()) throw BreakdownError("non-finite vector in GMRES Arnoldi step");
      for (int i = 0; i <= j; ++i) {
        H(i, j) = V[static_cast<std::size_t>(i)].dot(w);
        w -= H(i, j) * V[static_cast<std::size_t>(i)];
      }
      H(j + 1, j) = w.norm();
      if (!std::isfinite(H(j + 1, j))) throw BreakdownError("non-finite Hessenberg entry in GMRES");
      const bool lucky = H(j + 1, j) <= 1e-14 * std::abs(H(j, j)) || H(j + 1, j) == 0.0;
      if (!lucky) V.push_back(w / H(j + 1, j));
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      const double den = std::hypot(H(j, j), H(j + 1, j));
      if (den == 0.0) throw BreakdownError("singular Hessenberg matrix in GMRES");
      cs[j] = H(j, j) / den;
      sn[j] = H(j + 1, j) / den;
      H(j, j) = den;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      ++res.iterations;
      res.residual_history.push_back(std::abs(g[j + 1]));
      done = lucky || std::abs(g[j + 1]) <= target;
    }
    // Back substitution on the j x j triangle.
    Vector y = H.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    if (!y.allFinite()) throw BreakdownError("non-finite GMRES update");
    for (int i = 0; i < j; ++i) res.x += y[i] * Z[static_cast<std::size_t>(i)];

    r = b - apply_A(res.x);
    beta = r.norm();
    res.true_residual = beta;
    if (beta <= target) {
      res.converged = true;
      return res;
    }
    if (res.iterations >= cfg.max_iters) return res;
  }
}

}  // namespace stmhd
