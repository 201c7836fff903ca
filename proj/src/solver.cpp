#include "stmhd/solver.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "stmhd/errors.hpp"

namespace stmhd {

int SolveStats::total_gmres() const { return std::accumulate(gmres_per_newton.begin(), gmres_per_newton.end(), 0); }

double SolveStats::avg_gmres() const {
  if (gmres_per_newton.empty()) return 0.0;
  return static_cast<double>(total_gmres()) / static_cast<double>(gmres_per_newton.size());
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Newton loop shared by both drivers. Appends to `stats`.
bool newton(const SpaceTimeSystem& system, BlockVector& x, double tol, const NewtonConfig& cfg, SolveStats& stats,
            int& iters, int& gmres_total, bool& frozen) {
  iters = 0;
  gmres_total = 0;
  frozen = false;
  double rnorm = 0.0;
  for (;;) {
    BlockVector r = system.residual(x);
    const double prev = rnorm;
    rnorm = r.norm();
    if (!std::isfinite(rnorm)) {
      stats.message = "residual is not finite";
      return false;
    }
    if (!stats.residual_history.empty() && iters > 0 && rnorm > prev) stats.monotone = false;
    stats.residual_history.push_back(rnorm);
    if (rnorm <= tol) {
      frozen = iters == 0;
      return true;
    }
    if (iters >= cfg.max_iters) {
      stats.message = "Newton did not reach tolerance in " + std::to_string(cfg.max_iters) + " iterations";
      return false;
    }
    const SpaceTimeJacobian J = system.jacobian(x);
    const SpaceTimePreconditioner P(J, cfg.variant);
    const Vector b = -r.data();
    const GmresResult g = gmres([&](const Vector& v) { return J.apply(v); },
                                [&](const Vector& v) { return P.apply_inverse(v); }, b, Vector::Zero(b.size()), cfg.gmres);
    x.data() += g.x;
    ++iters;
    gmres_total += g.iterations;
    stats.gmres_per_newton.push_back(g.iterations);
    ++stats.newton_iters;
  }
}

}  // namespace

SolveResult solve_all_at_once(const SpaceTimeSystem& system, BlockVector guess, const NewtonConfig& cfg) {
  const auto t0 = Clock::now();
  SolveResult out{std::move(guess), {}};
  int iters = 0, gm = 0;
  bool frozen = false;
  out.stats.converged = newton(system, out.state, cfg.abs_tol, cfg, out.stats, iters, gm, frozen);
  out.stats.wall_seconds = seconds_since(t0);
  return out;
}

SolveResult solve_all_at_once(const Discretization& disc, const NewtonConfig& cfg) {
  return solve_all_at_once(SpaceTimeSystem(disc), disc.initial_state(), cfg);
}

SolveResult solve_sequential(const Discretization& disc, const NewtonConfig& cfg) {
  const auto t0 = Clock::now();
  const int nt = disc.num_steps;
  const double tol = cfg.abs_tol / std::sqrt(static_cast<double>(nt));
  SolveResult out{BlockVector(disc.sizes, nt), {}};
  out.stats.converged = true;

  BlockVector step = disc.initial_state(1);
  Vector u_prev = disc.u_init(), A_prev = disc.A_init;
  SolveStats scratch;
  for (int k = 0; k < nt; ++k) {
    const SpaceTimeSystem system(disc, 1, u_prev, A_prev);
    StepStats s;
    const std::size_t before = scratch.gmres_per_newton.size();
    s.converged = newton(system, step, tol, cfg, scratch, s.newton_iters, s.total_gmres, s.frozen);
    if (!s.frozen) {
      ++out.stats.effective_steps;
      out.stats.newton_iters += s.newton_iters;
      out.stats.gmres_per_newton.insert(out.stats.gmres_per_newton.end(),
                                        scratch.gmres_per_newton.begin() + static_cast<std::ptrdiff_t>(before),
                                        scratch.gmres_per_newton.end());
    }
    out.stats.steps.push_back(s);
    out.state.slab(k) = step.slab(0);
    if (!s.converged) {
      out.stats.converged = false;
      out.stats.message = "step " + std::to_string(k + 1) + ": " + scratch.message;
      break;
    }
    u_prev = step.field(0, Field::U);
    A_prev = step.field(0, Field::A);
  }
  out.stats.residual_history = std::move(scratch.residual_history);
  out.stats.monotone = scratch.monotone;
  out.stats.wall_seconds = seconds_since(t0);
  return out;
}

OverheadRatios compute_overhead_ratios(const SolveStats& st, const SolveStats& seq) {
  if (seq.effective_steps <= 0) throw ConfigError("sequential run has no effective time step to compare against");
  const double eff = static_cast<double>(seq.effective_steps);
  const double seq_newton = static_cast<double>(seq.newton_iters) / eff;
  const double seq_gmres = static_cast<double>(seq.total_gmres()) / eff;
  if (seq_newton <= 0.0 || seq_gmres <= 0.0) throw ConfigError("sequential run performed no iterations");
  return {static_cast<double>(st.newton_iters) / seq_newton, static_cast<double>(st.total_gmres()) / seq_gmres};
}

}  // namespace stmhd
