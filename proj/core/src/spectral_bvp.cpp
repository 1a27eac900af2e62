#include "bridge/spectral_bvp.hpp"

#include <cmath>
#include <numbers>

#include "bridge/errors.hpp"

namespace bridge {

namespace {

constexpr Interval kTau{-1.0, 1.0};

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void require_positive_radius(const BvpState& s) {
  for (Index i = 0; i < s.R.size(); ++i) {
    if (!(s.R(i) > 0.0)) {
      throw SingularState("R <= 0 at collocation node " + std::to_string(i) + " (R = " +
                          std::to_string(s.R(i)) + ")");
    }
  }
}

void require_shape(const BvpState& s) {
  const auto n = static_cast<Index>(s.n());
  if (s.R.size() != n || s.U.size() != n || s.Psi.size() != n) {
    throw InvalidArgument("BvpState component lengths do not match grid size");
  }
}

}  // namespace

void BvpProblem::validate() const {
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  if (!(b > sigma)) throw InvalidArgument("outer radius b must exceed sigma");
  if (!(psi_b >= -std::numbers::pi && psi_b <= std::numbers::pi)) {
    throw InvalidArgument("psi_b must lie in [-pi, pi]");
  }
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
}

VectorXd BvpState::stacked() const {
  const auto n = static_cast<Index>(this->n());
  VectorXd v(3 * n + 1);
  v << R, U, Psi, ell;
  return v;
}

BvpState BvpState::from_stacked(const ChebGrid& grid, const VectorXd& v) {
  const auto n = static_cast<Index>(grid.size());
  if (v.size() != 3 * n + 1) throw InvalidArgument("stacked vector has wrong length");
  BvpState s{grid, v.segment(0, n), v.segment(n, n), v.segment(2 * n, n), v(3 * n)};
  return s;
}

BvpState resample(const BvpState& state, std::size_t m) {
  const ChebGrid target(m, kTau);
  const MatrixXd p = interpolation_matrix(state.grid, target.nodes());
  return BvpState{target, p * state.R, p * state.U, p * state.Psi, state.ell};
}

Collocation::Collocation(std::size_t n) : n_(n) {
  down_ = diff_operator(n - 1, n, 0, kTau).entries;
  deriv_ = diff_operator(n - 1, n, 1, kTau).entries;
}

VectorXd residual(const BvpState& state, const BvpProblem& problem) {
  return residual(state, problem, Collocation(state.n()));
}

VectorXd residual(const BvpState& s, const BvpProblem& p, const Collocation& ops) {
  require_shape(s);
  require_positive_radius(s);
  if (ops.n() != s.n()) throw InvalidArgument("collocation operators built for a different grid size");
  const auto n = static_cast<Index>(s.n());
  const Index m = n - 1;
  const double ell = s.ell;

  const VectorXd cos_psi = s.Psi.array().cos();
  const VectorXd sin_psi = s.Psi.array().sin();
  const VectorXd curvature = (ell * sin_psi.array() / s.R.array() - p.kappa * ell * s.U.array()).matrix();

  VectorXd out(3 * m + 4);
  out.segment(0, m) = ops.deriv() * s.R - ell * (ops.down() * cos_psi);
  out.segment(m, m) = ops.deriv() * s.U - ell * (ops.down() * sin_psi);
  out.segment(2 * m, m) = ops.deriv() * s.Psi + ops.down() * curvature;
  out(3 * m + 0) = s.R(0) - p.sigma;
  out(3 * m + 1) = s.R(n - 1) - p.b;
  out(3 * m + 2) = s.Psi(0) + std::numbers::pi / 2.0;
  out(3 * m + 3) = s.Psi(n - 1) - p.psi_b;
  return out;
}

MatrixXd frechet(const BvpState& state, const BvpProblem& problem) {
  return frechet(state, problem, Collocation(state.n()));
}

MatrixXd frechet(const BvpState& s, const BvpProblem& p, const Collocation& ops) {
  require_shape(s);
  require_positive_radius(s);
  if (ops.n() != s.n()) throw InvalidArgument("collocation operators built for a different grid size");
  const auto n = static_cast<Index>(s.n());
  const Index m = n - 1;
  const double ell = s.ell;
  const double kappa = p.kappa;

  const auto cos_psi = s.Psi.array().cos();
  const auto sin_psi = s.Psi.array().sin();
  const auto inv_r = s.R.array().inverse();

  // Right-multiplying the down-sampler by a diagonal scales its columns.
  auto down_diag = [&](const Eigen::ArrayXd& d) -> MatrixXd { return ops.down() * d.matrix().asDiagonal(); };

  MatrixXd L = MatrixXd::Zero(3 * m + 4, 3 * n + 1);
  const Index cR = 0, cU = n, cP = 2 * n, cL = 3 * n;

  // R' - ell cos(Psi)
  L.block(0, cR, m, n) = ops.deriv();
  L.block(0, cP, m, n) = down_diag(ell * sin_psi);
  L.block(0, cL, m, 1) = -(ops.down() * cos_psi.matrix());

  // U' - ell sin(Psi)
  L.block(m, cU, m, n) = ops.deriv();
  L.block(m, cP, m, n) = down_diag(-ell * cos_psi);
  L.block(m, cL, m, 1) = -(ops.down() * sin_psi.matrix());

  // Psi' + ell sin(Psi)/R - kappa ell U
  L.block(2 * m, cR, m, n) = down_diag(-ell * sin_psi * inv_r * inv_r);
  L.block(2 * m, cU, m, n) = -kappa * ell * ops.down();
  L.block(2 * m, cP, m, n) = ops.deriv() + down_diag(ell * cos_psi * inv_r);
  L.block(2 * m, cL, m, 1) = ops.down() * (sin_psi * inv_r - kappa * s.U.array()).matrix();

  // Point evaluations at tau = -1 and tau = 1.
  L(3 * m + 0, cR) = 1.0;
  L(3 * m + 1, cR + n - 1) = 1.0;
  L(3 * m + 2, cP) = 1.0;
  L(3 * m + 3, cP + n - 1) = 1.0;
  return L;
}

std::pair<BvpState, NewtonReport> newton_solve(const BvpState& initial, const BvpProblem& problem,
                                               const SolverConfig& cfg) {
  problem.validate();
  require_shape(initial);
  require_positive_radius(initial);

  const Collocation ops(initial.n());
  NewtonReport report;
  report.n_final = initial.n();
  report.grid_history.push_back(initial.n());

  BvpState state = initial;
  VectorXd v = state.stacked();
  VectorXd res = residual(state, problem, ops);
  double res_norm = res.norm();

  for (int it = 1; it <= cfg.max_newton_iter; ++it) {
    const MatrixXd L = frechet(state, problem, ops);
    const Eigen::PartialPivLU<MatrixXd> lu(L);
    const VectorXd dv = lu.solve(res);
    if (!dv.allFinite()) {
      throw FactorizationError("Newton linear solve produced non-finite update (singular Frechet operator)");
    }

    // Full step unless it blows up the residual or leaves R <= 0.
    double step = 1.0;
    BvpState trial;
    VectorXd trial_res;
    bool accepted = false;
    for (int h = 0; h <= cfg.max_halvings; ++h) {
      const VectorXd candidate = v - step * dv;
      trial = BvpState::from_stacked(state.grid, candidate);
      const bool radius_ok = (trial.R.array() > 0.0).all() && trial.ell > 0.0;
      if (radius_ok) {
        trial_res = residual(trial, problem, ops);
        const double tn = trial_res.norm();
        if (std::isfinite(tn) && tn <= 10.0 * res_norm) {
          accepted = true;
          break;
        }
      }
      step *= 0.5;
      ++report.halvings;
    }
    if (!accepted) {
      throw SingularState("Newton step could not keep R > 0 with a bounded residual after " +
                          std::to_string(cfg.max_halvings) + " halvings");
    }

    const VectorXd applied = step * dv;
    state = std::move(trial);
    v = state.stacked();
    res = std::move(trial_res);
    res_norm = res.norm();

    report.iterations = it;
    report.final_residual = applied.norm() / v.norm();
    if (report.final_residual < cfg.tol_newton) {
      report.converged = true;
      return {state, report};
    }
  }
  report.message = "Newton iteration cap reached";
  return {state, report};
}

std::size_t grown_size(std::size_t n, const SolverConfig& cfg) {
  const auto grown = static_cast<std::size_t>(std::lround(static_cast<double>(n) * cfg.grid_growth));
  return std::max(grown, n + 1);
}

std::pair<BvpState, NewtonReport> adapt_grid(const BvpState& state, const BvpProblem& problem,
                                             const SolverConfig& cfg) {
  std::vector<std::size_t> history;
  int total_iterations = 0;
  BvpState base = state;

  auto finish = [&](NewtonReport r) {
    r.grid_history = history;
    r.iterations = total_iterations;
    return r;
  };

  while (true) {
    const std::size_t n = base.n();
    history.push_back(n);
    auto [coarse, r1] = newton_solve(base, problem, cfg);
    total_iterations += r1.iterations;

    const std::size_t m = grown_size(n, cfg);
    if (m > cfg.n_max) {
      r1.converged = false;
      r1.message = "grid size would exceed n_max = " + std::to_string(cfg.n_max) + " without agreement";
      return {coarse, finish(r1)};
    }
    if (!r1.converged) {
      // Under-resolved: retry from the same guess on a finer grid.
      base = resample(base, m);
      continue;
    }

    history.push_back(m);
    auto [fine, r2] = newton_solve(resample(coarse, m), problem, cfg);
    total_iterations += r2.iterations;
    if (!r2.converged) {
      base = resample(coarse, m);
      continue;
    }
    const double delta = std::abs(fine.height_at_vertical() - coarse.height_at_vertical());
    if (delta < cfg.tol_grid) {
      // Both grids agree on T; the finer one also has the smaller pointwise
      // residual, so it is the one kept.
      r2.n_final = m;
      r2.n_checked = n;
      r2.grid_delta = delta;
      r2.converged = true;
      return {fine, finish(r2)};
    }
    base = std::move(fine);
  }
}

}  // namespace bridge
