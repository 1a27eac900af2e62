#include "bridge/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bridge/errors.hpp"
#include "bridge/parallel.hpp"

namespace bridge {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

OdeOptions ode_options(const SolverConfig& cfg) {
  OdeOptions o;
  o.atol = cfg.ode_tol;
  o.rtol = cfg.ode_tol;
  return o;
}

std::string describe_failure(const BvpProblem& p, const NewtonReport& r) {
  std::ostringstream os;
  os << "no converged solution for sigma=" << p.sigma << " b=" << p.b << " (iterations=" << r.iterations
     << ", last update=" << r.final_residual << ", n=" << r.n_final;
  if (!r.message.empty()) os << ", " << r.message;
  os << ")";
  return os.str();
}

std::pair<BvpState, NewtonReport> solve_at(const BvpState& guess, const BvpProblem& problem,
                                           const SolverConfig& cfg) {
  auto result = adapt_grid(guess, problem, cfg);
  if (!result.second.converged) throw ConvergenceError(describe_failure(problem, result.second));
  return result;
}

}  // namespace

BvpState initial_guess(double sigma, double b, const ChebGrid& grid) {
  if (!(sigma > 0.0 && sigma < b)) throw InvalidArgument("initial_guess requires 0 < sigma < b");
  const auto n = static_cast<Eigen::Index>(grid.size());
  BvpState s{grid, Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n), b - sigma};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double tau = grid[static_cast<std::size_t>(i)];
    const double r = (1.0 + tau) * b / 2.0 + (1.0 - tau) * sigma / 2.0;
    const double decay = std::exp(-r + sigma);
    s.R(i) = r;
    s.U(i) = decay;
    s.Psi(i) = std::atan(-decay);
  }
  return s;
}

BvpState rescale_for_outer_radius(const BvpState& state, double sigma, double b_old, double b_new) {
  if (!(b_old > 1.0 && b_new > 1.0)) throw InvalidArgument("outer radii must exceed 1");
  BvpState out = state;
  const double stretch = (b_new - 1.0) / (b_old - 1.0);
  for (Eigen::Index i = 0; i < out.R.size(); ++i) {
    if (out.R(i) > 1.0) out.R(i) = 1.0 + (out.R(i) - 1.0) * stretch;
  }
  out.ell = state.ell * (b_new - sigma) / (b_old - sigma);
  return out;
}

ProfileSolution solve_profile(const BvpProblem& problem, const SolverConfig& cfg) {
  cfg.validate();
  problem.validate();
  const ChebGrid grid(cfg.n_init, Interval{-1.0, 1.0});
  auto [state, report] = solve_at(initial_guess(problem.sigma, problem.b, grid), problem, cfg);
  ProfileSolution sol;
  sol.sigma = problem.sigma;
  sol.T = state.height_at_vertical();
  sol.b_final = problem.b;
  sol.history.push_back({problem.b, sol.T, report.n_final});
  sol.state = std::move(state);
  sol.report = std::move(report);
  return sol;
}

ProfileSolution solve_T(double sigma, const SolverConfig& cfg) {
  cfg.validate();
  if (!(sigma > 0.0)) throw InvalidArgument("solve_T requires sigma > 0");

  double b = std::max(cfg.b_init_floor, sigma + 4.0);
  BvpProblem problem{sigma, b, 0.0, cfg.kappa};
  const ChebGrid grid(cfg.n_init, Interval{-1.0, 1.0});
  auto [state, report] = solve_at(initial_guess(sigma, b, grid), problem, cfg);

  ProfileSolution sol;
  sol.sigma = sigma;
  double t_prev = state.height_at_vertical();
  sol.history.push_back({b, t_prev, report.n_final});

  while (true) {
    const double b_new = b + cfg.b_step;
    if (b_new > cfg.b_cap) {
      throw TruncationFailure("outer radius exceeded cap " + std::to_string(cfg.b_cap) + " for sigma=" +
                              std::to_string(sigma));
    }
    problem.b = b_new;
    std::pair<BvpState, NewtonReport> next;
    try {
      next = solve_at(rescale_for_outer_radius(state, sigma, b, b_new), problem, cfg);
    } catch (const std::runtime_error&) {
      // Warm start failed; fall back to a cold start at the new radius.
      next = solve_at(initial_guess(sigma, b_new, grid), problem, cfg);
    }
    state = std::move(next.first);
    report = std::move(next.second);
    const double t_new = state.height_at_vertical();
    sol.history.push_back({b_new, t_new, report.n_final});
    b = b_new;
    if (std::abs(t_new - t_prev) < cfg.tol_abs) break;
    t_prev = t_new;
  }

  sol.T = state.height_at_vertical();
  sol.b_final = b;
  sol.state = std::move(state);
  sol.report = std::move(report);
  return sol;
}

TTable sweep_T(std::span<const double> sigmas, const SolverConfig& cfg, unsigned threads) {
  cfg.validate();
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 0.0)) throw InvalidArgument("sweep_T: sigma values must be positive");
    if (i > 0 && !(sigmas[i] > sigmas[i - 1])) throw InvalidArgument("sweep_T: sigma values must be ascending");
  }
  TTable table;
  table.samples.resize(sigmas.size());
  parallel_for(sigmas.size(), threads, [&](std::size_t i) {
    TSample& row = table.samples[i];
    row.sigma = sigmas[i];
    row.provenance = Provenance::computed;
    try {
      const ProfileSolution sol = solve_T(sigmas[i], cfg);
      row.T = sol.T;
      row.b_final = sol.b_final;
      row.n_final = sol.report.n_final;
      row.newton_residual = sol.report.final_residual;
      row.converged = true;
    } catch (const std::exception& e) {
      row.converged = false;
      row.error = e.what();
    }
  });
  if (!sigmas.empty()) table.grid_meta = {sigmas.front(), sigmas.back(), sigmas.size()};
  return table;
}

OdeState<2> profile_rhs(double phi, const OdeState<2>& y, double kappa) {
  const double r = y[0];
  const double u = y[1];
  const double denom = kappa * r * u + std::sin(phi);
  if (!(denom > 0.0)) {
    throw SingularityError("r u + sin(phi) <= 0 at phi = " + std::to_string(phi));
  }
  return {-r * std::cos(phi) / denom, -r * std::sin(phi) / denom};
}

PhiTrajectory top_portion(double sigma, double T, const SolverConfig& cfg) {
  if (!(sigma > 0.0)) throw InvalidArgument("top_portion requires sigma > 0");
  const double kappa = cfg.kappa;
  auto rhs = [kappa](double phi, const OdeState<2>& y) { return profile_rhs(phi, y, kappa); };
  return integrate_dopri5<2>(rhs, kHalfPi, OdeState<2>{sigma, T}, 0.0, ode_options(cfg));
}

PhiProfile::PhiProfile(PhiTrajectory top, PhiTrajectory lower, double kappa)
    : top_(std::move(top)), lower_(std::move(lower)), kappa_(kappa) {}

OdeState<2> PhiProfile::operator()(double phi) const {
  if (phi <= kHalfPi) return top_(phi);
  return lower_(phi);
}

double PhiProfile::lower_angle_at_radius(double rho) const {
  const auto& ts = lower_.step_times();
  const auto& ys = lower_.step_states();
  if (!(rho >= ys.front()[0])) throw OutOfDomain("radius below the vertical point");
  std::size_t k = 1;
  while (k < ts.size() && ys[k][0] < rho) ++k;
  if (k == ts.size()) throw OutOfDomain("lower portion does not reach radius " + std::to_string(rho));
  double a = ts[k - 1];
  double b = ts[k];
  for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
    const double m = 0.5 * (a + b);
    if (lower_(m)[0] < rho) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

PhiProfile phi_profile(double sigma, double T, double r_stop, const SolverConfig& cfg) {
  if (!(r_stop > sigma)) throw InvalidArgument("phi_profile: r_stop must exceed sigma");
  PhiTrajectory top = top_portion(sigma, T, cfg);
  const double kappa = cfg.kappa;
  auto rhs = [kappa](double phi, const OdeState<2>& y) { return profile_rhs(phi, y, kappa); };
  auto stop = [r_stop](double, const OdeState<2>& y) { return y[0] >= r_stop; };
  PhiTrajectory lower = integrate_dopri5<2>(rhs, kHalfPi, OdeState<2>{sigma, T}, std::numbers::pi - 1e-9,
                                            ode_options(cfg), stop);
  return PhiProfile(std::move(top), std::move(lower), kappa);
}

}  // namespace bridge
