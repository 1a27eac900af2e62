#include "bridge/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

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

}  // namespace

VariationState variation_rhs(double phi, const VariationState& y) {
  const double r = y[0];
  const double u = y[1];
  const double rdot = y[2];
  const double udot = y[3];
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double denom = r * u + s;
  if (!(denom > 0.0)) throw SingularityError("r u + sin(phi) <= 0 at phi = " + std::to_string(phi));
  const double coupling = (udot * r * r - rdot * s) / (denom * denom);
  return {-r * c / denom, -r * s / denom, c * coupling, s * coupling};
}

VariationTrajectory integrate_variation(double sigma, double T, double Tprime, const SolverConfig& cfg) {
  if (!(sigma > 0.0)) throw InvalidArgument("integrate_variation requires sigma > 0");
  VariationTrajectory traj;
  traj.sigma = sigma;
  traj.T = T;
  traj.Tprime = Tprime;
  traj.dense = integrate_dopri5<4>(variation_rhs, kHalfPi, VariationState{sigma, T, 1.0, Tprime}, 0.0,
                                   ode_options(cfg));

  // Merge integrator steps with evenly spaced angles, descending.
  std::vector<double> phis = traj.dense.step_times();
  const std::size_t m = cfg.dense_samples;
  for (std::size_t k = 0; k < m; ++k) {
    phis.push_back(kHalfPi * static_cast<double>(m - 1 - k) / static_cast<double>(m - 1));
  }
  std::sort(phis.begin(), phis.end(), std::greater<>());
  phis.erase(std::unique(phis.begin(), phis.end()), phis.end());
  phis.front() = kHalfPi;

  traj.min_rdot = std::numeric_limits<double>::infinity();
  for (double phi : phis) {
    const VariationState y = traj.dense(phi);
    // Evaluating the RHS checks D > 0 at every stored point.
    (void)variation_rhs(phi, y);
    traj.phis.push_back(phi);
    traj.r.push_back(y[0]);
    traj.u.push_back(y[1]);
    traj.rdot.push_back(y[2]);
    traj.udot.push_back(y[3]);
    if (y[2] < traj.min_rdot) {
      traj.min_rdot = y[2];
      traj.argmin_phi = phi;
    }
  }
  traj.rdot_at_0 = traj.rdot.back();
  return traj;
}

std::size_t SweepReport::failed_rows() const {
  return static_cast<std::size_t>(
      std::count_if(row_errors.begin(), row_errors.end(), [](const std::string& e) { return !e.empty(); }));
}

SweepReport sweep_variation(const TTable& table, const SolverConfig& cfg, unsigned threads) {
  SweepReport report;
  const std::size_t n = table.samples.size();
  report.trajectories.resize(n);
  report.row_errors.resize(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const TSample& row = table.samples[i];
    report.trajectories[i].sigma = row.sigma;
    try {
      if (!row.converged) throw InvalidArgument("row has no converged T");
      if (!row.Tprime) throw InvalidArgument("row has no Tprime");
      report.trajectories[i] = integrate_variation(row.sigma, row.T, *row.Tprime, cfg);
    } catch (const std::exception& e) {
      report.row_errors[i] = e.what();
      report.trajectories[i].min_rdot = std::numeric_limits<double>::quiet_NaN();
    }
  });

  report.global_min_rdot = std::numeric_limits<double>::infinity();
  bool positive = n > 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!report.row_errors[i].empty()) {
      positive = false;
      continue;
    }
    report.global_min_rdot = std::min(report.global_min_rdot, report.trajectories[i].min_rdot);
    if (!(report.trajectories[i].min_rdot > 0.0)) positive = false;
  }
  report.all_positive = positive;
  return report;
}

bool rdot_positivity_persists(const VariationTrajectory& traj) {
  // Walk in increasing phi (reverse storage order).
  bool seen_positive = false;
  for (std::size_t k = traj.rdot.size(); k-- > 0;) {
    if (traj.rdot[k] > 0.0) {
      seen_positive = true;
    } else if (seen_positive) {
      return false;
    }
  }
  return true;
}

DenseSolution<4> integrate_variation_lower(double sigma, double T, double Tprime, double r_stop,
                                           const SolverConfig& cfg) {
  if (!(r_stop > sigma)) throw InvalidArgument("integrate_variation_lower: r_stop must exceed sigma");
  auto stop = [r_stop](double, const VariationState& y) { return y[0] >= r_stop; };
  return integrate_dopri5<4>(variation_rhs, kHalfPi, VariationState{sigma, T, 1.0, Tprime},
                             std::numbers::pi - 1e-9, ode_options(cfg), stop);
}

DenseSolution<4> integrate_height_variation(double phi_start, double r_start, double u_start, double phi_end,
                                            const SolverConfig& cfg) {
  return integrate_dopri5<4>(variation_rhs, phi_start, VariationState{r_start, u_start, 0.0, 1.0}, phi_end,
                             ode_options(cfg));
}

}  // namespace bridge
