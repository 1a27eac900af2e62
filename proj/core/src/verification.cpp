#include "bridge/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "bridge/chebyshev.hpp"
#include "bridge/errors.hpp"
#include "bridge/parallel.hpp"

namespace bridge {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kPi = std::numbers::pi;

void require_angle(const PhiProfile& profile, double phi) {
  if (!(phi >= profile.phi_min() && phi <= profile.phi_max())) {
    throw OutOfDomain("angle " + std::to_string(phi) + " outside profile range [0, " +
                      std::to_string(profile.phi_max()) + "]");
  }
}

void require_anchor(const PhiProfile& profile, double rho0, double phi0) {
  require_angle(profile, phi0);
  const double r0 = profile(phi0)[0];
  if (std::abs(r0 - rho0) > 1e-8 * std::max(1.0, rho0)) {
    throw InvalidArgument("rho0 does not match r(phi0) on the profile");
  }
}

// The closed form loses digits when phi0 nears pi/2 on thin bridges (|A| is
// tiny next to rho0), so volume checks integrate more tightly than the sweep.
constexpr double kVolumeOdeTol = 1e-13;

PhiProfile volume_profile(double sigma, double T, double r_at_0, const SolverConfig& cfg) {
  SolverConfig tight = cfg;
  tight.ode_tol = std::min(cfg.ode_tol, kVolumeOdeTol);
  return phi_profile(sigma, T, 1.05 * r_at_0 + 0.1, tight);
}

// Central difference of T(sigma) with fresh solves.
double finite_difference_tprime(double sigma, const SolverConfig& cfg, double h) {
  return (solve_T(sigma + h, cfg).T - solve_T(sigma - h, cfg).T) / (2.0 * h);
}

}  // namespace

double volume_closed_form(const PhiProfile& profile, double phi, double rho0, double phi0) {
  require_anchor(profile, rho0, phi0);
  require_angle(profile, phi);
  const auto y = profile(phi);
  const double r = y[0];
  const double u = y[1];
  return kPi * (r * r - rho0 * rho0) * u + 2.0 * kPi * (r * std::sin(phi) - rho0 * std::sin(phi0));
}

double volume_quadrature(const PhiProfile& profile, double phi, double rho0, double phi0, std::size_t order) {
  require_anchor(profile, rho0, phi0);
  require_angle(profile, phi);
  const double u0 = profile(phi0)[1];
  const double u_phi = profile(phi)[1];
  double integral = 0.0;
  if (phi != phi0) {
    const double kappa = profile.kappa();
    auto integrand = [&](double t) {
      const auto y = profile(t);
      return y[0] * y[0] * profile_rhs(t, y, kappa)[1];
    };
    const double lo = std::min(phi, phi0);
    const double hi = std::max(phi, phi0);
    const double sign = phi < phi0 ? 1.0 : -1.0;
    integral = sign * clenshaw_curtis(integrand, Interval{lo, hi}, order);
  }
  return kPi * rho0 * rho0 * (u0 - u_phi) - kPi * integral;
}

double VolumeCheck::relative_error() const {
  const double scale = std::max(std::abs(V_closed), std::abs(V_quadrature));
  return scale == 0.0 ? 0.0 : std::abs(V_closed - V_quadrature) / scale;
}

VolumeCheck volume_check(const PhiProfile& profile, double phi0, std::size_t order) {
  if (!(phi0 >= 0.0 && phi0 < kHalfPi)) throw InvalidArgument("volume_check: phi0 must lie in [0, pi/2)");
  VolumeCheck vc;
  vc.phi0 = phi0;
  vc.rho0 = profile(phi0)[0];
  vc.phi_minus = profile.lower_angle_at_radius(vc.rho0);
  vc.V_closed = volume_closed_form(profile, vc.phi_minus, vc.rho0, phi0);
  vc.V_quadrature = volume_quadrature(profile, vc.phi_minus, vc.rho0, phi0, order);
  const auto y = profile(vc.phi_minus);
  vc.Delta_at_phi_minus = profile.kappa() * y[0] * y[1] + std::sin(vc.phi_minus);
  return vc;
}

double vprime_criterion(double phi, double r, double u, double r_variation) {
  const double delta = r * u + std::sin(phi);
  if (!(delta > 0.0)) throw SingularityError("r u + sin(phi) <= 0 in volume derivative");
  return 2.0 * kPi * r_variation * delta;
}

bool vogel_bounds_check(double sigma, double T, double r_at_0) {
  const double lower = std::sqrt(sigma / T + sigma * sigma);
  const double upper = std::sqrt(2.0 * sigma / T + sigma * sigma);
  constexpr double slack = 1e-9;
  return r_at_0 >= lower * (1.0 - slack) && r_at_0 <= upper * (1.0 + slack);
}

double top_height_at_radius(const PhiTrajectory& top, double r) {
  const double r_lo = top(kHalfPi)[0];
  const double r_hi = top(0.0)[0];
  if (!(r >= r_lo && r <= r_hi)) throw OutOfDomain("radius outside the top portion");
  double a = 0.0;  // r(a) >= r
  double b = kHalfPi;
  for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
    const double m = 0.5 * (a + b);
    if (top(m)[0] >= r) {
      a = m;
    } else {
      b = m;
    }
  }
  return top(0.5 * (a + b))[1];
}

void VerificationReport::add(std::string name, bool passed, double measured, double tolerance) {
  checks.push_back({std::move(name), passed, measured, tolerance});
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void VerificationReport::write(std::ostream& os) const {
  for (const auto& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.6e %.6e", c.measured, c.tolerance);
    os << c.name << ' ' << (c.passed ? "PASS" : "FAIL") << buf << '\n';
  }
}

VerificationReport verify_sigma(double sigma, const SolverConfig& cfg) {
  VerificationReport rep;
  const ProfileSolution sol = solve_T(sigma, cfg);
  const double T = sol.T;
  const auto& st = sol.state;
  const auto n = static_cast<Eigen::Index>(st.n());

  rep.add("T_in_(0,sqrt2)", T > 0.0 && T < std::numbers::sqrt2, T, std::numbers::sqrt2);

  const double bc = std::max({std::abs(st.R(0) - sigma), std::abs(st.R(n - 1) - sol.b_final),
                              std::abs(st.Psi(0) + kHalfPi), std::abs(st.Psi(n - 1))});
  rep.add("boundary_conditions", bc < 1e-10, bc, 1e-10);

  bool decreasing = (st.U.array() > 0.0).all();
  for (Eigen::Index i = 1; i < n; ++i) decreasing = decreasing && st.U(i) < st.U(i - 1);
  rep.add("U_positive_decreasing", decreasing, st.U(n - 1), 0.0);

  // Unscaled residual: dr/ds = R'(tau)/ell on the square grid.
  const auto d = diff_operator(st.n(), st.n(), 1, Interval{-1.0, 1.0});
  const Eigen::VectorXd dr = d.entries * st.R / st.ell - st.Psi.array().cos().matrix();
  const Eigen::VectorXd du = d.entries * st.U / st.ell - st.Psi.array().sin().matrix();
  double unscaled = 0.0;
  for (Eigen::Index i = 1; i + 1 < n; ++i) unscaled = std::max({unscaled, std::abs(dr(i)), std::abs(du(i))});
  rep.add("unscaled_residual", unscaled < 1e-9, unscaled, 1e-9);

  const PhiTrajectory top = top_portion(sigma, T, cfg);
  const double r0 = top(0.0)[0];
  rep.add("vogel_sandwich", vogel_bounds_check(sigma, T, r0), r0, 1e-9);

  double max_curv = -std::numeric_limits<double>::infinity();
  const auto& ts = top.step_times();
  const auto& ys = top.step_states();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double phi = ts[k];
    if (!(phi > 0.0 && phi < kHalfPi)) continue;
    const double c = std::cos(phi);
    const double curv = (ys[k][0] * ys[k][1] + std::sin(phi)) / (-ys[k][0] * c * c * c);
    max_curv = std::max(max_curv, curv);
  }
  rep.add("top_concavity", max_curv < 0.0, max_curv, 0.0);

  const PhiProfile profile = volume_profile(sigma, T, r0, cfg);
  for (double phi0 : {0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0}) {
    const VolumeCheck vc = volume_check(profile, phi0);
    char name[64];
    std::snprintf(name, sizeof name, "volume_identity_phi0=%.4f", phi0);
    rep.add(name, vc.relative_error() < 1e-8 && vc.Delta_at_phi_minus > 0.0, vc.relative_error(), 1e-8);
  }

  BvpProblem wider{sigma, sol.b_final + 4.0, 0.0, cfg.kappa};
  auto [wide_state, wide_report] = adapt_grid(rescale_for_outer_radius(st, sigma, sol.b_final, wider.b), wider, cfg);
  const double dT = wide_report.converged ? std::abs(wide_state.height_at_vertical() - T)
                                          : std::numeric_limits<double>::infinity();
  rep.add("truncation_insensitivity", dT < 5.0 * cfg.tol_abs, dT, 5.0 * cfg.tol_abs);

  const double tprime = finite_difference_tprime(sigma, cfg, 1e-4);
  rep.add("Tprime_nonnegative", tprime >= 0.0, tprime, 0.0);
  const VariationTrajectory traj = integrate_variation(sigma, T, tprime, cfg);
  rep.add("rdot_positive_top", traj.min_rdot > 0.0, traj.min_rdot, 0.0);
  double min_udot = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < traj.phis.size(); ++k) {
    if (traj.phis[k] > 0.0) min_udot = std::min(min_udot, traj.udot[k]);
  }
  rep.add("udot_positive_top", min_udot > 0.0, min_udot, 0.0);
  rep.add("rdot_positivity_persists", rdot_positivity_persists(traj), traj.rdot_at_0, 0.0);
  return rep;
}

VerificationReport verify_table(const TTable& table, const SolverConfig& cfg, unsigned threads) {
  VerificationReport rep;
  const auto& rows = table.samples;
  rep.add("table_converged", table.all_converged() && !rows.empty(), static_cast<double>(rows.size()), 0.0);
  if (rows.empty() || !table.all_converged()) return rep;

  bool increasing = true;
  double max_t = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    max_t = std::max(max_t, rows[i].T);
    if (i > 0 && !(rows[i].T > rows[i - 1].T)) increasing = false;
  }
  rep.add("T_strictly_increasing", increasing, static_cast<double>(rows.size()), 0.0);
  rep.add("T_below_sqrt2", max_t < std::numbers::sqrt2, max_t, std::numbers::sqrt2);

  std::vector<PhiTrajectory> tops(rows.size());
  std::vector<double> vogel_margin(rows.size());
  std::vector<double> volume_err(rows.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const double sigma = rows[i].sigma;
    const double T = rows[i].T;
    tops[i] = top_portion(sigma, T, cfg);
    const double r0 = tops[i](0.0)[0];
    const double lo = std::sqrt(sigma / T + sigma * sigma);
    const double hi = std::sqrt(2.0 * sigma / T + sigma * sigma);
    vogel_margin[i] = std::min((r0 - lo) / lo, (hi - r0) / hi);
    const PhiProfile profile = volume_profile(sigma, T, r0, cfg);
    volume_err[i] = std::max(volume_check(profile, 0.0).relative_error(),
                             volume_check(profile, kPi / 4.0).relative_error());
  });
  const double worst_margin = *std::min_element(vogel_margin.begin(), vogel_margin.end());
  rep.add("vogel_sandwich_all", worst_margin >= -1e-9, worst_margin, 1e-9);
  const double worst_volume = *std::max_element(volume_err.begin(), volume_err.end());
  rep.add("volume_identity_all", worst_volume < 1e-8, worst_volume, 1e-8);

  // Pairwise: heights at equal inclination are ordered like sigma, and the
  // top portions cross at most once in the (r, u) plane.
  std::mt19937 rng(20240601u);
  std::uniform_int_distribution<std::size_t> pick(0, rows.size() - 1);
  double min_height_gap = std::numeric_limits<double>::infinity();
  int max_crossings = 0;
  const int pairs = rows.size() > 1 ? 10 : 0;
  for (int p = 0; p < pairs; ++p) {
    std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    while (b == a) b = pick(rng);
    if (rows[a].sigma > rows[b].sigma) std::swap(a, b);
    for (int k = 0; k <= 40; ++k) {
      const double phi = kHalfPi * k / 40.0;
      min_height_gap = std::min(min_height_gap, tops[b](phi)[1] - tops[a](phi)[1]);
    }
    const double r_lo = rows[b].sigma;
    const double r_hi = std::min(tops[a](0.0)[0], tops[b](0.0)[0]);
    if (!(r_hi > r_lo)) continue;
    int crossings = 0;
    int sign = 0;
    for (int k = 1; k < 200; ++k) {
      const double r = r_lo + (r_hi - r_lo) * k / 200.0;
      const double diff = top_height_at_radius(tops[b], r) - top_height_at_radius(tops[a], r);
      const int s = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
      if (s != 0 && sign != 0 && s != sign) ++crossings;
      if (s != 0) sign = s;
    }
    max_crossings = std::max(max_crossings, crossings);
  }
  if (pairs > 0) {
    rep.add("equal_angle_heights_ordered", min_height_gap > 0.0, min_height_gap, 0.0);
    rep.add("top_portions_cross_at_most_once", max_crossings <= 1, max_crossings, 1.0);
  }

  const bool have_tprime =
      std::all_of(rows.begin(), rows.end(), [](const TSample& s) { return s.Tprime.has_value(); });
  if (have_tprime) {
    double min_tp = std::numeric_limits<double>::infinity();
    for (const auto& s : rows) min_tp = std::min(min_tp, *s.Tprime);
    rep.add("Tprime_nonnegative_all", min_tp >= 0.0, min_tp, 0.0);
    const SweepReport sweep = sweep_variation(table, cfg, threads);
    rep.add("rdot_positive_all", sweep.all_positive, sweep.global_min_rdot, 0.0);
    double min_udot = std::numeric_limits<double>::infinity();
    bool persists = true;
    for (const auto& t : sweep.trajectories) {
      persists = persists && rdot_positivity_persists(t);
      for (std::size_t k = 0; k < t.phis.size(); ++k) {
        if (t.phis[k] > 0.0) min_udot = std::min(min_udot, t.udot[k]);
      }
    }
    rep.add("udot_positive_all", min_udot > 0.0, min_udot, 0.0);
    rep.add("rdot_positivity_persists_all", persists, 0.0, 0.0);
  }
  return rep;
}

}  // namespace bridge
