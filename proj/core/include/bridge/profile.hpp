#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bridge/config.hpp"
#include "bridge/ode.hpp"
#include "bridge/spectral_bvp.hpp"
#include "bridge/ttable.hpp"

namespace bridge {

/// One outer radius tried by the truncation loop.
struct TruncationStep {
  double b = 0.0;
  double T = 0.0;
  std::size_t n_final = 0;
};

/// Converged lower portion of the bridge (psi from -pi/2 at the vertical
/// point out to psi_b at r = b) and the height of its vertical point.
struct ProfileSolution {
  double sigma = 0.0;
  double T = 0.0;
  BvpState state;
  double b_final = 0.0;
  NewtonReport report;
  std::vector<TruncationStep> history;
};

/// Starting iterate: R linear from sigma to b, U = exp(sigma - R),
/// Psi = atan(-U), ell = b - sigma.
[[nodiscard]] BvpState initial_guess(double sigma, double b, const ChebGrid& grid);

/// Warm start for a larger outer radius: radii above 1 are stretched affinely
/// so the outer end lands on b_new; ell scales with the chord.
[[nodiscard]] BvpState rescale_for_outer_radius(const BvpState& state, double sigma, double b_old,
                                                double b_new);

/// Single solve at a fixed outer radius (no truncation loop).
[[nodiscard]] ProfileSolution solve_profile(const BvpProblem& problem, const SolverConfig& cfg);

/// T(sigma) with adaptive outer radius: start at max(b_init_floor, sigma + 4),
/// grow b by b_step until T changes by less than tol_abs.
[[nodiscard]] ProfileSolution solve_T(double sigma, const SolverConfig& cfg);

/// One solve_T per sigma; failed rows are recorded, not thrown.  Rows run on
/// up to `threads` workers (0 = hardware concurrency); output order matches
/// input order.
[[nodiscard]] TTable sweep_T(std::span<const double> sigmas, const SolverConfig& cfg, unsigned threads = 1);

/// Right-hand side of the inclination-parametrised profile equations
/// dr/dphi = -r cos(phi)/D, du/dphi = -r sin(phi)/D, D = kappa r u + sin(phi).
[[nodiscard]] OdeState<2> profile_rhs(double phi, const OdeState<2>& y, double kappa = 1.0);

/// Dense (phi, r, u) trajectory from a single integration.
using PhiTrajectory = DenseSolution<2>;

/// Upper portion: integrate from (sigma, T) at phi = pi/2 down to phi = 0.
[[nodiscard]] PhiTrajectory top_portion(double sigma, double T, const SolverConfig& cfg);

/// Upper portion joined with the lower portion integrated from phi = pi/2
/// towards pi until r reaches r_stop.
class PhiProfile {
 public:
  PhiProfile(PhiTrajectory top, PhiTrajectory lower, double kappa);

  [[nodiscard]] double phi_min() const { return 0.0; }
  [[nodiscard]] double phi_max() const { return lower_.t_end(); }
  [[nodiscard]] OdeState<2> operator()(double phi) const;
  [[nodiscard]] double kappa() const { return kappa_; }
  [[nodiscard]] const PhiTrajectory& top() const { return top_; }
  [[nodiscard]] const PhiTrajectory& lower() const { return lower_; }

  /// Angle in (pi/2, phi_max] where the lower portion reaches radius rho.
  [[nodiscard]] double lower_angle_at_radius(double rho) const;

 private:
  PhiTrajectory top_;
  PhiTrajectory lower_;
  double kappa_;
};

[[nodiscard]] PhiProfile phi_profile(double sigma, double T, double r_stop, const SolverConfig& cfg);

}  // namespace bridge
