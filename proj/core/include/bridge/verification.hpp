#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "bridge/config.hpp"
#include "bridge/profile.hpp"
#include "bridge/ttable.hpp"
#include "bridge/variation.hpp"

namespace bridge {

/// Closed-form volume swept between the profile and the line r = rho0,
/// measured from the angle phi0 where r = rho0:
///   V(phi) = pi (r^2 - rho0^2) u(phi) + 2 pi (r sin(phi) - rho0 sin(phi0)).
[[nodiscard]] double volume_closed_form(const PhiProfile& profile, double phi, double rho0, double phi0);

/// The same volume by washers,
///   pi rho0^2 (u0 - u(phi)) - pi * integral_{phi}^{phi0} r^2 du/dphi dphi,
/// with an `order`-point Clenshaw-Curtis rule on the dense profile.
[[nodiscard]] double volume_quadrature(const PhiProfile& profile, double phi, double rho0, double phi0,
                                       std::size_t order = 128);

struct VolumeCheck {
  double rho0 = 0.0;
  double phi0 = 0.0;
  double phi_minus = 0.0;
  double V_closed = 0.0;
  double V_quadrature = 0.0;
  double Delta_at_phi_minus = 0.0;

  [[nodiscard]] double relative_error() const;
};

/// Locate phi^- (> pi/2, r(phi^-) = r(phi0)) and evaluate both volume forms
/// there.  phi0 must lie in [0, pi/2).
[[nodiscard]] VolumeCheck volume_check(const PhiProfile& profile, double phi0, std::size_t order = 128);

/// 2 pi * r_variation * D with D = r u + sin(phi): the sign of the volume
/// derivative at phi^-.  Throws SingularityError when D <= 0.
[[nodiscard]] double vprime_criterion(double phi, double r, double u, double r_variation);

/// sqrt(sigma/T + sigma^2) <= r(0) <= sqrt(2 sigma/T + sigma^2), with 1e-9
/// relative slack.
[[nodiscard]] bool vogel_bounds_check(double sigma, double T, double r_at_0);

/// u(r) on the top portion, by inverting the monotone r(phi).
[[nodiscard]] double top_height_at_radius(const PhiTrajectory& top, double r);

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  void add(std::string name, bool passed, double measured, double tolerance);
  [[nodiscard]] bool all_passed() const;
  /// One line per check: name status measured tolerance.
  void write(std::ostream& os) const;
};

/// Full check list for one sigma: bounds, boundary conditions, volume
/// identity, concavity, truncation insensitivity and the variation signs.
[[nodiscard]] VerificationReport verify_sigma(double sigma, const SolverConfig& cfg);

/// Aggregate checks over a computed table (rows need T; Tprime enables the
/// variation checks).
[[nodiscard]] VerificationReport verify_table(const TTable& table, const SolverConfig& cfg, unsigned threads = 1);

}  // namespace bridge
