#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bridge/config.hpp"
#include "bridge/ode.hpp"
#include "bridge/ttable.hpp"

namespace bridge {

/// (r, u, rdot, udot): the profile and its derivative with respect to the
/// family parameter.
using VariationState = OdeState<4>;

/// Profile equations with the variation system appended.  The variation block
/// is linear in (rdot, udot):
///   rdot' = cos(phi) (udot r^2 - rdot sin(phi)) / D^2
///   udot' = sin(phi) (udot r^2 - rdot sin(phi)) / D^2,   D = r u + sin(phi).
/// Throws SingularityError when D <= 0.
[[nodiscard]] VariationState variation_rhs(double phi, const VariationState& y);

struct VariationTrajectory {
  double sigma = 0.0;
  double T = 0.0;
  double Tprime = 0.0;
  std::vector<double> phis;  // descending from pi/2 to 0
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> rdot;
  std::vector<double> udot;
  double min_rdot = 0.0;
  double argmin_phi = 0.0;
  double rdot_at_0 = 0.0;
  DenseSolution<4> dense;
};

/// Integrate from phi = pi/2, state (sigma, T, 1, Tprime), down to phi = 0.
/// Stored samples are the integrator's steps merged with cfg.dense_samples
/// evenly spaced angles.
[[nodiscard]] VariationTrajectory integrate_variation(double sigma, double T, double Tprime,
                                                      const SolverConfig& cfg);

struct SweepReport {
  std::vector<VariationTrajectory> trajectories;  // one per input row
  std::vector<std::string> row_errors;            // empty string for rows that ran
  double global_min_rdot = 0.0;
  bool all_positive = false;

  [[nodiscard]] std::size_t failed_rows() const;
};

/// One trajectory per table row (rows need T and Tprime).  Row failures are
/// recorded and the sweep continues.
[[nodiscard]] SweepReport sweep_variation(const TTable& table, const SolverConfig& cfg, unsigned threads = 1);

/// Along a stored trajectory (ordered by decreasing phi), once rdot > 0 at
/// some phi_1 it stays positive for every stored phi in (phi_1, pi/2].
[[nodiscard]] bool rdot_positivity_persists(const VariationTrajectory& traj);

/// Lower-portion continuation of the same system from phi = pi/2 towards pi,
/// stopping once r >= r_stop.
[[nodiscard]] DenseSolution<4> integrate_variation_lower(double sigma, double T, double Tprime, double r_stop,
                                                         const SolverConfig& cfg);

/// Height-parametrised variation: same right-hand side, started at
/// (phi_start, r_start, u_start) with (r', u') = (0, 1), integrated to phi_end.
[[nodiscard]] DenseSolution<4> integrate_height_variation(double phi_start, double r_start, double u_start,
                                                          double phi_end, const SolverConfig& cfg);

}  // namespace bridge
