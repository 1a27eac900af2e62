#pragma once

#include <cstddef>

namespace bridge {

/// Every tolerance, grid size and truncation parameter used by the solvers.
struct SolverConfig {
  double tol_abs = 1e-11;     // |T(b + b_step) - T(b)| acceptance
  double tol_newton = 1e-13;  // relative Newton update ||dv|| / ||v||
  double tol_grid = 1e-12;    // |U_n(-1) - U_m(-1)| acceptance between grids
  std::size_t n_init = 60;
  std::size_t n_max = 2000;
  double grid_growth = 1.5;
  int max_newton_iter = 100;
  int max_halvings = 20;
  double b_init_floor = 14.0;
  double b_step = 2.0;
  double b_cap = 200.0;
  double kappa = 1.0;
  double ode_tol = 1e-11;
  std::size_t dense_samples = 200;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

}  // namespace bridge
