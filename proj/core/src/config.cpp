#include "bridge/config.hpp"

#include "bridge/errors.hpp"

namespace bridge {

void SolverConfig::validate() const {
  if (!(tol_abs > 0.0 && tol_newton > 0.0 && tol_grid > 0.0 && ode_tol > 0.0)) {
    throw InvalidArgument("solver tolerances must be positive");
  }
  if (n_init < 4 || n_max < n_init) throw InvalidArgument("need 4 <= n_init <= n_max");
  if (!(grid_growth > 1.0)) throw InvalidArgument("grid_growth must exceed 1");
  if (max_newton_iter < 1) throw InvalidArgument("max_newton_iter must be positive");
  if (!(b_step > 0.0)) throw InvalidArgument("b_step must be positive");
  if (!(b_init_floor > 0.0) || !(b_cap > b_init_floor)) throw InvalidArgument("need 0 < b_init_floor < b_cap");
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  if (dense_samples < 2) throw InvalidArgument("dense_samples must be at least 2");
}

}  // namespace bridge
