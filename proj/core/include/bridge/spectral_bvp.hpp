#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bridge/chebyshev.hpp"
#include "bridge/config.hpp"

namespace bridge {

/// Boundary data for the rescaled arclength problem on tau in [-1, 1]:
/// R(-1) = sigma, Psi(-1) = -pi/2, R(1) = b, Psi(1) = psi_b.
struct BvpProblem {
  double sigma = 1.0;
  double b = 14.0;
  double psi_b = 0.0;
  double kappa = 1.0;

  void validate() const;
};

/// Nodal values of (R, U, Psi) on a Chebyshev grid over [-1, 1] plus the total
/// arclength ell.
struct BvpState {
  ChebGrid grid{2, Interval{-1.0, 1.0}};
  Eigen::VectorXd R;
  Eigen::VectorXd U;
  Eigen::VectorXd Psi;
  double ell = 1.0;

  [[nodiscard]] std::size_t n() const { return grid.size(); }
  [[nodiscard]] Eigen::VectorXd stacked() const;
  [[nodiscard]] static BvpState from_stacked(const ChebGrid& grid, const Eigen::VectorXd& v);

  /// Values at tau = -1 (the vertical point).
  [[nodiscard]] double height_at_vertical() const { return U(0); }
};

/// Interpolate every component of `state` onto an m-point grid.
[[nodiscard]] BvpState resample(const BvpState& state, std::size_t m);

/// Rectangular collocation operators for one grid size: down-sampling and
/// first derivative, both (n-1) x n.
class Collocation {
 public:
  explicit Collocation(std::size_t n);

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] const Eigen::MatrixXd& down() const { return down_; }
  [[nodiscard]] const Eigen::MatrixXd& deriv() const { return deriv_; }

 private:
  std::size_t n_;
  Eigen::MatrixXd down_;
  Eigen::MatrixXd deriv_;
};

/// Collocation residual N(v), length 3(n-1) + 4.  The three equation blocks
/// come first, then R(-1) - sigma, R(1) - b, Psi(-1) + pi/2, Psi(1) - psi_b.
[[nodiscard]] Eigen::VectorXd residual(const BvpState& state, const BvpProblem& problem);
[[nodiscard]] Eigen::VectorXd residual(const BvpState& state, const BvpProblem& problem,
                                       const Collocation& ops);

/// Frechet derivative of `residual` at `state`, (3(n-1)+4) x (3n+1), columns
/// ordered as the stacked unknowns [R, U, Psi, ell].
[[nodiscard]] Eigen::MatrixXd frechet(const BvpState& state, const BvpProblem& problem);
[[nodiscard]] Eigen::MatrixXd frechet(const BvpState& state, const BvpProblem& problem,
                                      const Collocation& ops);

struct NewtonReport {
  int iterations = 0;
  double final_residual = 0.0;  // last relative update norm
  std::size_t n_final = 0;
  bool converged = false;
  int halvings = 0;  // damped steps taken by the fallback line search
  std::size_t n_checked = 0;       // coarser partner grid that agreed with n_final (0 if none)
  double grid_delta = 0.0;         // |U_n(-1) - U_check(-1)|
  std::vector<std::size_t> grid_history;
  std::string message;
};

/// Full-step Newton iteration v <- v - L(v)^{-1} N(v) with a halving fallback
/// when a step inflates the residual by more than 10x.
[[nodiscard]] std::pair<BvpState, NewtonReport> newton_solve(const BvpState& initial,
                                                             const BvpProblem& problem,
                                                             const SolverConfig& cfg);

/// Grow the grid by cfg.grid_growth until U(-1) agrees between consecutive
/// grids to cfg.tol_grid.  Returns the finer of the agreeing pair.
[[nodiscard]] std::pair<BvpState, NewtonReport> adapt_grid(const BvpState& state, const BvpProblem& problem,
                                                           const SolverConfig& cfg);

/// Next grid size under cfg's growth policy.
[[nodiscard]] std::size_t grown_size(std::size_t n, const SolverConfig& cfg);

}  // namespace bridge
