#pragma once

#include <cstddef>
#include <span>

#include "bridge/ttable.hpp"

namespace bridge {

/// True when `sigmas` equals the Chebyshev grid of the same size on
/// [front, back] to `tol` times the interval width.
[[nodiscard]] bool is_chebyshev_grid(std::span<const double> sigmas, double tol = 1e-12);

/// Fill Tprime by applying the square first-order Chebyshev differentiation
/// operator (sized to the table) to the T column.  Throws GridMismatch when
/// the sigmas are off-grid and InvalidArgument when a row did not converge.
[[nodiscard]] TTable differentiate_T(const TTable& table);

/// Integral of the Chebyshev interpolant of Tprime from sigma_min to `sigma`
/// by Clenshaw-Curtis with `order` nodes (0 picks the table size + 8).
[[nodiscard]] double integrate_Tprime(const TTable& table, double sigma, std::size_t order = 0);

}  // namespace bridge
