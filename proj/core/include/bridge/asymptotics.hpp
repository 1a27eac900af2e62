#pragma once

#include <cstddef>

#include "bridge/config.hpp"
#include "bridge/ttable.hpp"
#include "bridge/variation.hpp"

namespace bridge {

struct AsymptoticConfig {
  double sigma_lo = 0.00085;
  double sigma_hi_asym = 0.170;
  std::size_t n_points = 100;
  std::size_t n_keep = 10;  // leftmost asymptotic points used as spline knots
  double splice_hi = 0.085;

  /// Throws InvalidArgument unless 0 < sigma_lo < splice_hi <= sigma_hi_asym
  /// and n_keep <= n_points.
  void validate() const;
};

/// Small-radius estimate -sigma log(sigma).  Defined on (0, 1]; throws
/// OutOfDomain elsewhere.
[[nodiscard]] double turkington_T(double sigma);
/// Its derivative, -log(sigma) - 1, on the same domain.
[[nodiscard]] double turkington_Tprime(double sigma);

/// Extend a computed table below its first row.  The leftmost n_keep of
/// n_points Chebyshev points on [sigma_lo, sigma_hi_asym] carry the
/// asymptotic T and Tprime; together with the computed rows they are the
/// knots of two natural cubic splines (one for T, one for Tprime), sampled at
/// n_points Chebyshev points on [sigma_lo, splice_hi].  The result holds
/// those samples followed by the computed rows above splice_hi.  Samples that
/// coincide with a computed sigma are replaced by the computed row; samples
/// that coincide with an asymptotic knot are tagged asymptotic.  With
/// n_keep = 0 the computed table is returned unchanged.
[[nodiscard]] TTable splice_tables(const TTable& computed, const AsymptoticConfig& cfg);

struct SeamAudit {
  bool T_increasing = true;
  double min_T_step = 0.0;   // smallest T[i+1] - T[i]
  double sigma_at_min = 0.0; // left sigma of that step
};

/// Monotonicity of T along a (spliced) table.
[[nodiscard]] SeamAudit audit_monotone(const TTable& table);

/// The variation sweep over every row of a spliced table.
[[nodiscard]] SweepReport sweep_variation_extended(const TTable& spliced, const SolverConfig& cfg,
                                                   unsigned threads = 1);

}  // namespace bridge
