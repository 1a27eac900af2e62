#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bridge {

enum class Provenance { computed, asymptotic, spline };

[[nodiscard]] std::string_view to_string(Provenance p);
[[nodiscard]] Provenance provenance_from_string(std::string_view s);

/// One (sigma, T(sigma), T'(sigma)) record.
struct TSample {
  double sigma = 0.0;
  double T = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> Tprime;
  Provenance provenance = Provenance::computed;
  double b_final = std::numeric_limits<double>::quiet_NaN();
  std::size_t n_final = 0;
  double newton_residual = std::numeric_limits<double>::quiet_NaN();
  bool converged = true;
  std::string error;  // non-empty when the row failed
};

struct GridMeta {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::size_t count = 0;
};

struct TTable {
  std::vector<TSample> samples;
  GridMeta grid_meta;

  [[nodiscard]] bool all_converged() const;
  [[nodiscard]] std::vector<double> sigmas() const;
  [[nodiscard]] std::vector<double> heights() const;
};

/// Fixed 17-significant-digit scientific notation ("%.16e").
[[nodiscard]] std::string format_double(double x);

/// CSV schema: sigma,T,Tprime,b_final,n_final,newton_residual,provenance.
/// Unknown values are written as empty fields.
void write_ttable_csv(std::ostream& os, const TTable& table);
[[nodiscard]] TTable read_ttable_csv(std::istream& is);

inline constexpr std::string_view kTTableHeader = "sigma,T,Tprime,b_final,n_final,newton_residual,provenance";

}  // namespace bridge
