#include "bridge/tprime.hpp"

#include <cmath>

#include "bridge/chebyshev.hpp"
#include "bridge/errors.hpp"

namespace bridge {

bool is_chebyshev_grid(std::span<const double> sigmas, double tol) {
  if (sigmas.size() < 2 || !(sigmas.back() > sigmas.front())) return false;
  const Interval iv{sigmas.front(), sigmas.back()};
  const auto expected = cheb_points(sigmas.size(), iv);
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (std::abs(sigmas[i] - expected[i]) > tol * iv.width()) return false;
  }
  return true;
}

TTable differentiate_T(const TTable& table) {
  const auto sigmas = table.sigmas();
  if (!is_chebyshev_grid(sigmas)) {
    throw GridMismatch("table sigmas do not lie on a Chebyshev grid over [" +
                       std::to_string(sigmas.empty() ? 0.0 : sigmas.front()) + ", " +
                       std::to_string(sigmas.empty() ? 0.0 : sigmas.back()) + "]");
  }
  if (!table.all_converged()) throw InvalidArgument("differentiate_T: table contains failed rows");

  const Interval iv{sigmas.front(), sigmas.back()};
  const auto d = diff_operator(sigmas.size(), sigmas.size(), 1, iv);
  const auto t = table.heights();
  const Eigen::VectorXd dt = d.entries * Eigen::Map<const Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size()));

  TTable out = table;
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i].Tprime = dt(static_cast<Eigen::Index>(i));
  out.grid_meta = {iv.lo, iv.hi, sigmas.size()};
  return out;
}

double integrate_Tprime(const TTable& table, double sigma, std::size_t order) {
  const auto sigmas = table.sigmas();
  if (!is_chebyshev_grid(sigmas)) throw GridMismatch("integrate_Tprime: table is not on a Chebyshev grid");
  std::vector<double> tp;
  tp.reserve(table.samples.size());
  for (const auto& s : table.samples) {
    if (!s.Tprime) throw InvalidArgument("integrate_Tprime: row without Tprime");
    tp.push_back(*s.Tprime);
  }
  const ChebGrid grid(sigmas.size(), Interval{sigmas.front(), sigmas.back()});
  if (sigma == sigmas.front()) return 0.0;
  if (!grid.interval().contains(sigma)) throw OutOfDomain("integrate_Tprime: sigma outside table range");
  const std::size_t m = order == 0 ? sigmas.size() + 8 : order;
  return clenshaw_curtis([&](double x) { return bary_eval(grid, tp, x); }, Interval{sigmas.front(), sigma}, m);
}

}  // namespace bridge
