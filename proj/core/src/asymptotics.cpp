#include "bridge/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bridge/chebyshev.hpp"
#include "bridge/errors.hpp"

namespace bridge {

namespace {

void require_unit_domain(double sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0)) {
    throw OutOfDomain("small-radius estimate needs 0 < sigma <= 1, got " + std::to_string(sigma));
  }
}

bool same_sigma(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

void AsymptoticConfig::validate() const {
  if (!(sigma_lo > 0.0)) throw InvalidArgument("sigma_lo must be positive");
  if (!(sigma_lo < splice_hi)) throw InvalidArgument("sigma_lo must be below splice_hi");
  if (!(splice_hi <= sigma_hi_asym)) throw InvalidArgument("splice_hi must not exceed sigma_hi_asym");
  if (n_points < 2) throw InvalidArgument("n_points must be at least 2");
  if (n_keep > n_points) throw InvalidArgument("n_keep must not exceed n_points");
}

double turkington_T(double sigma) {
  require_unit_domain(sigma);
  return -sigma * std::log(sigma);
}

double turkington_Tprime(double sigma) {
  require_unit_domain(sigma);
  return -std::log(sigma) - 1.0;
}

TTable splice_tables(const TTable& computed, const AsymptoticConfig& cfg) {
  cfg.validate();
  if (cfg.n_keep == 0) return computed;
  if (computed.samples.empty()) throw InvalidArgument("splice_tables: computed table is empty");

  std::vector<TSample> rows = computed.samples;
  std::sort(rows.begin(), rows.end(), [](const TSample& a, const TSample& b) { return a.sigma < b.sigma; });
  for (const auto& s : rows) {
    if (!s.converged || !std::isfinite(s.T) || !s.Tprime) {
      throw InvalidArgument("splice_tables: every computed row needs T and Tprime");
    }
  }
  if (rows.front().sigma > cfg.splice_hi * (1.0 + 1e-12)) {
    throw InvalidArgument("splice_tables: computed table must start at or below splice_hi");
  }

  const std::vector<double> asym = cheb_points(cfg.n_points, Interval{cfg.sigma_lo, cfg.sigma_hi_asym});
  std::vector<double> knots;
  std::vector<double> t_knots;
  std::vector<double> tp_knots;
  std::vector<double> asym_knots;
  auto shadows_asym = [&](const TSample& r) {
    return std::any_of(asym.begin(), asym.begin() + static_cast<std::ptrdiff_t>(cfg.n_keep),
                       [&](double a) { return same_sigma(r.sigma, a); });
  };
  // Asymptotic knots stop where the computed range proper begins.  A computed
  // row sitting on an asymptotic point only replaces that point.
  const auto main_it = std::find_if_not(rows.begin(), rows.end(), shadows_asym);
  const double main_start = main_it == rows.end() ? std::numeric_limits<double>::infinity() : main_it->sigma;
  std::vector<std::pair<double, std::pair<double, double>>> nodes;
  for (std::size_t i = 0; i < cfg.n_keep; ++i) {
    const double s = asym[i];
    const bool shadowed =
        std::any_of(rows.begin(), rows.end(), [&](const TSample& r) { return same_sigma(r.sigma, s); });
    if (shadowed || s >= main_start) continue;
    nodes.push_back({s, {turkington_T(s), turkington_Tprime(s)}});
    asym_knots.push_back(s);
  }
  for (const auto& r : rows) nodes.push_back({r.sigma, {r.T, *r.Tprime}});
  std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [s, v] : nodes) {
    if (!knots.empty() && same_sigma(knots.back(), s)) continue;
    knots.push_back(s);
    t_knots.push_back(v.first);
    tp_knots.push_back(v.second);
  }

  const NaturalCubicSpline spline_T(knots, t_knots);
  const NaturalCubicSpline spline_Tp(knots, tp_knots);

  TTable out;
  const std::vector<double> samples = cheb_points(cfg.n_points, Interval{cfg.sigma_lo, cfg.splice_hi});
  for (double s : samples) {
    const auto hit = std::find_if(rows.begin(), rows.end(), [&](const TSample& r) { return same_sigma(r.sigma, s); });
    if (hit != rows.end()) continue;  // emitted with the computed rows below
    TSample row;
    row.sigma = s;
    const bool on_knot =
        std::any_of(asym_knots.begin(), asym_knots.end(), [&](double k) { return same_sigma(k, s); });
    row.provenance = on_knot ? Provenance::asymptotic : Provenance::spline;
    row.T = on_knot ? turkington_T(s) : spline_T(s);
    row.Tprime = on_knot ? turkington_Tprime(s) : spline_Tp(s);
    out.samples.push_back(row);
  }
  out.samples.insert(out.samples.end(), rows.begin(), rows.end());
  std::sort(out.samples.begin(), out.samples.end(),
            [](const TSample& a, const TSample& b) { return a.sigma < b.sigma; });
  out.grid_meta = {out.samples.front().sigma, out.samples.back().sigma, out.samples.size()};
  return out;
}

SeamAudit audit_monotone(const TTable& table) {
  SeamAudit audit;
  audit.min_T_step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < table.samples.size(); ++i) {
    const double step = table.samples[i].T - table.samples[i - 1].T;
    if (step < audit.min_T_step) {
      audit.min_T_step = step;
      audit.sigma_at_min = table.samples[i - 1].sigma;
    }
    if (!(step > 0.0)) audit.T_increasing = false;
  }
  return audit;
}

SweepReport sweep_variation_extended(const TTable& spliced, const SolverConfig& cfg, unsigned threads) {
  return sweep_variation(spliced, cfg, threads);
}

}  // namespace bridge
