#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "bridge/chebyshev.hpp"
#include "bridge/errors.hpp"
#include "bridge/profile.hpp"
#include "bridge/tprime.hpp"
#include "bridge/variation.hpp"
#include "bridge/verification.hpp"
#include "output.hpp"
#include "svg.hpp"

namespace cli {

namespace {

using bridge::format_double;
constexpr double kHalfPi = std::numbers::pi / 2.0;

std::string csv_row(std::initializer_list<double> values) {
  std::string line;
  for (double v : values) {
    if (!line.empty()) line += ',';
    line += format_double(v);
  }
  return line + '\n';
}

// Runs a command body; numerical failures become exit 1 and the manifest is
// written either way.  Usage errors propagate to main.
int guarded(OutputDir& out, Manifest& m, const std::function<int()>& body) {
  int code = 1;
  try {
    code = body();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    m.extra()["error"] = e.what();
    code = 1;
  }
  m.finish(out, code);
  return code;
}

/// Barycentric interpolant through rows that sit on a Chebyshev grid,
/// otherwise straight segments.
Series curve_through(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
  if (x.size() >= 2 && bridge::is_chebyshev_grid(x)) {
    const bridge::ChebGrid grid(x.size(), bridge::Interval{x.front(), x.back()});
    return sample([&](double s) { return bridge::bary_eval(grid, y, s); }, std::max(lo, x.front()),
                  std::min(hi, x.back()));
  }
  Series s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo || x[i] > hi) continue;
    s.x.push_back(x[i]);
    s.y.push_back(y[i]);
  }
  return s;
}

bridge::SolverConfig base_config() {
  bridge::SolverConfig cfg;
  cfg.validate();
  return cfg;
}

std::string status_of(const bridge::TSample& row, const std::string& err) {
  if (!err.empty()) return "failed";
  if (row.Tprime && *row.Tprime < 0.0) return "negative_Tprime";
  return "ok";
}

/// Summary CSV, min-rdot plot and verdict shared by rdot and extend.
bool report_variation(OutputDir& out, Manifest& m, const bridge::TTable& table, const bridge::SweepReport& rep,
                      const std::string& prefix) {
  std::string csv = "sigma,T,Tprime,min_rdot,argmin_phi,rdot_at_0,status\n";
  Series mins;
  Series ends;
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < table.samples.size(); ++i) {
    const auto& row = table.samples[i];
    const auto& t = rep.trajectories[i];
    const std::string status = status_of(row, rep.row_errors[i]);
    const bool ran = rep.row_errors[i].empty();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::string line = csv_row({row.sigma, row.T, row.Tprime.value_or(nan), ran ? t.min_rdot : nan,
                                ran ? t.argmin_phi : nan, ran ? t.rdot_at_0 : nan});
    line.pop_back();
    csv += line + "," + status + "\n";
    if (status == "negative_Tprime") {
      ++flagged;
      std::fprintf(stderr, "warning: row %zu (sigma=%.6g) has T' = %.3e < 0\n", i, row.sigma, *row.Tprime);
    }
    if (!ran) {
      std::fprintf(stderr, "row %zu (sigma=%.6g) failed: %s\n", i, row.sigma, rep.row_errors[i].c_str());
      continue;
    }
    mins.x.push_back(row.sigma);
    mins.y.push_back(t.min_rdot);
    ends.x.push_back(row.sigma);
    ends.y.push_back(t.rdot_at_0);
  }
  out.write(prefix + "rdot_summary.csv", csv);

  Plot p("variation endpoint and minimum", "sigma", "rdot");
  ends.label = "rdot(0, sigma)";
  ends.color = "#b03a2e";
  mins.label = "min over phi";
  mins.stroke = Stroke::dashed;
  p.add(ends);
  p.add(mins);
  p.hline(0.0);
  out.write(prefix + "min_rdot.svg", p.render());

  const bool ok = rep.all_positive;
  std::printf("global min rdot %.6e over %zu rows (%zu failed, %zu with negative T')\n", rep.global_min_rdot,
              table.samples.size(), rep.failed_rows(), flagged);
  std::printf("%s\n", ok ? "HYPOTHESIS-3 SATISFIED" : "HYPOTHESIS-3 NOT SATISFIED");
  auto& r = m.extra()[prefix + "variation"];
  r["all_positive"] = ok;
  r["global_min_rdot"] = std::isfinite(rep.global_min_rdot) ? nlohmann::ordered_json(rep.global_min_rdot)
                                                           : nlohmann::ordered_json(nullptr);
  r["failed_rows"] = rep.failed_rows();
  r["negative_Tprime_rows"] = flagged;
  return ok;
}

bool has_tprime(const bridge::TTable& t) {
  return std::any_of(t.samples.begin(), t.samples.end(), [](const auto& s) { return s.Tprime.has_value(); });
}

}  // namespace

int cmd_profile(const ProfileOptions& o, const Common& c) {
  bridge::SolverConfig cfg = base_config();
  cfg.kappa = o.kappa;
  try {
    cfg.validate();
  } catch (const bridge::InvalidArgument& e) {
    throw UsageError(e.what());
  }
  OutputDir out(c.out, c.force);
  Manifest m("profile", c.argv, c.threads);
  m.solver(cfg);
  return guarded(out, m, [&] {
    bridge::ProfileSolution sol;
    const bool fixed = o.b || o.psi_b;
    if (fixed) {
      const bridge::BvpProblem p{o.sigma, o.b.value_or(std::max(cfg.b_init_floor, o.sigma + 4.0)),
                                 o.psi_b.value_or(0.0), cfg.kappa};
      try {
        p.validate();
      } catch (const bridge::InvalidArgument& e) {
        throw UsageError(e.what());
      }
      sol = bridge::solve_profile(p, cfg);
    } else {
      sol = bridge::solve_T(o.sigma, cfg);
    }
    const auto& s = sol.state;

    std::string csv = "# ell=" + format_double(s.ell) + "\ntau,R,U,Psi\n";
    for (std::size_t i = 0; i < s.n(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      csv += csv_row({s.grid[i], s.R(k), s.U(k), s.Psi(k)});
    }
    out.write("profile.csv", csv);

    char title[64];
    std::snprintf(title, sizeof title, "generating curve, sigma = %g", o.sigma);
    Plot p(title, "r", "u");
    const std::vector<double> R(s.R.data(), s.R.data() + s.R.size());
    const std::vector<double> U(s.U.data(), s.U.data() + s.U.size());
    Series lower = sample([](double t) { return t; }, -1.0, 1.0);
    const auto tau = lower.x;
    lower.x = bridge::bary_eval(s.grid, R, tau);
    lower.y = bridge::bary_eval(s.grid, U, tau);
    p.add(lower);

    // The upper portion only exists for the bridge (psi = 0 at the far end).
    try {
      const auto top = bridge::top_portion(o.sigma, sol.T, cfg);
      std::string tcsv = "phi,r,u\n";
      Series upper;
      for (std::size_t k = 0; k < 400; ++k) {
        const double phi = kHalfPi * static_cast<double>(399 - k) / 399.0;
        const auto y = top(phi);
        tcsv += csv_row({phi, y[0], y[1]});
        upper.x.push_back(y[0]);
        upper.y.push_back(y[1]);
      }
      upper.color = "#b03a2e";
      p.add(upper);
      out.write("top.csv", tcsv);
    } catch (const UsageError&) {
      throw;
    } catch (const std::runtime_error& e) {
      std::fprintf(stderr, "warning: no upper portion: %s\n", e.what());
    }
    p.hline(0.0);
    p.vline(sol.b_final);
    out.write("profile.svg", p.render());

    std::printf("sigma %.6g  T %.16e  b %.6g  n %zu  newton iterations %d\n", o.sigma, sol.T, sol.b_final,
                s.n(), sol.report.iterations);
    m.extra()["T"] = sol.T;
    m.extra()["b_final"] = sol.b_final;
    m.extra()["n_final"] = s.n();
    m.extra()["ell"] = s.ell;
    return 0;
  });
}

int cmd_sweep(const SweepOptions& o, const Common& c) {
  if (o.num == 0) throw UsageError("--num must be at least 1");
  if (!(o.sigma_min > 0.0)) throw UsageError("--sigma-min must be positive");
  if (o.num > 1 && !(o.sigma_max > o.sigma_min)) throw UsageError("--sigma-max must exceed --sigma-min");
  const bridge::SolverConfig cfg = base_config();
  OutputDir out(c.out, c.force);
  Manifest m("sweep", c.argv, c.threads);
  m.solver(cfg);
  return guarded(out, m, [&] {
    const std::vector<double> sigmas =
        o.num == 1 ? std::vector<double>{o.sigma_min}
                   : bridge::cheb_points(o.num, bridge::Interval{o.sigma_min, o.sigma_max});
    bridge::TTable table = bridge::sweep_T(sigmas, cfg, c.threads);
    const bool complete = table.all_converged();
    if (complete && o.num > 1) table = bridge::differentiate_T(table);

    out.write_table("T.csv", table);
    std::string bcsv = "sigma,b_final,n_final\n";
    for (const auto& s : table.samples) {
      bcsv += format_double(s.sigma) + "," + format_double(s.b_final) + "," +
              (s.converged ? std::to_string(s.n_final) : std::string()) + "\n";
    }
    out.write("b_sigma.csv", bcsv);

    std::vector<double> xs;
    std::vector<double> ts;
    for (const auto& s : table.samples) {
      if (!s.converged) continue;
      xs.push_back(s.sigma);
      ts.push_back(s.T);
    }
    Plot pt("T(sigma)", "sigma", "T");
    if (complete) pt.add(curve_through(xs, ts, xs.front(), xs.back()));
    pt.add({xs, ts, "#b03a2e", Stroke::solid, true, ""});
    out.write("T.svg", pt.render());

    Plot pb("truncation radius", "sigma", "b");
    Series bs;
    for (const auto& s : table.samples) {
      if (!s.converged) continue;
      bs.x.push_back(s.sigma);
      bs.y.push_back(s.b_final);
    }
    bs.markers = true;
    pb.add(bs);
    out.write("b_sigma.svg", pb.render());

    if (complete && o.num > 1) {
      std::vector<double> tp;
      for (const auto& s : table.samples) tp.push_back(*s.Tprime);
      Plot pp("T'(sigma)", "sigma", "T'");
      pp.add(curve_through(xs, tp, xs.front(), xs.back()));
      pp.add({xs, tp, "#b03a2e", Stroke::solid, true, ""});
      out.write("Tprime.svg", pp.render());
    }

    m.rows(table);
    std::size_t failed = 0;
    for (std::size_t i = 0; i < table.samples.size(); ++i) {
      const auto& s = table.samples[i];
      if (s.converged) continue;
      ++failed;
      std::fprintf(stderr, "row %zu (sigma=%.6g) failed: %s\n", i, s.sigma, s.error.c_str());
    }
    std::printf("%zu rows, %zu failed\n", table.samples.size(), failed);
    return failed == 0 ? 0 : 1;
  });
}

int cmd_rdot(const std::filesystem::path& path, const Common& c) {
  const bridge::TTable table = read_table(path);
  if (table.samples.empty()) throw UsageError(path.string() + ": table has no rows");
  if (!has_tprime(table)) throw UsageError(path.string() + ": table has no Tprime values");
  const bridge::SolverConfig cfg = base_config();
  OutputDir out(c.out, c.force);
  Manifest m("rdot", c.argv, c.threads);
  m.solver(cfg);
  return guarded(out, m, [&] {
    const auto rep = bridge::sweep_variation(table, cfg, c.threads);

    Plot fol("variation along the upper portion", "phi", "rdot");
    const std::size_t n = rep.trajectories.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!rep.row_errors[i].empty()) continue;
      const auto& t = rep.trajectories[i];
      char name[48];
      std::snprintf(name, sizeof name, "trajectories/traj_%03zu.csv", i);
      std::string csv = "phi,r,u,rdot,udot\n";
      for (std::size_t k = 0; k < t.phis.size(); ++k) csv += csv_row({t.phis[k], t.r[k], t.u[k], t.rdot[k], t.udot[k]});
      out.write(name, csv);

      // Small sigma in blue through large sigma in red.
      const double w = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
      char color[8];
      std::snprintf(color, sizeof color, "#%02x30%02x", static_cast<int>(40 + 200 * w),
                    static_cast<int>(240 - 200 * w));
      fol.add({t.phis, t.rdot, color, Stroke::solid, false, ""});
    }
    fol.hline(0.0);
    out.write("foliation.svg", fol.render());

    const bool ok = report_variation(out, m, table, rep, "");
    return ok ? 0 : 1;
  });
}

int cmd_extend(const std::filesystem::path& path, const bridge::AsymptoticConfig& acfg, const Common& c) {
  try {
    acfg.validate();
  } catch (const bridge::InvalidArgument& e) {
    throw UsageError(e.what());
  }
  bridge::TTable table = read_table(path);
  if (table.samples.empty()) throw UsageError(path.string() + ": table has no rows");
  if (!has_tprime(table)) {
    try {
      table = bridge::differentiate_T(table);
    } catch (const std::exception& e) {
      throw UsageError(path.string() + ": no Tprime values and they cannot be computed: " + e.what());
    }
  }
  bridge::TTable ext;
  try {
    ext = bridge::splice_tables(table, acfg);
  } catch (const bridge::InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const bridge::SolverConfig cfg = base_config();
  OutputDir out(c.out, c.force);
  Manifest m("extend", c.argv, c.threads);
  m.solver(cfg);
  m.asymptotic(acfg);
  return guarded(out, m, [&] {
    out.write_table("extended.csv", ext);
    m.rows(ext);

    const auto audit = bridge::audit_monotone(ext);
    m.extra()["seam_audit"] = {{"T_increasing", audit.T_increasing},
                               {"min_T_step", audit.min_T_step},
                               {"sigma_at_min", audit.sigma_at_min}};
    if (!audit.T_increasing) {
      std::fprintf(stderr, "warning: spliced T is not increasing (step %.3e after sigma=%.6g)\n", audit.min_T_step,
                   audit.sigma_at_min);
    }

    // Computed rows solid, spliced rows dashed, the small-sigma law dotted.
    std::vector<double> cx, ct, ctp, sx, st, stp, ax, at, atp;
    for (const auto& s : ext.samples) {
      const bool computed = s.provenance == bridge::Provenance::computed;
      if (computed && s.sigma >= acfg.splice_hi * (1.0 - 1e-12)) {
        cx.push_back(s.sigma);
        ct.push_back(s.T);
        ctp.push_back(*s.Tprime);
      }
      if (!computed || s.sigma <= acfg.splice_hi * (1.0 + 1e-12)) {
        sx.push_back(s.sigma);
        st.push_back(s.T);
        stp.push_back(*s.Tprime);
      }
      if (s.provenance == bridge::Provenance::asymptotic) {
        ax.push_back(s.sigma);
        at.push_back(s.T);
        atp.push_back(*s.Tprime);
      }
    }
    const double lo = ext.samples.front().sigma;
    const double asym_hi = std::min(acfg.sigma_hi_asym, 1.0);
    auto draw = [&](const std::string& name, const std::string& label, const std::vector<double>& cy,
                    const std::vector<double>& sy, const std::vector<double>& ay, double (*law)(double),
                    double hi) {
      Plot p(label + " with small-sigma extension", "sigma", label);
      if (!cx.empty()) p.add(curve_through(cx, cy, lo, hi));
      if (sx.size() >= 2) {
        Series s = curve_through(sx, sy, lo, hi);
        s.stroke = Stroke::dashed;
        s.color = "#1e8449";
        s.label = "spline";
        p.add(s);
      }
      Series a = sample(law, std::max(lo, acfg.sigma_lo), std::min(asym_hi, hi));
      a.stroke = Stroke::dotted;
      a.color = "#7d3c98";
      a.label = "asymptote";
      p.add(a);
      if (!ax.empty()) p.add({ax, ay, "#b03a2e", Stroke::solid, true, ""});
      out.write(name, p.render());
    };
    const double hi = ext.samples.back().sigma;
    draw("T_extended.svg", "T", ct, st, at, bridge::turkington_T, hi);
    draw("T_extended_zoom.svg", "T", ct, st, at, bridge::turkington_T, acfg.sigma_hi_asym);
    draw("Tprime_extended.svg", "T'", ctp, stp, atp, bridge::turkington_Tprime, hi);
    draw("Tprime_extended_zoom.svg", "T'", ctp, stp, atp, bridge::turkington_Tprime, acfg.sigma_hi_asym);

    const auto rep = bridge::sweep_variation_extended(ext, cfg, c.threads);
    std::size_t top_argmin = 0;
    std::size_t extended = 0;
    for (std::size_t i = 0; i < ext.samples.size(); ++i) {
      if (ext.samples[i].provenance == bridge::Provenance::computed || !rep.row_errors[i].empty()) continue;
      ++extended;
      if (std::abs(rep.trajectories[i].argmin_phi - kHalfPi) < 1e-12) ++top_argmin;
    }
    std::printf("extended rows %zu, argmin at phi = pi/2 on %zu\n", extended, top_argmin);
    m.extra()["extended_rows"] = extended;
    m.extra()["extended_rows_argmin_top"] = top_argmin;
    const bool ok = report_variation(out, m, ext, rep, "extended_");
    return ok && audit.T_increasing ? 0 : 1;
  });
}

int cmd_verify(const VerifyOptions& o, const Common& c) {
  if (o.sigmas.empty() == !o.table) throw UsageError("verify needs exactly one of --sigma or --table");
  std::optional<bridge::TTable> table;
  if (o.table) table = read_table(*o.table);
  if (table && table->samples.empty()) throw UsageError(o.table->string() + ": table has no rows");
  for (double s : o.sigmas) {
    if (!(s > 0.0)) throw UsageError("--sigma values must be positive");
  }
  const bridge::SolverConfig cfg = base_config();
  OutputDir out(c.out, c.force);
  Manifest m("verify", c.argv, c.threads);
  m.solver(cfg);
  return guarded(out, m, [&] {
    std::ostringstream text;
    bool ok = true;
    std::size_t checks = 0;
    if (table) {
      const auto rep = bridge::verify_table(*table, cfg, c.threads);
      text << "# table " << o.table->filename().string() << " (" << table->samples.size() << " rows)\n";
      rep.write(text);
      ok = rep.all_passed();
      checks = rep.checks.size();
    } else {
      for (double s : o.sigmas) {
        const auto rep = bridge::verify_sigma(s, cfg);
        text << "# sigma " << format_double(s) << "\n";
        rep.write(text);
        ok = ok && rep.all_passed();
        checks += rep.checks.size();
      }
    }
    std::fputs(text.str().c_str(), stdout);
    std::printf("%s (%zu checks)\n", ok ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED", checks);
    out.write("verification.txt", text.str());
    m.extra()["all_passed"] = ok;
    m.extra()["checks"] = checks;
    return ok ? 0 : 1;
  });
}

}  // namespace cli
