#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bridge/errors.hpp"
#include "bridge/parallel.hpp"
#include "commands.hpp"
#include "output.hpp"

namespace {

// BRIDGE_THREADS wins over --threads; 0 means all available cores.
unsigned pick_threads(unsigned flag) {
  if (const char* env = std::getenv("BRIDGE_THREADS"); env && *env) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v > 4096) throw cli::UsageError(std::string("bad BRIDGE_THREADS value: ") + env);
    flag = static_cast<unsigned>(v);
  }
  return bridge::resolve_threads(flag);
}

void add_common(CLI::App* sub, cli::Common& c, unsigned& threads) {
  sub->add_option("--out", c.out, "output directory")->required();
  sub->add_flag("--force", c.force, "overwrite existing artifacts");
  sub->add_option("--threads", threads, "worker threads (0 = all cores; BRIDGE_THREADS overrides)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unbounded liquid bridges: profiles, T(sigma), variation sweeps"};
  app.require_subcommand(1);

  cli::Common common;
  unsigned threads = 0;
  common.argv.assign(argv, argv + argc);

  cli::ProfileOptions po;
  auto* profile = app.add_subcommand("profile", "solve one bridge and draw its generating curve");
  profile->add_option("--sigma", po.sigma, "radius of the vertical point")->required()->check(CLI::PositiveNumber);
  profile->add_option("--b", po.b, "fixed outer radius (skips the truncation loop)")->check(CLI::PositiveNumber);
  profile->add_option("--psi-b", po.psi_b, "inclination at the outer radius")->check(CLI::Range(-3.2, 3.2));
  profile->add_option("--kappa", po.kappa, "capillary constant")->check(CLI::PositiveNumber);
  add_common(profile, common, threads);

  cli::SweepOptions so;
  auto* sweep = app.add_subcommand("sweep", "tabulate T(sigma) on a Chebyshev grid");
  sweep->add_option("--sigma-min", so.sigma_min, "left end of the sigma interval")->capture_default_str();
  sweep->add_option("--sigma-max", so.sigma_max, "right end of the sigma interval")->capture_default_str();
  sweep->add_option("--num", so.num, "number of Chebyshev points")->capture_default_str();
  add_common(sweep, common, threads);

  std::filesystem::path rdot_table;
  auto* rdot = app.add_subcommand("rdot", "variation sweep over a T table");
  rdot->add_option("--table", rdot_table, "T table CSV with a Tprime column")->required();
  add_common(rdot, common, threads);

  std::filesystem::path ext_table;
  bridge::AsymptoticConfig acfg;
  auto* extend = app.add_subcommand("extend", "splice the small-sigma asymptotics onto a T table");
  extend->add_option("--table", ext_table, "computed T table CSV")->required();
  extend->add_option("--sigma-lo", acfg.sigma_lo, "smallest sigma of the extension")->capture_default_str();
  extend->add_option("--sigma-hi-asym", acfg.sigma_hi_asym, "right end of the asymptotic grid")
      ->capture_default_str();
  extend->add_option("--n-points", acfg.n_points, "points on each Chebyshev grid")->capture_default_str();
  extend->add_option("--n-keep", acfg.n_keep, "asymptotic knots kept (0 = passthrough)")->capture_default_str();
  extend->add_option("--splice-hi", acfg.splice_hi, "right end of the spliced range")->capture_default_str();
  add_common(extend, common, threads);

  cli::VerifyOptions vo;
  std::filesystem::path verify_table;
  auto* verify = app.add_subcommand("verify", "run the verification checks");
  auto* vs = verify->add_option("--sigma", vo.sigmas, "one or more sigma values");
  auto* vt = verify->add_option("--table", verify_table, "T table CSV");
  vs->excludes(vt);
  add_common(verify, common, threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    common.threads = pick_threads(threads);
    if (*profile) return cli::cmd_profile(po, common);
    if (*sweep) return cli::cmd_sweep(so, common);
    if (*rdot) return cli::cmd_rdot(rdot_table, common);
    if (*extend) return cli::cmd_extend(ext_table, acfg, common);
    if (*vt) vo.table = verify_table;
    return cli::cmd_verify(vo, common);
  } catch (const cli::UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const bridge::InvalidArgument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
