#include "output.hpp"

#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "bridge/errors.hpp"

namespace cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string utc(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// JSON has no NaN; unknown numbers become null.
ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

OutputDir::OutputDir(fs::path root, bool force) : root_(std::move(root)), force_(force) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw UsageError("cannot create output directory " + root_.string() + ": " + ec.message());
  if (!force_ && fs::exists(root_ / "manifest.json")) {
    throw UsageError(root_.string() + " already holds a run (manifest.json); pass --force to overwrite");
  }
}

void OutputDir::write(const std::string& name, const std::string& contents) {
  const fs::path p = root_ / name;
  if (!force_ && fs::exists(p)) throw UsageError("refusing to overwrite " + p.string() + " without --force");
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw UsageError("cannot open " + p.string() + " for writing");
  os << contents;
  if (!os) throw UsageError("write failed: " + p.string());
  artifacts_.push_back(name);
}

void OutputDir::write_table(const std::string& name, const bridge::TTable& table) {
  std::ostringstream os;
  bridge::write_ttable_csv(os, table);
  write(name, os.str());
}

Manifest::Manifest(std::string command, std::vector<std::string> argv, unsigned threads)
    : start_(std::chrono::system_clock::now()), tick_(std::chrono::steady_clock::now()) {
  doc_["schema"] = "bridge-run-manifest/1";
  doc_["command"] = std::move(command);
  doc_["argv"] = std::move(argv);
  doc_["threads"] = threads;
  doc_["started_utc"] = utc(start_);
}

void Manifest::solver(const bridge::SolverConfig& c) {
  doc_["solver_config"] = {
      {"tol_abs", c.tol_abs},         {"tol_newton", c.tol_newton},
      {"tol_grid", c.tol_grid},       {"n_init", c.n_init},
      {"n_max", c.n_max},             {"grid_growth", c.grid_growth},
      {"max_newton_iter", c.max_newton_iter}, {"max_halvings", c.max_halvings},
      {"b_init_floor", c.b_init_floor}, {"b_step", c.b_step},
      {"b_cap", c.b_cap},             {"kappa", c.kappa},
      {"ode_tol", c.ode_tol},         {"dense_samples", c.dense_samples},
  };
}

void Manifest::asymptotic(const bridge::AsymptoticConfig& c) {
  doc_["asymptotic_config"] = {
      {"sigma_lo", c.sigma_lo}, {"sigma_hi_asym", c.sigma_hi_asym}, {"n_points", c.n_points},
      {"n_keep", c.n_keep},     {"splice_hi", c.splice_hi},
  };
}

void Manifest::rows(const bridge::TTable& table) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : table.samples) {
    ordered_json r;
    r["sigma"] = s.sigma;
    r["converged"] = s.converged;
    r["provenance"] = std::string(bridge::to_string(s.provenance));
    r["b_final"] = number(s.b_final);
    r["n_final"] = s.n_final;
    r["newton_residual"] = number(s.newton_residual);
    if (!s.error.empty()) r["error"] = s.error;
    arr.push_back(std::move(r));
  }
  doc_["rows"] = std::move(arr);
}

void Manifest::finish(OutputDir& out, int exit_code) {
  doc_["finished_utc"] = utc(std::chrono::system_clock::now());
  doc_["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - tick_).count();
  doc_["exit_code"] = exit_code;
  if (!extra_.empty()) doc_["results"] = extra_;
  doc_["artifacts"] = out.artifacts();
  out.write("manifest.json", doc_.dump(2) + "\n");
}

bridge::TTable read_table(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot read table " + path.string());
  try {
    return bridge::read_ttable_csv(is);
  } catch (const bridge::ParseError& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

}  // namespace cli
