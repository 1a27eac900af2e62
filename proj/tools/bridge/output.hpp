#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bridge/asymptotics.hpp"
#include "bridge/config.hpp"
#include "bridge/ttable.hpp"

namespace cli {

/// Bad flags, unreadable input, refused overwrite: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Artifact sink rooted at --out.  Refuses to replace an existing file
/// unless constructed with force.
class OutputDir {
 public:
  OutputDir(std::filesystem::path root, bool force);

  void write(const std::string& name, const std::string& contents);
  void write_table(const std::string& name, const bridge::TTable& table);

  [[nodiscard]] const std::vector<std::string>& artifacts() const { return artifacts_; }
  [[nodiscard]] const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  bool force_;
  std::vector<std::string> artifacts_;
};

/// Accumulates the run description written to manifest.json.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv, unsigned threads);

  void solver(const bridge::SolverConfig& cfg);
  void asymptotic(const bridge::AsymptoticConfig& cfg);
  void rows(const bridge::TTable& table);
  nlohmann::ordered_json& extra() { return extra_; }

  /// Lists the artifacts of `out` and writes manifest.json into it.
  void finish(OutputDir& out, int exit_code);

 private:
  nlohmann::ordered_json doc_;
  nlohmann::ordered_json extra_ = nlohmann::ordered_json::object();
  std::chrono::system_clock::time_point start_;
  std::chrono::steady_clock::time_point tick_;
};

[[nodiscard]] bridge::TTable read_table(const std::filesystem::path& path);

}  // namespace cli
