#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bridge/asymptotics.hpp"

namespace cli {

struct Common {
  std::filesystem::path out;
  bool force = false;
  unsigned threads = 0;  // resolved, never 0 by the time a command runs
  std::vector<std::string> argv;
};

struct ProfileOptions {
  double sigma = 1.0;
  std::optional<double> b;
  std::optional<double> psi_b;
  double kappa = 1.0;
};

struct SweepOptions {
  double sigma_min = 0.085;
  double sigma_max = 2.0;
  std::size_t num = 100;
};

struct VerifyOptions {
  std::vector<double> sigmas;
  std::optional<std::filesystem::path> table;
};

int cmd_profile(const ProfileOptions& o, const Common& c);
int cmd_sweep(const SweepOptions& o, const Common& c);
int cmd_rdot(const std::filesystem::path& table, const Common& c);
int cmd_extend(const std::filesystem::path& table, const bridge::AsymptoticConfig& acfg, const Common& c);
int cmd_verify(const VerifyOptions& o, const Common& c);

}  // namespace cli
