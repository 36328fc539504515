#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace fracsum {

struct RunRequest {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out_dir;  // overrides output.dir
  unsigned workers = 0;
  std::optional<std::uint64_t> seed;             // overrides params.seed
  bool force = false;
};

struct RunResult {
  int exit_code = 0;  // 0 pass/success, 1 fail, 2 configuration error
  nlohmann::ordered_json record;
  std::string report;
  std::filesystem::path out_dir;
  std::vector<std::string> files;  // relative to out_dir
};

/// Runs one task and writes report.txt, results.json and the task's
/// artifacts. Configuration problems throw ConfigInvalid (or IoError for an
/// unreadable file); task failures are reported in the result with exit 1.
RunResult run_experiment(const RunRequest& req);
RunResult run_config(const ExperimentConfig& cfg, const RunRequest& req);

/// Human-readable rendering of a results record; every number printed is
/// taken from the record.
std::string render_report(const nlohmann::ordered_json& record);

/// One point per line, coordinates comma-separated with 17 significant digits.
std::string points_csv(const std::vector<Point>& pts);

}  // namespace fracsum
