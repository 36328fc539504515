#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ifs.hpp"
#include "rational.hpp"

namespace fracsum {

enum class Task { Attractor, Sumset, Thickness, VerifyThm71, VerifyEx73, LemmaCheck, Thm12Probe };

const char* task_name(Task t) noexcept;

// Numeric parameters. Which keys a task accepts is fixed per task; anything
// else is rejected at load time.
struct Params {
  std::optional<int> depth;
  std::optional<std::uint64_t> n;
  std::optional<ExactReal> delta;
  std::optional<ExactReal> c;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> max_bytes;
  std::optional<bool> force;
  std::optional<bool> dedup;
  std::optional<int> trials;
  std::optional<int> samples;
  std::optional<std::vector<int>> dims;
  std::optional<int> radii_per_decade;
  std::optional<std::uint64_t> sampled_centers;
  std::optional<int> witness_trials;
  std::optional<std::int64_t> max_cells_per_axis;
};

struct OutputSpec {
  std::filesystem::path dir = "out";
  bool points_csv = true;
  bool pbm = true;
};

struct ExperimentConfig {
  Task task = Task::Attractor;
  std::optional<Ifs> ifs;
  Params params;
  OutputSpec output;
  nlohmann::ordered_json source;  // the parsed document, echoed into results
};

/// Parses and validates a config document. Throws ConfigInvalid with the
/// line and column for syntax errors and the field path for schema errors.
ExperimentConfig parse_config(const std::string& text);

/// Reads and parses; IoError when the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace fracsum
