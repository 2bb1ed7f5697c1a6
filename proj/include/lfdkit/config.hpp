#pragma once

// Run configuration shared by all CLI commands. Every field is optional in
// the JSON form; missing fields keep the defaults below. Values are validated
// by the owning module's constructors before anything is computed.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lfdkit/engine.hpp"

namespace lfdkit {

enum class OutputFormat { Csv, Json };

std::string_view format_name(OutputFormat f);
OutputFormat parse_format(std::string_view name);

struct RunConfig {
  Thresholds thresholds;
  WindowSchedule schedule;
  OutputFormat output_format = OutputFormat::Csv;
  /// Empty means standard output.
  std::string output_path;
  /// Worker bound for independent entries; 0 = OpenMP default.
  int parallelism = 0;
};

/// Throws ValidationError on unknown keys, wrong types or invalid values.
RunConfig run_config_from_json(const nlohmann::json& j);

/// Throws std::ios_base::failure when the file cannot be read.
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& config);

}  // namespace lfdkit
