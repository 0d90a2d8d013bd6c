#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace psiac::cli {

enum class Pipeline { Symbolic, Legacy, Both };

struct ExperimentConfig {
  int example = 2;
  std::vector<int> degrees;
  std::vector<int> meshes;
  std::vector<std::string> filters;  ///< upper-case family names
  Pipeline pipeline = Pipeline::Symbolic;
  int points_per_cell = 20;
  std::filesystem::path output_dir;
  double cfl = 0.1;
};

/// Throws ConfigError naming the offending field (and line, for syntax).
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& file);

/// Writes the per-run CSVs, summary.csv, summary.json and filter dumps.
/// Returns the paths written, in a fixed order.
std::vector<std::filesystem::path> run(const ExperimentConfig& config, unsigned threads);

}  // namespace psiac::cli
