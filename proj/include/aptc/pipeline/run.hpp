#pragma once

#include "aptc/evaluation/scoring_session.hpp"
#include "aptc/llm/gateway.hpp"
#include "aptc/prompting/prompt.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aptc::pipeline {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::filesystem::path> architecture_paths;
  std::vector<llm::ProviderConfig> providers;
  std::vector<prompting::Strategy> strategies;
  std::optional<std::filesystem::path> catalog_path;  ///< bundled catalog when unset
  std::filesystem::path output_dir = "runs";
  int parallelism = 4;
  std::size_t shots = prompting::kDefaultShots;
  bool strict_deployment = false;
  bool lenient = false;
  bool include_operations = true;

  /// Throws ConfigError.
  void validate() const;

  /// Relative paths (architectures, catalog, outputDir, fixturesPath) are
  /// resolved against `base_dir`.
  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
  static RunConfig from_file(const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;
};

struct RunOptions {
  /// Transport for live providers; a cpp-httplib transport when null.
  std::shared_ptr<llm::HttpTransport> transport;
  llm::Gateway::Sleeper sleeper;
  /// Overrides RunConfig::parallelism when set.
  std::optional<int> parallelism;
};

struct CellResult {
  std::string case_study;
  std::string model;
  prompting::Strategy strategy = prompting::Strategy::ZeroShot;
  std::filesystem::path dir;  ///< relative to the run directory
  bool ok = false;
  std::string failed_stage;
  std::string error;
  std::size_t aptc_count = 0;
  std::size_t correctness_auto_count = 0;
};

struct RunResult {
  std::filesystem::path run_dir;
  std::string inputs_digest;
  std::vector<CellResult> cells;

  std::size_t failed_cells() const;
};

/// Digest over every input that determines cell contents.
std::string inputs_digest(const RunConfig& config);

/// Executes architecture x provider x strategy cells with bounded
/// parallelism into a fresh run-<digest12>-<n> directory. A failing cell is
/// recorded in the manifest and does not stop the others.
RunResult run_pipeline(const RunConfig& config, const RunOptions& options = {});

/// Every APTC of the successful cells in a run directory, at most one per
/// weakness per cell (the first one naming it), for interactive scoring.
std::vector<evaluation::ScoringItem> collect_scoring_items(const std::filesystem::path& run_dir);

/// File-system safe component for a label ("GPT-5.2" stays, spaces become '_').
std::string path_component(std::string_view label);

}  // namespace aptc::pipeline
