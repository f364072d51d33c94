#pragma once

// Experiment dispatch. run_experiment() is pure: it returns the file
// contents instead of writing them, so tests can compare runs directly;
// write_outputs() puts them on disk next to the manifest.

#include <exception>
#include <string>
#include <vector>

#include "rigged_cli/config.hpp"

namespace rigged::cli {

struct OutputFile {
  std::string name;  ///< file name inside output.dir
  std::string content;
};

struct RunResult {
  std::string experiment;
  std::vector<OutputFile> files;
  /// JSON object of headline quantities (pole, fit residuals, verdicts).
  std::string derived_json;
};

/// Validates `config` and runs its experiment. Throws ConfigInvalid or the
/// module error that stopped the run.
RunResult run_experiment(const Config& config);

/// Manifest recording the tool version, config hash, effective config,
/// every output (size and FNV-1a hash) and the derived quantities.
/// Contains no timestamps, so identical runs give identical manifests.
std::string manifest_json(const Config& config, const RunResult& result);

/// Writes every output plus `<prefix>manifest.json` into output.dir,
/// creating it if needed. Returns the written paths.
std::vector<std::string> write_outputs(const Config& config, const RunResult& result);

/// 0 success, 2 configuration, 3 numerical failure, 4 domain violation.
int exit_code(const std::exception& e);

}  // namespace rigged::cli
