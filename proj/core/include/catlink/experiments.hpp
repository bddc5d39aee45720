#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace catlink {

/// Parameter or configuration problem; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run hit its step budget before converging; CLI exit code 3.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::string> params;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 0;

  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;
};

/// Known experiment names, for validation and --help output.
const std::vector<std::string>& experiment_names();

/// Deterministic tabular result of one experiment run.
struct ExperimentResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> warnings;  // diagnostics, e.g. under-truncation
};

/// Computes the experiment without touching the filesystem.
ExperimentResult compute_experiment(const ExperimentConfig& config);

/// Computes and writes the output file (header block echoing the config, then
/// the data). Throws ConfigError / NonConvergence.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Serialization used by run_experiment, exposed for round-trip checks.
std::string render_output(const ExperimentConfig& config, const ExperimentResult& result);

/// Parses the `key=value` header block of an emitted file back into a config.
ExperimentConfig parse_output_header(const std::string& file_contents);

/// Flat key=value config file with '#' comments; returns raw pairs.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Thread budget for trial loops: CATLINK_THREADS caps it, default is the
/// hardware concurrency.
int thread_budget();

}  // namespace catlink
