#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lcap/channel.hpp"
#include "lcap/sweep.hpp"

namespace lcap::cli {

enum class Command { compute, sweep, figure, optimize, validate };
enum class Format { csv, json };

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericError = 3,
  kNoConvergence = 4,
  kValidationFailed = 5,
};

struct OptimizeSection {
  std::vector<sweep::Param> free;
  std::vector<sweep::Bounds> bounds;  // parallel to free
  std::size_t max_iterations = 2000;
};

struct RunConfig {
  Command command = Command::compute;
  sweep::EvalPoint point;
  std::vector<sweep::Axis> axes;
  std::optional<std::string> figure;
  std::size_t figure_points = 41;
  OptimizeSection optimize;
  std::optional<std::string> output_path;
  Format format = Format::csv;

  friend bool operator==(const RunConfig&, const RunConfig&);
};

// Thrown for anything that maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

// Checks the parameters the chosen command depends on.
void validate_config(const RunConfig& config);

// Default search interval of each parameter for optimize.
sweep::Bounds default_bounds(sweep::Param p);

std::string format_sig6(double v);    // 6 significant digits
std::string format_fixed6(double v);  // 6 decimals

std::string sweep_csv(const sweep::SweepResult& result);
nlohmann::json sweep_json(const sweep::SweepResult& result);

int run_compute(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_optimize(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Diagnostics for an arbitrary channel; exit 0 on pass, 5 otherwise.
int report_channel_validation(const ChannelMap& channel, std::ostream& out);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcap::cli
