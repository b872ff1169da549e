#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinprobe/model.hpp"

namespace spinprobe::cli {

enum class ExitStatus : int { Success = 0, NumericalFailure = 1, ConfigurationError = 2 };

/// Invalid or incomplete run configuration; `field` names the offending option.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error("--" + field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string command;
  std::vector<double> thetas{0.0};
  int length = 12;
  Boundary boundary = Boundary::Open;
  std::vector<double> kpd_grid;
  std::vector<double> alpha_grid{0.0};
  double kappa = 1.0;
  double sigma = 0.0;
  double input_variance = 0.5;
  double u0 = 1.0;
  double u2 = 0.0;
  double t_hop = 0.1;
  std::string output = "-";
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 0;
  int threads = 1;
  bool product_state = false;
};

/// Parses a scalar such as "0.25", "-0.5pi", "pi/3" or "2pi/3".
double parse_value(const std::string& text);

/// Comma-separated values; "a:b:n" expands to n uniform points from a to b inclusive.
std::vector<double> parse_grid(const std::string& text);

/// Command line (program name first) to a validated RunConfig.
RunConfig parse_command_line(const std::vector<std::string>& args);

/// Checks cross-field constraints; throws ConfigError.
void validate(const RunConfig& cfg);

/// Runs one command and writes its table to cfg.output ("-" selects `out`);
/// diagnostics go to `log`.
ExitStatus execute(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Full entry point: parse, validate, execute, map errors to exit statuses.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log);

}  // namespace spinprobe::cli
