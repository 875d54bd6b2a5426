#pragma once

// Configuration and command dispatch for the `decoh` tool. Kept in a library
// so tests can drive commands in-process.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "decoh/json_io.hpp"
#include "decoh/mismatch.hpp"
#include "decoh/types.hpp"

namespace decoh::cli {

enum class Command { Rates, Scan, Mismatch, KernelDemo, Crosscheck };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitCrosscheck = 4;

std::string command_name(Command c);
Command command_from_name(const std::string& name);

struct RunConfig {
  Command command = Command::Scan;
  AtomModel atom = two_level_atom();
  /// Well separations in units of channel 0's wavelength.
  std::vector<double> separations;
  /// Longest monitoring time of the CTP schedule, or the mismatch window.
  std::optional<double> duration;
  std::size_t schedule_points = 8;
  double overlap_duration = 400.0;
  /// Field cutoff in units of the largest Bohr frequency.
  double cutoff_factor = 20.0;
  QuadratureSpec quad;
  /// crosscheck: allowed |Gamma_route - Gamma_closed| / gamma.
  double tolerance = 2e-2;
  unsigned threads = 1;
  std::string output;  // empty writes to the output stream
  Format format = Format::Csv;
  std::string route = "closed";
  std::vector<double> d_omega_dt;
  MismatchMode mismatch_mode = MismatchMode::Extended;
  double tau_c = 1.0;
  double kernel_frequency = 0.5;
};

RunConfig default_config(Command command);

/// Applies a config document on top of the command's defaults. Unknown keys
/// and keys that do not belong to the command raise ConfigError.
RunConfig config_from_json(Command command, const Json& doc);

/// Number list, or {"start", "stop", "step"} expanded inclusively.
std::vector<double> grid_from_json(const Json& j, const std::string& context);

struct RouteRates {
  double a_over_lambda = 0.0;
  RateReport closed;
  RateReport ctp;
  RateReport overlap;
  double deviation_ctp = 0.0;
  double deviation_overlap = 0.0;
  double deviation_ctp_overlap = 0.0;
};

struct CrosscheckReport {
  double gamma = 0.0;
  double tolerance = 0.0;
  std::vector<RouteRates> rows;
  double max_deviation = 0.0;
  bool passed = true;
};

RateReport ctp_route(const RunConfig& config, double a_over_lambda);
RateReport overlap_route(const RunConfig& config, double a_over_lambda);
CrosscheckReport crosscheck(const RunConfig& config);

/// Runs one command and returns the document it writes. Sets `exit_code` to
/// kExitCrosscheck when a crosscheck breaches its tolerance.
std::string execute(const RunConfig& config, int& exit_code);

/// Full command line without the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace decoh::cli
