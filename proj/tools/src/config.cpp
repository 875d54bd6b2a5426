#include <algorithm>
#include <cmath>

#include "decoh/cli/app.hpp"
#include "decoh/error.hpp"
#include "decoh/parallel.hpp"
#include "decoh/qed_rates.hpp"

namespace decoh::cli {

namespace {

bool has(const Json& doc, const char* key) { return doc.contains(key); }

std::size_t get_count(const Json& doc, const char* key, const std::string& context) {
  const Json& v = doc.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    fail(ErrorCode::ConfigError, context + ": '" + key + "' must be an integer");
  }
  const auto n = v.get<long long>();
  if (n < 1) fail(ErrorCode::ConfigError, context + ": '" + key + "' must be positive");
  return static_cast<std::size_t>(n);
}

std::string get_string(const Json& doc, const char* key, const std::string& context) {
  const Json& v = doc.at(key);
  if (!v.is_string()) fail(ErrorCode::ConfigError, context + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

double positive(double x, const char* key) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    fail(ErrorCode::ConfigError, std::string("config: '") + key + "' must be positive");
  }
  return x;
}

void check_separations(const std::vector<double>& grid) {
  if (grid.empty()) fail(ErrorCode::ConfigError, "config: separation grid is empty");
  for (double a : grid) {
    if (a < 0.0) fail(ErrorCode::NegativeSeparation, "config: separations must be >= 0");
  }
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::Rates: return "rates";
    case Command::Scan: return "scan";
    case Command::Mismatch: return "mismatch";
    case Command::KernelDemo: return "kernel-demo";
    case Command::Crosscheck: return "crosscheck";
  }
  return "";
}

Command command_from_name(const std::string& name) {
  for (Command c : {Command::Rates, Command::Scan, Command::Mismatch, Command::KernelDemo,
                    Command::Crosscheck}) {
    if (command_name(c) == name) return c;
  }
  fail(ErrorCode::ConfigError, "unknown command '" + name + "'");
}

RunConfig default_config(Command command) {
  RunConfig c;
  c.command = command;
  c.threads = default_threads();
  switch (command) {
    case Command::Rates:
      c.separations = {0.25};
      c.duration = 200.0;
      c.format = Format::Json;
      break;
    case Command::Scan:
      c.separations = linear_grid(0.0, 3.0, 0.01);
      break;
    case Command::Mismatch:
      c.separations = {0.0};
      c.d_omega_dt = linear_grid(0.0, 20.0, 0.5);
      break;
    case Command::KernelDemo:
      c.duration = 200.0;
      break;
    case Command::Crosscheck:
      c.separations = {0.0, 0.25, 0.5, 0.715, 1.5, 5.0};
      c.duration = 200.0;
      c.format = Format::Json;
      break;
  }
  return c;
}

std::vector<double> grid_from_json(const Json& j, const std::string& context) {
  if (j.is_array()) {
    std::vector<double> out;
    for (const Json& v : j) {
      if (!v.is_number()) fail(ErrorCode::ConfigError, context + ": grid entries must be numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  check_keys(j, {"start", "stop", "step"}, context);
  const double step = get_number(j, "step", context);
  if (!(step > 0.0)) fail(ErrorCode::ConfigError, context + ": step must be positive");
  return linear_grid(get_number(j, "start", context), get_number(j, "stop", context), step);
}

RunConfig config_from_json(Command command, const Json& doc) {
  RunConfig c = default_config(command);
  const std::string ctx = "config";
  switch (command) {
    case Command::Rates:
      check_keys(doc, {"command", "atom", "separation", "route", "duration", "schedule_points",
                       "overlap_duration", "cutoff_factor", "quadrature", "threads", "output",
                       "format"},
                 ctx);
      break;
    case Command::Scan:
      check_keys(doc, {"command", "atom", "separations", "threads", "output", "format"}, ctx);
      break;
    case Command::Mismatch:
      check_keys(doc, {"command", "atom", "separation", "duration", "d_omega_dt", "mode",
                       "cutoff_factor", "quadrature", "threads", "output", "format"},
                 ctx);
      break;
    case Command::KernelDemo:
      check_keys(doc, {"command", "tau_c", "omega", "duration", "schedule_points", "quadrature",
                       "threads", "output", "format"},
                 ctx);
      break;
    case Command::Crosscheck:
      check_keys(doc, {"command", "atom", "separations", "duration", "schedule_points",
                       "overlap_duration", "cutoff_factor", "quadrature", "tolerance", "threads",
                       "output", "format"},
                 ctx);
      break;
  }

  if (has(doc, "command") && get_string(doc, "command", ctx) != command_name(command)) {
    fail(ErrorCode::ConfigError, "config: 'command' does not match '" + command_name(command) + "'");
  }
  if (has(doc, "atom")) c.atom = atom_from_json(doc.at("atom"));
  if (has(doc, "separation")) c.separations = {get_number(doc, "separation", ctx)};
  if (has(doc, "separations")) c.separations = grid_from_json(doc.at("separations"), "separations");
  if (has(doc, "duration")) c.duration = positive(get_number(doc, "duration", ctx), "duration");
  if (has(doc, "schedule_points")) c.schedule_points = get_count(doc, "schedule_points", ctx);
  if (has(doc, "overlap_duration")) {
    c.overlap_duration = positive(get_number(doc, "overlap_duration", ctx), "overlap_duration");
  }
  if (has(doc, "cutoff_factor")) {
    c.cutoff_factor = positive(get_number(doc, "cutoff_factor", ctx), "cutoff_factor");
  }
  if (has(doc, "quadrature")) {
    const unsigned threads = c.quad.threads;
    c.quad = quadrature_from_json(doc.at("quadrature"));
    if (!doc.at("quadrature").contains("threads")) c.quad.threads = threads;
  }
  if (has(doc, "tolerance")) c.tolerance = positive(get_number(doc, "tolerance", ctx), "tolerance");
  if (has(doc, "threads")) c.threads = static_cast<unsigned>(get_count(doc, "threads", ctx));
  if (has(doc, "output")) c.output = get_string(doc, "output", ctx);
  if (has(doc, "format")) {
    const std::string f = get_string(doc, "format", ctx);
    if (f == "csv") {
      c.format = Format::Csv;
    } else if (f == "json") {
      c.format = Format::Json;
    } else {
      fail(ErrorCode::ConfigError, "config: format must be csv or json");
    }
  }
  if (has(doc, "route")) {
    c.route = get_string(doc, "route", ctx);
    if (c.route != "closed" && c.route != "ctp" && c.route != "overlap") {
      fail(ErrorCode::ConfigError, "config: route must be closed, ctp or overlap");
    }
  }
  if (has(doc, "d_omega_dt")) c.d_omega_dt = grid_from_json(doc.at("d_omega_dt"), "d_omega_dt");
  if (has(doc, "mode")) {
    const std::string m = get_string(doc, "mode", ctx);
    if (m == "extended") {
      c.mismatch_mode = MismatchMode::Extended;
    } else if (m == "finite") {
      c.mismatch_mode = MismatchMode::FiniteLimits;
    } else {
      fail(ErrorCode::ConfigError, "config: mode must be extended or finite");
    }
  }
  if (has(doc, "tau_c")) c.tau_c = positive(get_number(doc, "tau_c", ctx), "tau_c");
  if (has(doc, "omega")) c.kernel_frequency = get_number(doc, "omega", ctx);

  if (command != Command::KernelDemo) check_separations(c.separations);
  if (command == Command::Mismatch && c.d_omega_dt.empty()) {
    fail(ErrorCode::ConfigError, "config: d_omega_dt grid is empty");
  }
  return c;
}

}  // namespace decoh::cli
