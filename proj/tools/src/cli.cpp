#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "decoh/cli/app.hpp"
#include "decoh/error.hpp"

namespace decoh::cli {

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<double> tolerance;
  std::optional<unsigned> threads;
};

Json read_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorCode::ConfigError, "malformed config '" + path + "': " + e.what());
  }
}

RunConfig resolve(Command command, const Flags& flags) {
  RunConfig c = flags.config ? config_from_json(command, read_config(*flags.config))
                             : default_config(command);
  if (flags.out) c.output = *flags.out;
  if (flags.format) c.format = *flags.format == "json" ? Format::Json : Format::Csv;
  if (flags.threads) c.threads = *flags.threads;
  if (flags.tolerance) {
    if (!(*flags.tolerance > 0.0)) fail(ErrorCode::ConfigError, "--tolerance must be positive");
    if (command == Command::Crosscheck) {
      c.tolerance = *flags.tolerance;
    } else {
      c.quad.rel_tolerance = *flags.tolerance;
      c.quad.validate();
    }
  }
  return c;
}

void write_output(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorCode::ConfigError, "cannot write '" + c.output + "'");
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decoherence rates of an atom delocalized over two wells"};
  app.name("decoh");
  app.require_subcommand(1, 1);

  Flags flags;
  const std::vector<std::pair<Command, const char*>> commands = {
      {Command::Rates, "Rates at one separation by the closed form, CTP or overlap route"},
      {Command::Scan, "Closed-form rates over a separation grid"},
      {Command::Mismatch, "Nonlocal rate against the frequency mismatch times duration"},
      {Command::KernelDemo, "CTP functionals for the exponential test kernel"},
      {Command::Crosscheck, "Compare the three routes; exit 4 on a tolerance breach"},
  };
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(command_name(cmd), help);
    sub->add_option("--config", flags.config, "JSON run configuration");
    sub->add_option("--out", flags.out, "Output file (default: standard output)");
    sub->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tolerance", flags.tolerance,
                    "crosscheck: deviation gate; otherwise per-integral relative tolerance");
    sub->add_option("--threads", flags.threads, "Worker count (default: DECOH_THREADS or 1)")
        ->check(CLI::PositiveNumber);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const Command command = command_from_name(app.get_subcommands().front()->get_name());
    const RunConfig config = resolve(command, flags);
    int exit_code = kExitOk;
    const std::string text = execute(config, exit_code);
    write_output(config, text, out);
    if (exit_code == kExitCrosscheck) err << "decoh: crosscheck tolerance exceeded\n";
    return exit_code;
  } catch (const Error& e) {
    err << "decoh: " << to_string(e.code()) << ": " << e.what() << "\n";
    return is_numerical(e.code()) ? kExitNumerical : kExitConfig;
  }
}

}  // namespace decoh::cli
