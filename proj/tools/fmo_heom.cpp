// fmo-heom: command line front end.
//
//   fmo-heom <simulate|converge|sudden-death|oracle|fret-report>
//            [--config FILE] [--set key=value ...] [--out DIR]
//
// Failures print a single line `error: <category>: <detail>` on stderr and
// exit nonzero (2 for usage and configuration errors, 1 otherwise).

#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <string>

namespace {

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

int fail(const std::string& category, const std::string& detail, int code) {
  std::cerr << "error: " << category << ": " << one_line(detail) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HEOM dynamics and pair correlations of the FMO monomer"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";

  using Command = fmo::cli::Paths (*)(const fmo::cli::RunConfig&, const std::filesystem::path&);
  const std::vector<std::pair<std::string, std::pair<std::string, Command>>> commands = {
      {"simulate", {"Propagate and write populations and pair measures", fmo::cli::simulate}},
      {"converge", {"Trace-distance convergence in the truncation level", fmo::cli::converge}},
      {"sudden-death", {"Nonlocality sudden-death report per pair", fmo::cli::sudden_death}},
      {"oracle", {"Short-time predictions and dominant pairs", fmo::cli::oracle}},
      {"fret-report", {"t = 0 exciton decomposition of a FRET state", fmo::cli::fret_report}},
  };
  for (const auto& [name, info] : commands) {
    CLI::App* sub = app.add_subcommand(name, info.first);
    sub->add_option("--config", config_path, "Config file (dotted key = value lines)");
    sub->add_option("--set", overrides, "Override one key, key=value")->take_all();
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  fmo::cli::RunConfig config;
  Command command = nullptr;
  for (const auto& [name, info] : commands) {
    if (app.got_subcommand(name)) command = info.second;
  }
  try {
    if (!config_path.empty()) fmo::cli::apply_file(config, config_path);
    for (const auto& assignment : overrides) fmo::cli::apply_override(config, assignment);
    config.validate();
  } catch (const fmo::cli::ConfigError& e) {
    return fail("config", e.what(), 2);
  } catch (const std::exception& e) {
    return fail("config", e.what(), 2);
  }

  try {
    for (const auto& path : command(config, out_dir)) std::cout << path.string() << "\n";
  } catch (const fmo::cli::ConfigError& e) {
    return fail("config", e.what(), 2);
  } catch (const std::exception& e) {
    return fail("runtime", e.what(), 1);
  }
  return 0;
}
