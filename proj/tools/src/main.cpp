// rigged: run resonance / rigged-Hilbert-space experiments from a config file.
//
//   rigged run <config> [--set key=value]... [--print-config]
//   rigged validate <config> [--set key=value]...
//   rigged print-schema
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 semigroup domain violation.

#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "rigged_cli/config.hpp"
#include "rigged_cli/experiments.hpp"

namespace {

rigged::cli::Config effective_config(const std::string& path, const std::vector<std::string>& overrides,
                                     bool allow_negative_time) {
  rigged::cli::Config c = rigged::cli::Config::load(path);
  for (const auto& o : overrides) c.set(o);
  if (allow_negative_time) c.set("time.allow_negative", "true");
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Friedrichs-model resonances, Gamow semigroups and rigged Hilbert space diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  bool print_config = false;
  bool allow_negative_time = false;

  CLI::App* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "config file (key = value lines)")->required();
  run->add_option("--set", overrides, "override a config value, key=value (repeatable)");
  run->add_flag("--print-config", print_config, "echo the effective config before running");
  run->add_flag("--allow-negative-time", allow_negative_time, "permit t < 0 in exact evolution");

  CLI::App* validate = app.add_subcommand("validate", "check a config file against the schema");
  validate->add_option("config", config_path, "config file")->required();
  validate->add_option("--set", overrides, "override a config value, key=value (repeatable)");

  app.add_subcommand("print-schema", "print every config key with type, default and help as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("print-schema")) {
      std::cout << rigged::cli::schema_json();
      return 0;
    }
    if (app.got_subcommand("validate")) {
      const auto c = effective_config(config_path, overrides, false);
      std::cout << "config ok (hash " << c.hash() << ")\n";
      return 0;
    }
    const auto c = effective_config(config_path, overrides, allow_negative_time);
    if (print_config) std::cout << c.effective();
    const auto result = rigged::cli::run_experiment(c);
    for (const auto& p : rigged::cli::write_outputs(c, result)) std::cout << "wrote " << p << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rigged::cli::exit_code(e);
  }
}
