// cqed: simulate, sweep, verify and diagnose the two-atom cavity protocol.
//
//   cqed simulate --variant qutrit --out qutrit.csv
//   cqed sweep --config kappa.cfg --sweep-steps 50
//   cqed verify
//   cqed diagnose --kappa 0.003467 --gamma 0.004667

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cqed/commands.hpp"

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Registers `--flag` for each config key in `keys`; values are queued so the
/// config file can be applied first.
void add_overrides(CLI::App& cmd, Overrides& queue, std::initializer_list<std::string> keys) {
  for (const auto& key : keys) {
    std::string flag = "--" + key;
    for (char& c : flag) {
      if (c == '_') c = '-';
    }
    cmd.add_option_function<std::string>(
        flag, [&queue, key](const std::string& v) { queue.emplace_back(key, v); },
        "override config key '" + key + "'");
  }
}

void add_set_option(CLI::App& cmd, Overrides& queue) {
  cmd.add_option_function<std::vector<std::string>>(
      "--set",
      [&queue](const std::vector<std::string>& items) {
        for (const auto& item : items) {
          const auto eq = item.find('=');
          if (eq == std::string::npos) {
            throw CLI::ValidationError("--set", "expected key=value, got '" + item + "'");
          }
          queue.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        }
      },
      "override any config key (key=value, repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = cqed::cli;

  CLI::App app{"Two-atom bimodal-cavity entanglement protocol simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  Overrides overrides;

  const std::initializer_list<std::string> protocol_keys = {
      "variant", "model", "delta", "kappa", "gamma", "g_b", "n_max", "samples",
      "tolerance", "delay_fraction", "omega_a", "omega_b", "clock_offset"};

  auto* simulate = app.add_subcommand("simulate", "run the protocol and write a trajectory CSV");
  auto* sweep = app.add_subcommand("sweep", "sweep one parameter and write a P/F table");
  auto* diagnose = app.add_subcommand("diagnose", "print effective rates and cooperativity");
  for (auto* cmd : {simulate, sweep, diagnose}) {
    cmd->add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
    add_overrides(*cmd, overrides, protocol_keys);
    add_set_option(*cmd, overrides);
  }
  for (auto* cmd : {simulate, sweep}) {
    cmd->add_option("--out", out_path, "output CSV path (plot script written alongside)");
  }
  add_overrides(*sweep, overrides,
                {"sweep_parameter", "sweep_min", "sweep_max", "sweep_steps", "threads"});

  cqed::VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "closed-form vs numerical self checks");
  verify->add_option("--tolerance", verify_options.tolerance,
                     "oracle agreement threshold")->check(CLI::PositiveNumber);
  verify->add_option("--draws", verify_options.draws, "random parameter draws")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_options.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitConfig;
  }

  if (verify->parsed()) return cli::cmd_verify(verify_options, std::cout);

  cqed::RunConfig config;
  try {
    if (!config_path.empty()) config = cqed::load_config_file(config_path);
    for (const auto& [key, value] : overrides) {
      cqed::apply_setting(config, key, value, "command line");
    }
    if (!out_path.empty()) config.out = out_path;
  } catch (const cqed::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitConfig;
  }

  if (simulate->parsed()) return cli::cmd_simulate(config, std::cout, std::cerr);
  if (sweep->parsed()) return cli::cmd_sweep(config, std::cout, std::cerr);
  return cli::cmd_diagnose(config, std::cout, std::cerr);
}
