// Flat key=value run configuration shared by the CLI subcommands.
//
//   # comment
//   variant = qutrit
//   kappa   = 0.003467
//
// All physical values are in units of gA.
#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/sweep.hpp"

namespace cqed {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ProtocolConfig protocol;

  // Schedule overrides; any of them turns the derived schedule into an override.
  std::optional<double> omega_a;
  std::optional<double> omega_b;
  std::optional<double> t1;
  std::optional<double> delay;
  std::optional<double> stage_b_duration;

  SweepParameter sweep_parameter = SweepParameter::Kappa;
  double sweep_min = 0.0;
  double sweep_max = 0.2;
  int sweep_steps = 50;
  unsigned threads = 0;

  std::string out;

  /// ProtocolConfig with schedule overrides folded in.
  ProtocolConfig protocol_config() const;
  SweepSpec sweep_spec() const;
};

/// Keys accepted by apply_setting, in documentation order.
const std::vector<std::string_view>& config_keys();

/// Sets one key. `where` prefixes error messages (e.g. "run.cfg:12").
void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   std::string_view where);

/// Parses `key = value` lines; '#' starts a comment. Unknown keys and
/// malformed lines raise ConfigError naming the source and line number.
void parse_config(std::istream& in, std::string_view source, RunConfig& config);
RunConfig load_config_file(const std::string& path);

}  // namespace cqed
