// Subcommand bodies for the `cqed` tool. Each returns the process exit code.
#pragma once

#include <iosfwd>
#include <string>

#include "cqed/config.hpp"
#include "cqed/verification.hpp"

namespace cqed::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitConfig = 2;

inline constexpr const char* kDefaultTrajectoryPath = "trajectory.csv";
inline constexpr const char* kDefaultSweepPath = "sweep.csv";

/// `trajectory.csv` -> `trajectory.gp`.
std::string plot_script_path(const std::string& csv_path);

void write_summary(std::ostream& out, const ProtocolConfig& config, const SimResult& result);

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out);
int cmd_diagnose(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cqed::cli
