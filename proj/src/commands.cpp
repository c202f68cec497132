#include "cqed/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>

#include "cqed/csv.hpp"

namespace cqed::cli {

namespace {

namespace fs = std::filesystem;

void line(std::ostream& out, const std::string& key, const std::string& value) {
  out << std::left << std::setw(26) << key << value << '\n';
}

void line(std::ostream& out, const std::string& key, double value) {
  line(out, key, format_number(value));
}

/// Validates the protocol config, reporting problems as config errors.
bool validated(const ProtocolConfig& config, std::ostream& err) {
  try {
    config.validate();
    return true;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << '\n';
    return false;
  }
}

bool write_file(const std::string& path, std::ostream& err, auto&& writer) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  writer(file);
  file.flush();
  if (!file) {
    err << "error: failed writing '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

std::string plot_script_path(const std::string& csv_path) {
  return fs::path(csv_path).replace_extension(".gp").string();
}

void write_summary(std::ostream& out, const ProtocolConfig& config, const SimResult& r) {
  const PhysicalParams p = config.resolved_params();
  line(out, "variant", std::string(to_string(config.variant)));
  line(out, "model", std::string(to_string(config.model)));
  line(out, "delta", p.delta);
  line(out, "omega_a", p.omegaA);
  line(out, "omega_b", p.omegaB);
  line(out, "g_b", p.gB);
  line(out, "kappa", p.kappa);
  line(out, "gamma", p.gamma);
  line(out, "n_max", std::to_string(config.n_max));
  line(out, "schedule", r.schedule_overridden ? "override" : "derived");
  line(out, "t1", r.schedule.t1);
  line(out, "t1_prime", r.schedule.t1_prime());
  line(out, "t2", r.schedule.t2());
  if (!r.large_detuning) line(out, "warning", "delta < 5 max(g, Omega): weak detuning");
  line(out, "P_A", r.stage_a.success_probability);
  line(out, "F_A", r.stage_a.fidelity);
  line(out, "P_B", r.stage_b.success_probability);
  line(out, "F_B", r.stage_b.fidelity);
  line(out, "success_probability", r.success_probability);
  line(out, "success_probability_sq", r.success_probability_squared);
  line(out, "fidelity_conditional", r.fidelity_conditional);
  line(out, "fidelity_unconditional", r.fidelity_unconditional);
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ProtocolConfig pc = config.protocol_config();
  if (!validated(pc, err)) return kExitConfig;

  std::optional<SimResult> run;
  try {
    run = run_protocol(pc);
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  const SimResult& result = *run;

  const std::string path = config.out.empty() ? kDefaultTrajectoryPath : config.out;
  const std::string script = plot_script_path(path);
  const std::string csv_name = fs::path(path).filename().string();
  if (!write_file(path, err, [&](std::ostream& f) { write_trajectory_csv(f, result, pc.variant); }) ||
      !write_file(script, err, [&](std::ostream& f) { write_trajectory_plot(f, csv_name, pc.variant); })) {
    return kExitNumerical;
  }
  write_summary(out, pc, result);
  line(out, "trajectory", path);
  line(out, "plot_script", script);
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SweepSpec spec = config.sweep_spec();
  try {
    spec.validate();
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (!validated(spec.base, err)) return kExitConfig;

  const std::vector<SweepRow> rows = sweep(spec);
  const std::string path = config.out.empty() ? kDefaultSweepPath : config.out;
  const std::string script = plot_script_path(path);
  const std::string csv_name = fs::path(path).filename().string();
  if (!write_file(path, err, [&](std::ostream& f) { write_sweep_csv(f, spec.parameter, rows); }) ||
      !write_file(script, err, [&](std::ostream& f) { write_sweep_plot(f, csv_name, spec.parameter); })) {
    return kExitNumerical;
  }

  int failures = 0;
  for (const auto& r : rows) {
    if (r.error) {
      ++failures;
      err << "point " << to_string(spec.parameter) << '=' << format_number(r.value)
          << " failed: " << *r.error << '\n';
    }
  }
  line(out, "parameter", std::string(to_string(spec.parameter)));
  line(out, "points", std::to_string(rows.size()));
  line(out, "failed_points", std::to_string(failures));
  line(out, "sweep", path);
  line(out, "plot_script", script);
  return failures == 0 ? kExitOk : kExitNumerical;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  std::vector<Check> checks;
  try {
    checks = run_verification(options);
  } catch (const std::exception& e) {
    out << "FAIL  verification aborted: " << e.what() << '\n';
    return kExitNumerical;
  }
  int failed = 0;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
    if (!c.passed) ++failed;
  }
  out << (checks.size() - static_cast<std::size_t>(failed)) << '/' << checks.size()
      << " checks passed\n";
  return failed == 0 ? kExitOk : kExitNumerical;
}

int cmd_diagnose(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ProtocolConfig pc = config.protocol_config();
  if (!validated(pc, err)) return kExitConfig;
  const PhysicalParams p = pc.resolved_params();
  line(out, "variant", std::string(to_string(pc.variant)));
  line(out, "delta", p.delta);
  line(out, "kappa", p.kappa);
  line(out, "gamma", p.gamma);
  line(out, "large_detuning", p.large_detuning() ? "yes" : "no (delta < 5 max(g, Omega))");
  for (Stage s : {Stage::A, Stage::B}) {
    const EffectiveDiagnostics d = effective_params(p, s);
    const std::string prefix = s == Stage::A ? "stage_a." : "stage_b.";
    line(out, prefix + "omega_eff", d.omega_eff);
    line(out, prefix + "gamma_eff", d.gamma_eff);
    line(out, prefix + "cooperativity", d.cooperativity);
    line(out, prefix + "omega_eff/kappa",
         p.kappa == 0.0 ? std::numeric_limits<double>::infinity() : d.omega_eff / p.kappa);
    line(out, prefix + "strong_coupling",
         d.strong_coupling_ok ? "yes (Omega_eff >> gamma_eff and Omega_eff >> kappa)"
                              : "no (need Omega_eff >= 10 gamma_eff and >= 10 kappa)");
  }
  return kExitOk;
}

}  // namespace cqed::cli
