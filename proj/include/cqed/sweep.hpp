// One-dimensional parameter sweeps over the protocol and the effective-rate
// diagnostics for the strongly coupled regime.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/protocol.hpp"

namespace cqed {

enum class SweepParameter { Kappa, Delta, NMax, Delay };

std::string_view to_string(SweepParameter p);
/// Throws std::invalid_argument for unknown names.
SweepParameter parse_sweep_parameter(std::string_view name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::Kappa;
  double min = 0.0;
  double max = 0.2;
  int steps = 50;
  ProtocolConfig base;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;

  void validate() const;
  /// Grid values, ascending. `delay` is measured in units of t1 and `n_max`
  /// is rounded to the nearest integer.
  std::vector<double> grid() const;
  /// `base` with the swept parameter set to `value`.
  ProtocolConfig config_at(double value) const;
};

struct SweepRow {
  double value = 0.0;
  double P_A = 0.0;
  double F_A = 0.0;
  double P_B = 0.0;
  double F_B = 0.0;
  /// Set when this grid point failed; the numeric fields are NaN.
  std::optional<std::string> error;
};

/// One run_protocol per grid point, rows ordered by parameter value. Failing
/// points are recorded in their row and do not abort the sweep.
std::vector<SweepRow> sweep(const SweepSpec& spec);

struct EffectiveDiagnostics {
  double omega_eff = 0.0;
  double gamma_eff = 0.0;
  /// g^2 / (kappa gamma); +inf when kappa * gamma == 0.
  double cooperativity = 0.0;
  /// omega_eff >= 10 gamma_eff and omega_eff >= 10 kappa.
  bool strong_coupling_ok = false;
};

inline constexpr double kStrongCouplingRatio = 10.0;

/// omega_eff = Omega g / delta, gamma_eff = Omega^2 gamma / delta^2, for the
/// drive/coupling pair of the given stage.
EffectiveDiagnostics effective_params(const PhysicalParams& params, Stage stage = Stage::A);

}  // namespace cqed
