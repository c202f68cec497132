#include "cqed/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace cqed {

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Kappa: return "kappa";
    case SweepParameter::Delta: return "delta";
    case SweepParameter::NMax: return "n_max";
    case SweepParameter::Delay: return "delay";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  for (auto p : {SweepParameter::Kappa, SweepParameter::Delta, SweepParameter::NMax,
                 SweepParameter::Delay}) {
    if (to_string(p) == name) return p;
  }
  throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                              "' (expected kappa, delta, n_max or delay)");
}

void SweepSpec::validate() const {
  if (!(min <= max)) throw std::invalid_argument("SweepSpec: min must be <= max");
  if (steps < 2) throw std::invalid_argument("SweepSpec: steps must be >= 2");
}

std::vector<double> SweepSpec::grid() const {
  validate();
  std::vector<double> values(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    values[static_cast<std::size_t>(i)] = min + (max - min) * i / (steps - 1);
  }
  values.back() = max;
  if (parameter == SweepParameter::NMax) {
    for (double& v : values) v = std::round(v);
  }
  return values;
}

ProtocolConfig SweepSpec::config_at(double value) const {
  ProtocolConfig c = base;
  switch (parameter) {
    case SweepParameter::Kappa: c.params.kappa = value; break;
    case SweepParameter::Delta: c.params.delta = value; break;
    case SweepParameter::NMax: c.n_max = static_cast<int>(std::lround(value)); break;
    case SweepParameter::Delay:
      if (c.schedule_override) {
        c.schedule_override->delay = value * c.schedule_override->t1;
      } else {
        c.delay_fraction = value;
      }
      break;
  }
  return c;
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  const std::vector<double> values = spec.grid();
  std::vector<SweepRow> rows(values.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepRow& row = rows[i];
      row.value = values[i];
      try {
        const SimResult r = run_protocol(spec.config_at(values[i]));
        row.P_A = r.stage_a.success_probability;
        row.F_A = r.stage_a.fidelity;
        row.P_B = r.stage_b.success_probability;
        row.F_B = r.stage_b.fidelity;
      } catch (const std::exception& e) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        row.P_A = row.F_A = row.P_B = row.F_B = nan;
        row.error = e.what();
      }
    }
  };

  unsigned n = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  n = std::clamp<unsigned>(n, 1u, static_cast<unsigned>(values.size()));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  return rows;
}

EffectiveDiagnostics effective_params(const PhysicalParams& p, Stage stage) {
  if (!(p.delta > 0.0)) throw std::invalid_argument("effective_params: delta must be > 0");
  const double omega = stage == Stage::A ? p.omegaA : p.omegaB;
  const double g = stage == Stage::A ? p.gA : p.gB;
  EffectiveDiagnostics d;
  d.omega_eff = std::abs(omega * g / p.delta);
  d.gamma_eff = omega * omega * p.gamma / (p.delta * p.delta);
  const double loss = p.kappa * p.gamma;
  d.cooperativity = loss == 0.0 ? std::numeric_limits<double>::infinity() : g * g / loss;
  d.strong_coupling_ok = d.omega_eff >= kStrongCouplingRatio * d.gamma_eff &&
                         d.omega_eff >= kStrongCouplingRatio * p.kappa;
  return d;
}

}  // namespace cqed
