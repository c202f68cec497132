#include "cqed/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqed {

namespace {

using L = AtomLevel;

constexpr double kTwoPhotonLimit = 1e-10;

BasisLabel label(L a, L b, int nL, int nR) { return {a, b, nL, nR}; }

StateVector superposition(const HilbertSpace& space, const std::vector<BasisLabel>& labels) {
  StateVector s(space);
  const double amp = 1.0 / std::sqrt(static_cast<double>(labels.size()));
  for (const auto& l : labels) s.amplitudes()[static_cast<Eigen::Index>(space.index(l))] = amp;
  return s;
}

StageScore score(const StateVector& psi, const StateVector& target) {
  StageScore s;
  s.success_probability = psi.norm2();
  s.fidelity = std::norm(overlap(target, psi));
  s.fidelity_conditional =
      s.success_probability > 0.0 ? s.fidelity / s.success_probability : 0.0;
  return s;
}

double max_population(const Trajectory& traj, const Selector& selector) {
  const Selector selectors[] = {selector};
  const PopulationTable table = populations(traj, selectors);
  return table.series[0].empty()
             ? 0.0
             : *std::max_element(table.series[0].begin(), table.series[0].end());
}

Trajectory run_stage(Stage stage, const ProtocolConfig& config, const HilbertSpace& space,
                     const PhysicalParams& p, const StateVector& psi0, double duration) {
  try {
    if (config.model == Model::Effective) {
      const Matrix h = stage == Stage::A ? stage_a_effective(space, p) : stage_b_effective(space, p);
      return evolve_constant_sampled(add_conditional_decay(h, space, p), psi0, duration,
                                     config.sample_count);
    }
    TimeDependentHamiltonian rule = stage == Stage::A
                                        ? stage_a_rule(space, p)
                                        : stage_b_rule(space, p, config.stage_b_clock_offset);
    if (p.kappa != 0.0 || p.gamma != 0.0) rule = rule.plus_static(conditional_decay(space, p));
    PropagationRequest request{rule, psi0, duration, config.sample_count, config.tolerance};
    return propagate(request);
  } catch (const PropagationError& e) {
    throw ProtocolError(std::string("stage ") + (stage == Stage::A ? "A" : "B") + ": " + e.what(),
                        stage, e.time_reached());
  }
}

}  // namespace

std::string_view to_string(Model m) { return m == Model::Full ? "full" : "effective"; }

ProtocolSchedule ProtocolConfig::resolved_schedule() const {
  if (schedule_override) return *schedule_override;
  return schedule(variant, params.gA, params.gB, params.delta, delay_fraction);
}

PhysicalParams ProtocolConfig::resolved_params() const {
  const ProtocolSchedule s = resolved_schedule();
  PhysicalParams p = params;
  p.omegaA = s.omegaA;
  p.omegaB = s.omegaB;
  return p;
}

void ProtocolConfig::validate() const {
  params.validate();
  resolved_schedule().validate();
  if (n_max < 1) throw std::invalid_argument("ProtocolConfig: n_max must be >= 1");
  if (sample_count < 2) throw std::invalid_argument("ProtocolConfig: sample_count must be >= 2");
  if (!(tolerance > 0.0)) throw std::invalid_argument("ProtocolConfig: tolerance must be > 0");
  if (!(delay_fraction >= 0.0)) {
    throw std::invalid_argument("ProtocolConfig: delay_fraction must be >= 0");
  }
}

StateVector initial_state(const HilbertSpace& space) {
  return basis_state(space, label(L::ga, L::g0, 0, 0));
}

StateVector target_state(const HilbertSpace& space, Variant variant, Stage stage) {
  std::vector<BasisLabel> labels;
  if (variant == Variant::Qutrit) labels.push_back(label(L::ga, L::g0, 0, 0));
  if (stage == Stage::A) {
    labels.push_back(label(L::gL, L::g0, 1, 0));
    labels.push_back(label(L::gR, L::g0, 0, 1));
  } else {
    labels.push_back(label(L::gL, L::gR, 0, 0));
    labels.push_back(label(L::gR, L::gL, 0, 0));
  }
  return superposition(space, labels);
}

std::vector<Selector> figure_selectors(Variant variant, Stage stage) {
  std::vector<BasisLabel> labels;
  if (stage == Stage::A) {
    labels = {label(L::ga, L::g0, 0, 0), label(L::gL, L::g0, 1, 0), label(L::gR, L::g0, 0, 1)};
  } else {
    if (variant == Variant::Qutrit) labels.push_back(label(L::ga, L::g0, 0, 0));
    labels.push_back(label(L::gL, L::g0, 1, 0));
    labels.push_back(label(L::gR, L::g0, 0, 1));
    labels.push_back(label(L::gL, L::gR, 0, 0));
    labels.push_back(label(L::gR, L::gL, 0, 0));
  }
  std::vector<Selector> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const BasisLabel l = labels[i];
    out.emplace_back("P" + std::to_string(i + 1), [l](const BasisLabel& x) { return x == l; });
  }
  Selector photon = Selector::photon();
  out.emplace_back("Pp", [photon](const BasisLabel& x) { return photon.matches(x); });
  return out;
}

SimResult run_protocol(const ProtocolConfig& config) {
  config.validate();
  const ProtocolSchedule sched = config.resolved_schedule();
  const PhysicalParams p = config.resolved_params();
  const HilbertSpace space = build_space(config.n_max);

  Trajectory a = run_stage(Stage::A, config, space, p, initial_state(space), sched.t1);
  const StateVector after_a = a.final_state();

  StateVector handoff = after_a;
  if (sched.delay > 0.0 && (p.kappa != 0.0 || p.gamma != 0.0)) {
    handoff = evolve_constant(Matrix(conditional_decay(space, p)), after_a, sched.delay);
  }

  Trajectory b = run_stage(Stage::B, config, space, p, handoff, sched.stage_b_duration)
                     .shifted(sched.t1_prime());

  const Selector two_photons = Selector::photon_count(2);
  const double two_photon =
      std::max(max_population(a, two_photons), max_population(b, two_photons));
  if (two_photon > kTwoPhotonLimit) {
    throw std::logic_error("run_protocol: population " + std::to_string(two_photon) +
                           " leaked into the two-photon sector; excitation number is not "
                           "conserved by the stage Hamiltonians");
  }

  const StageScore score_a = score(after_a, target_state(space, config.variant, Stage::A));
  StateVector final_state = b.final_state();
  const StageScore score_b = score(final_state, target_state(space, config.variant, Stage::B));

  return SimResult{
      .schedule = sched,
      .schedule_overridden = config.schedule_override.has_value(),
      .large_detuning = p.large_detuning(),
      .stage_a_trajectory = std::move(a),
      .stage_b_trajectory = std::move(b),
      .final_state = std::move(final_state),
      .success_probability = score_b.success_probability,
      .success_probability_squared = score_b.success_probability * score_b.success_probability,
      .fidelity_conditional = score_b.fidelity_conditional,
      .fidelity_unconditional = score_b.fidelity,
      .stage_a = score_a,
      .stage_b = score_b,
      .max_two_photon_population = two_photon,
  };
}

ModelComparison compare_runs(const SimResult& x, const SimResult& y, Variant variant) {
  ModelComparison cmp;
  const std::pair<const Trajectory*, const Trajectory*> stages[] = {
      {&x.stage_a_trajectory, &y.stage_a_trajectory},
      {&x.stage_b_trajectory, &y.stage_b_trajectory}};
  for (int s = 0; s < 2; ++s) {
    const auto& [tx, ty] = stages[s];
    if (tx->size() != ty->size()) {
      throw std::invalid_argument("compare_runs: trajectories have different sample counts");
    }
    const auto selectors = figure_selectors(variant, s == 0 ? Stage::A : Stage::B);
    const PopulationTable px = populations(*tx, selectors);
    const PopulationTable py = populations(*ty, selectors);
    for (std::size_t k = 0; k < selectors.size(); ++k) {
      for (std::size_t i = 0; i < px.times.size(); ++i) {
        const double d = std::abs(px.series[k][i] - py.series[k][i]);
        if (d > cmp.max_population_deviation) {
          cmp.max_population_deviation = d;
          cmp.worst_series = std::string(s == 0 ? "A:" : "B:") + px.names[k];
          cmp.worst_time = px.times[i];
        }
      }
    }
    const Selector excited = Selector::excited();
    cmp.max_excited_population = std::max(
        {cmp.max_excited_population, max_population(*tx, excited), max_population(*ty, excited)});
  }
  cmp.final_state_fidelity =
      std::norm(overlap(x.final_state.normalized(), y.final_state.normalized()));
  return cmp;
}

ModelComparison compare_models(const ProtocolConfig& base) {
  ProtocolConfig full = base;
  full.model = Model::Full;
  ProtocolConfig eff = base;
  eff.model = Model::Effective;
  return compare_runs(run_protocol(full), run_protocol(eff), base.variant);
}

}  // namespace cqed
