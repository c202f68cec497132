#include <cmath>

#include <doctest.h>

#include "cqed/protocol.hpp"

using namespace cqed;
using L = AtomLevel;

namespace {

ProtocolConfig config(Variant v, Model m = Model::Effective, double kappa = 0.0) {
  ProtocolConfig c;
  c.variant = v;
  c.model = m;
  c.params.kappa = kappa;
  return c;
}

}  // namespace

TEST_CASE("targets") {
  const HilbertSpace s = build_space(2);
  const double h = 1.0 / std::sqrt(2.0), t = 1.0 / std::sqrt(3.0);
  for (Variant v : {Variant::Qubit, Variant::Qutrit})
    for (Stage st : {Stage::A, Stage::B}) CHECK(target_state(s, v, st).norm2() == doctest::Approx(1.0));

  const StateVector qb = target_state(s, Variant::Qubit, Stage::B);
  CHECK(std::abs(qb.amplitude({L::gL, L::gR, 0, 0}) - h) < 1e-15);
  CHECK(std::abs(qb.amplitude({L::gR, L::gL, 0, 0}) - h) < 1e-15);
  const StateVector qa = target_state(s, Variant::Qubit, Stage::A);
  CHECK(std::abs(qa.amplitude({L::gL, L::g0, 1, 0}) - h) < 1e-15);
  const StateVector tb = target_state(s, Variant::Qutrit, Stage::B);
  for (const BasisLabel& l : {BasisLabel{L::ga, L::g0, 0, 0}, BasisLabel{L::gL, L::gR, 0, 0},
                              BasisLabel{L::gR, L::gL, 0, 0}}) {
    CHECK(std::abs(tb.amplitude(l) - t) < 1e-15);
  }
  CHECK(initial_state(s).population({L::ga, L::g0, 0, 0}) == 1.0);
}

TEST_CASE("figure selectors follow the caption order") {
  CHECK(figure_selectors(Variant::Qubit, Stage::A).size() == 4);
  CHECK(figure_selectors(Variant::Qubit, Stage::B).size() == 5);
  const auto q = figure_selectors(Variant::Qutrit, Stage::B);
  REQUIRE(q.size() == 6);
  CHECK(q[0].matches({L::ga, L::g0, 0, 0}));
  CHECK(q[3].matches({L::gL, L::gR, 0, 0}));
  CHECK(q.back().name() == "Pp");
}

TEST_CASE("ideal qubit protocol") {
  const SimResult r = run_protocol(config(Variant::Qubit));
  CHECK(r.fidelity_unconditional >= 1.0 - 1e-9);
  CHECK(r.success_probability == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.stage_a.fidelity >= 1.0 - 1e-9);
  CHECK_FALSE(r.schedule_overridden);

  // Stage-A end: both photon branches at 1/2.
  const StateVector& a = r.stage_a_trajectory.final_state();
  CHECK(a.population({L::gL, L::g0, 1, 0}) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(a.population({L::gR, L::g0, 0, 1}) == doctest::Approx(0.5).epsilon(1e-9));

  // Global times: stage B starts at t1'.
  CHECK(r.stage_a_trajectory.times.back() == doctest::Approx(r.schedule.t1));
  CHECK(r.stage_b_trajectory.times.front() == doctest::Approx(r.schedule.t1_prime()));
  CHECK(r.stage_b_trajectory.times.back() == doctest::Approx(r.schedule.t2()));
  CHECK(r.max_two_photon_population < 1e-10);
}

TEST_CASE("ideal qutrit protocol") {
  const SimResult r = run_protocol(config(Variant::Qutrit));
  const StateVector& a = r.stage_a_trajectory.final_state();
  CHECK(population(a, Selector::photon()) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  for (const BasisLabel& l : {BasisLabel{L::ga, L::g0, 0, 0}, BasisLabel{L::gL, L::g0, 1, 0},
                              BasisLabel{L::gR, L::g0, 0, 1}}) {
    CHECK(a.population(l) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }
  CHECK(r.stage_a.fidelity >= 1.0 - 1e-9);

  for (const StateVector& psi : r.stage_b_trajectory.states) {
    CHECK(std::abs(psi.population({L::ga, L::g0, 0, 0}) - 1.0 / 3.0) < 1e-9);
  }
  const StateVector& f = r.final_state;
  for (const BasisLabel& l : {BasisLabel{L::ga, L::g0, 0, 0}, BasisLabel{L::gL, L::gR, 0, 0},
                              BasisLabel{L::gR, L::gL, 0, 0}}) {
    CHECK(f.population(l) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }
  CHECK(r.success_probability == doctest::Approx(1.0).epsilon(1e-9));

  // The transferred branches end with the opposite sign to |ga, g0, 0>, so
  // the overlap with the all-plus target is (1 - 1 - 1)/3 squared.
  CHECK(r.fidelity_unconditional == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
  const Complex ratio =
      f.amplitude({L::gL, L::gR, 0, 0}) / f.amplitude({L::ga, L::g0, 0, 0});
  CHECK(std::abs(ratio + 1.0) < 1e-9);
  CHECK(r.max_two_photon_population < 1e-10);
}

TEST_CASE("fidelity bookkeeping under loss") {
  for (Variant v : {Variant::Qubit, Variant::Qutrit}) {
    const SimResult r = run_protocol(config(v, Model::Effective, 0.02));
    CHECK(r.fidelity_unconditional ==
          doctest::Approx(r.success_probability * r.fidelity_conditional).epsilon(1e-10));
    CHECK(r.success_probability_squared ==
          doctest::Approx(r.success_probability * r.success_probability));
    CHECK(r.success_probability < 1.0);
    CHECK(r.stage_b.success_probability <= r.stage_a.success_probability);
    for (const auto* traj : {&r.stage_a_trajectory, &r.stage_b_trajectory}) {
      for (std::size_t k = 1; k < traj->size(); ++k) {
        CHECK(traj->norms[k] <= traj->norms[k - 1] + 1e-12);
      }
    }
  }
}

TEST_CASE("photon loss at the benchmark decay rate") {
  // Conditional fidelity stays high; the unconditional one carries the
  // photon loss over the ~12.6 gA^-1 the photon spends in the cavity.
  const SimResult r = run_protocol(config(Variant::Qubit, Model::Effective, 2.6 / 750.0));
  CHECK(r.fidelity_conditional > 0.999);
  CHECK(r.success_probability == doctest::Approx(0.917247236785).epsilon(1e-9));
  CHECK(r.fidelity_unconditional == doctest::Approx(0.916905108996).epsilon(1e-9));
}

TEST_CASE("delay is inert without loss") {
  for (Variant v : {Variant::Qubit, Variant::Qutrit}) {
    double reference = -1.0;
    for (double fraction : {0.0, 0.1, 1.0}) {
      ProtocolConfig c = config(v);
      c.delay_fraction = fraction;
      const SimResult r = run_protocol(c);
      if (reference < 0.0) reference = r.fidelity_unconditional;
      CHECK(r.fidelity_unconditional == doctest::Approx(reference).epsilon(1e-12));
      CHECK(r.success_probability == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("longer delays cost photons when kappa > 0") {
  double previous = 2.0;
  for (double fraction : {0.0, 0.1, 1.0}) {
    ProtocolConfig c = config(Variant::Qubit, Model::Effective, 0.01);
    c.delay_fraction = fraction;
    const double p = run_protocol(c).success_probability;
    CHECK(p < previous);
    previous = p;
  }
}

TEST_CASE("success probability falls with kappa") {
  double previous = 2.0;
  for (double kappa : {0.0, 0.005, 0.02, 0.05}) {
    const double p = run_protocol(config(Variant::Qutrit, Model::Effective, kappa)).success_probability;
    CHECK(p < previous);
    previous = p;
  }
}

TEST_CASE("schedule override is honoured and flagged") {
  ProtocolConfig c = config(Variant::Qubit);
  ProtocolSchedule s = c.resolved_schedule();
  s.t1 *= 0.5;
  c.schedule_override = s;
  const SimResult r = run_protocol(c);
  CHECK(r.schedule_overridden);
  CHECK(r.schedule.t1 == doctest::Approx(s.t1));
  CHECK(r.fidelity_unconditional < 0.9);
}

TEST_CASE("config validation") {
  ProtocolConfig c;
  CHECK_NOTHROW(c.validate());
  c.n_max = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ProtocolConfig{};
  c.sample_count = 1;
  CHECK_THROWS_AS(run_protocol(c), std::invalid_argument);
  c = ProtocolConfig{};
  c.params.delta = -1.0;
  CHECK_THROWS_AS(run_protocol(c), std::invalid_argument);
}

TEST_CASE("full model at delta = 10") {
  // Regression values from the brute-force run. The sudden switch-on leaves
  // a virtual excited population of order 4 Omega^2 / delta^2 oscillating at
  // delta, and delta t1 = 25 pi puts t1 on one of its maxima.
  const ProtocolConfig c = config(Variant::Qubit, Model::Full);
  const SimResult r = run_protocol(c);
  CHECK(r.fidelity_conditional == doctest::Approx(0.926165).epsilon(1e-5));
  CHECK(r.success_probability == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.max_two_photon_population < 1e-10);

  const ModelComparison m = compare_models(c);
  CHECK(m.max_population_deviation == doctest::Approx(0.107373).epsilon(1e-4));
  CHECK(m.max_excited_population == doctest::Approx(0.102368).epsilon(1e-4));
  CHECK(m.final_state_fidelity == doctest::Approx(0.926165).epsilon(1e-4));
}

TEST_CASE("full model converges to the effective one as delta grows") {
  double previous = 1.0;
  for (double delta : {10.0, 31.6, 100.0}) {
    ProtocolConfig c = config(Variant::Qubit, Model::Full);
    c.params.delta = delta;
    c.n_max = 1;
    const double dev = compare_models(c).max_population_deviation;
    CHECK(dev < previous / 8.0);
    previous = dev;
  }
}

TEST_CASE("stroboscopic regime at delta = 1e4") {
  ProtocolConfig c = config(Variant::Qubit, Model::Full);
  c.params.delta = 1e4;
  c.n_max = 1;
  const ModelComparison m = compare_models(c);
  CHECK(m.max_population_deviation < 1e-3);
  CHECK(m.final_state_fidelity > 1.0 - 1e-6);
}

TEST_CASE("comparing a run with itself") {
  const SimResult r = run_protocol(config(Variant::Qutrit));
  const ModelComparison m = compare_runs(r, r, Variant::Qutrit);
  CHECK(m.max_population_deviation == 0.0);
  CHECK(m.final_state_fidelity == doctest::Approx(1.0));
}

TEST_CASE("stage-B clock offset leaves populations unchanged") {
  ProtocolConfig c = config(Variant::Qubit, Model::Full);
  c.n_max = 1;
  const SimResult base = run_protocol(c);
  c.stage_b_clock_offset = 0.37;
  const SimResult shifted = run_protocol(c);
  const ModelComparison m = compare_runs(base, shifted, Variant::Qubit);
  CHECK(m.max_population_deviation < 1e-8);
}
