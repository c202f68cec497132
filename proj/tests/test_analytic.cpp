#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "cqed/analytic.hpp"
#include "cqed/propagator.hpp"

using namespace cqed;
using std::numbers::pi;
using L = AtomLevel;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt3 = 0.57735026918962576451;

bool near(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) < tol; }

StageACoefficients ideal_handoff(Variant v) {
  StageACoefficients c;
  if (v == Variant::Qubit) {
    c.c2 = c.c3 = kInvSqrt2;
  } else {
    c.c1 = c.c2 = c.c3 = kInvSqrt3;
  }
  return c;
}

}  // namespace

TEST_CASE("stage A closed form at reference times") {
  const double rt2 = std::sqrt(2.0);
  const StageACoefficients start = stage_a_coeffs(1.0, rt2, 10.0, 0.0);
  CHECK(near(start.c1, 1.0));
  CHECK(near(start.c2, 0.0));
  CHECK(near(start.c3, 0.0));
  CHECK(start.eta == doctest::Approx(4.0));

  // Qubit hand-off, with the common factor -1.
  const StageACoefficients end = stage_a_coeffs(1.0, rt2, 10.0, 2.5 * pi);
  CHECK(near(end.c1, 0.0));
  CHECK(near(end.c2, -kInvSqrt2));
  CHECK(near(end.c3, -kInvSqrt2));

  // Qutrit hand-off.
  const StageACoefficients q =
      stage_a_coeffs(1.0, 1.0 + std::sqrt(3.0), 10.0, 5.0 * pi / (3.0 + std::sqrt(3.0)));
  CHECK(near(q.c1, -kInvSqrt3));
  CHECK(near(q.c2, -kInvSqrt3));
  CHECK(near(q.c3, -kInvSqrt3));
}

TEST_CASE("stage A quarter-period values against numerical evolution") {
  const double rt2 = std::sqrt(2.0);
  const StageACoefficients c = stage_a_coeffs(1.0, rt2, 10.0, 1.25 * pi);
  CHECK(near(c.c1, Complex(0.5, -0.5)));
  CHECK(near(c.c2, -Complex(1.0, 1.0) * rt2 / 4.0));
  CHECK(near(c.c3, c.c2));
  CHECK(std::norm(c.c1) == doctest::Approx(0.5));
  CHECK(std::norm(c.c2) == doctest::Approx(0.25));

  // Independent route: exponentiate the effective Hamiltonian.
  const HilbertSpace s = build_space(1);
  PhysicalParams p;
  const StateVector psi =
      evolve_constant(stage_a_effective(s, p), basis_state(s, {L::ga, L::g0, 0, 0}), 1.25 * pi);
  CHECK(near(psi.amplitude({L::ga, L::g0, 0, 0}), Complex(0.5, -0.5), 1e-12));
  CHECK(near(psi.amplitude({L::gL, L::g0, 1, 0}), -Complex(1.0, 1.0) * rt2 / 4.0, 1e-12));
  CHECK(near(psi.amplitude({L::gR, L::g0, 0, 1}), -Complex(1.0, 1.0) * rt2 / 4.0, 1e-12));
}

TEST_CASE("stage B closed form at reference times") {
  const StageBCoefficients q0 =
      stage_b_coeffs(Variant::Qubit, 1.0, 1.0, 10.0, 0.0, ideal_handoff(Variant::Qubit));
  REQUIRE(q0.amplitudes.size() == 4);
  CHECK(near(q0.amplitudes[0], kInvSqrt2));
  CHECK(near(q0.amplitudes[1], kInvSqrt2));
  CHECK(near(q0.amplitudes[2], 0.0));
  CHECK(near(q0.amplitudes[3], 0.0));

  const StageBCoefficients q =
      stage_b_coeffs(Variant::Qubit, 1.0, 1.0, 10.0, 5.0 * pi, ideal_handoff(Variant::Qubit));
  CHECK(near(q.amplitudes[0], 0.0));
  CHECK(near(q.amplitudes[1], 0.0));
  CHECK(near(q.amplitudes[2], -kInvSqrt2));
  CHECK(near(q.amplitudes[3], -kInvSqrt2));

  // The untouched |ga, g0, 0> amplitude keeps its sign while the transferred
  // ones pick up -1: the end state is not the all-plus superposition.
  const StageBCoefficients t =
      stage_b_coeffs(Variant::Qutrit, 1.0, 1.0, 10.0, 5.0 * pi, ideal_handoff(Variant::Qutrit));
  REQUIRE(t.amplitudes.size() == 5);
  CHECK(near(t.amplitudes[0], kInvSqrt3));
  CHECK(near(t.amplitudes[1], 0.0));
  CHECK(near(t.amplitudes[2], 0.0));
  CHECK(near(t.amplitudes[3], -kInvSqrt3));
  CHECK(near(t.amplitudes[4], -kInvSqrt3));
}

TEST_CASE("qutrit d'1 is constant") {
  for (double t : {0.0, 1.0, 7.7, 15.0, 31.4}) {
    const StageBCoefficients d =
        stage_b_coeffs(Variant::Qutrit, 1.3, 0.7, 12.0, t, ideal_handoff(Variant::Qutrit));
    CHECK(near(d.amplitudes[0], kInvSqrt3, 1e-15));
  }
}

TEST_CASE("hand-off consistency is enforced") {
  StageACoefficients wrong;  // c1 = 1: the initial state, not a hand-off
  wrong.c1 = 1.0;
  CHECK_THROWS_AS(stage_b_coeffs(Variant::Qubit, 1, 1, 10, 1, wrong), std::invalid_argument);
  CHECK_THROWS_AS(stage_b_coeffs(Variant::Qutrit, 1, 1, 10, 1, ideal_handoff(Variant::Qubit)),
                  std::invalid_argument);
  CHECK_THROWS_AS(stage_b_coeffs(Variant::Qubit, 1, 1, 0, 1, ideal_handoff(Variant::Qubit)),
                  std::invalid_argument);
  // A global phase on the hand-off is fine.
  StageACoefficients phased = ideal_handoff(Variant::Qubit);
  phased.c2 = phased.c3 = -kInvSqrt2;
  CHECK_NOTHROW(stage_b_coeffs(Variant::Qubit, 1, 1, 10, 1, phased));
}

TEST_CASE("closed forms stay normalized and periodic") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> g(0.5, 2.0), w(0.2, 3.0), d(5.0, 100.0), u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double gA = g(rng), om = w(rng), delta = d(rng);
    const double eta = 2 * gA * gA + om * om;
    const double t = u(rng) * 50.0;
    const StageACoefficients c = stage_a_coeffs(gA, om, delta, t);
    CHECK(c.norm2() == doctest::Approx(1.0).epsilon(1e-12));
    const StageACoefficients c2 = stage_a_coeffs(gA, om, delta, t + 2 * pi * delta / eta);
    CHECK(near(c.c1, c2.c1, 1e-10));
    CHECK(near(c.c2, c2.c2, 1e-10));

    const double gB = g(rng), oB = w(rng);
    for (Variant v : {Variant::Qubit, Variant::Qutrit}) {
      const StageBCoefficients b = stage_b_coeffs(v, gB, oB, delta, t, ideal_handoff(v));
      CHECK(b.norm2() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(b.rate == doctest::Approx(gB * gB + oB * oB));
    }
  }
}

TEST_CASE("schedule") {
  const ProtocolSchedule q = schedule(Variant::Qubit, 1.0, 1.0, 10.0);
  CHECK(q.t1 == doctest::Approx(7.8539816339744831).epsilon(1e-14));
  CHECK(q.t1 == doctest::Approx(2.5 * pi));
  CHECK(q.omegaA == doctest::Approx(std::sqrt(2.0)));
  CHECK(q.omegaB == 1.0);
  CHECK(q.delay == doctest::Approx(0.1 * q.t1));
  CHECK(q.stage_b_duration == doctest::Approx(5.0 * pi));
  CHECK(q.t2() == doctest::Approx(q.t1 * 1.1 + 5.0 * pi));

  const ProtocolSchedule t = schedule(Variant::Qutrit, 1.0, 1.0, 10.0);
  CHECK(t.t1 == doctest::Approx(5.0 * pi / (3.0 + std::sqrt(3.0))).epsilon(1e-14));
  CHECK(t.t1 == doctest::Approx(3.3194832).epsilon(1e-7));
  CHECK(t.omegaA == doctest::Approx(1.0 + std::sqrt(3.0)));

  CHECK(schedule(Variant::Qutrit, 1.0, 1.0, 20.0).stage_b_duration == doctest::Approx(10.0 * pi));
  CHECK(schedule(Variant::Qubit, 2.0, 0.5, 10.0).stage_b_duration == doctest::Approx(20.0 * pi));
  CHECK(schedule(Variant::Qubit, 1.0, 1.0, 10.0, 0.0).delay == 0.0);
  CHECK(stage_a_drive(Variant::Qubit, 2.0) == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("the qubit schedule empties |ga> at the first minimum") {
  // Scan one stage-A period on a fine grid; |c1| is smallest at t1.
  const ProtocolSchedule q = schedule(Variant::Qubit, 1.0, 1.0, 10.0);
  const double period = 2 * pi * 10.0 / 4.0;
  double best_t = 0.0, best = 1.0;
  for (int k = 0; k <= 10000; ++k) {
    const double t = period * k / 10000.0;
    const double m = std::abs(stage_a_coeffs(1.0, q.omegaA, 10.0, t).c1);
    if (m < best) {
      best = m;
      best_t = t;
    }
  }
  CHECK(best_t == doctest::Approx(q.t1).epsilon(period / 10000.0));
  CHECK(best < 1e-3);
}
