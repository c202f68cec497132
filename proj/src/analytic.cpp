#include "cqed/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cqed {

namespace {

using Cx = std::complex<double>;

constexpr double kHandOffTolerance = 1e-6;

Cx phase(double rate, double t, double delta) { return std::polar(1.0, -rate * t / delta); }

bool close(double a, double b) { return std::abs(a - b) <= kHandOffTolerance; }

}  // namespace

std::string_view to_string(Variant v) { return v == Variant::Qubit ? "qubit" : "qutrit"; }

double StageACoefficients::norm2() const {
  return std::norm(c1) + std::norm(c2) + std::norm(c3);
}

double StageBCoefficients::norm2() const {
  double s = 0.0;
  for (const auto& d : amplitudes) s += std::norm(d);
  return s;
}

StageACoefficients stage_a_coeffs(double gA, double omegaA, double delta, double t) {
  if (!(delta > 0.0)) throw std::invalid_argument("stage_a_coeffs: delta must be > 0");
  StageACoefficients c;
  c.eta = 2.0 * gA * gA + omegaA * omegaA;
  const Cx e = phase(c.eta, t, delta);
  c.c1 = (2.0 * gA * gA + omegaA * omegaA * e) / c.eta;
  c.c2 = (gA * omegaA * e - gA * omegaA) / c.eta;
  c.c3 = c.c2;
  return c;
}

StageBCoefficients stage_b_coeffs(Variant variant, double gB, double omegaB,
                                  double delta, double t, const StageACoefficients& a) {
  if (!(delta > 0.0)) throw std::invalid_argument("stage_b_coeffs: delta must be > 0");
  const double m1 = std::abs(a.c1), m2 = std::abs(a.c2), m3 = std::abs(a.c3);
  const bool consistent =
      variant == Variant::Qubit
          ? close(m1, 0.0) && close(m2, 1.0 / std::numbers::sqrt2) &&
                close(m3, 1.0 / std::numbers::sqrt2)
          : close(m1, std::numbers::inv_sqrt3) && close(m2, std::numbers::inv_sqrt3) &&
                close(m3, std::numbers::inv_sqrt3);
  if (!consistent) {
    throw std::invalid_argument(
        "stage_b_coeffs: stage-A amplitudes (|c1|,|c2|,|c3|) = (" + std::to_string(m1) +
        ", " + std::to_string(m2) + ", " + std::to_string(m3) +
        ") are not the " + std::string(to_string(variant)) + " hand-off state");
  }

  StageBCoefficients d;
  d.variant = variant;
  d.rate = gB * gB + omegaB * omegaB;
  const Cx e = phase(d.rate, t, delta);
  const double weight = variant == Variant::Qubit ? std::numbers::sqrt2 : std::numbers::sqrt3;
  const Cx photon = (omegaB * omegaB + gB * gB * e) / (weight * d.rate);
  const Cx absorbed = (gB * omegaB * e - gB * omegaB) / (weight * d.rate);
  if (variant == Variant::Qubit) {
    d.amplitudes = {photon, photon, absorbed, absorbed};
  } else {
    d.amplitudes = {Cx(std::numbers::inv_sqrt3, 0.0), photon, photon, absorbed, absorbed};
  }
  return d;
}

double stage_a_drive(Variant variant, double gA) {
  return variant == Variant::Qubit ? std::numbers::sqrt2 * gA : (1.0 + std::numbers::sqrt3) * gA;
}

void ProtocolSchedule::validate() const {
  if (!(t1 > 0.0)) throw std::invalid_argument("schedule: t1 must be > 0");
  if (!(delay >= 0.0)) throw std::invalid_argument("schedule: delay must be >= 0");
  if (!(stage_b_duration > 0.0)) {
    throw std::invalid_argument("schedule: stage B duration must be > 0");
  }
}

ProtocolSchedule schedule(Variant variant, double gA, double gB, double delta,
                          double delay_fraction) {
  if (!(gA > 0.0) || !(gB > 0.0) || !(delta > 0.0)) {
    throw std::invalid_argument("schedule: gA, gB and delta must be > 0");
  }
  if (!(delay_fraction >= 0.0)) throw std::invalid_argument("schedule: delay must be >= 0");
  constexpr double pi = std::numbers::pi;
  ProtocolSchedule s;
  s.variant = variant;
  s.omegaA = stage_a_drive(variant, gA);
  s.omegaB = gB;
  s.t1 = variant == Variant::Qubit ? pi * delta / (4.0 * gA * gA)
                                   : pi * delta / (2.0 * (3.0 + std::numbers::sqrt3) * gA * gA);
  s.delay = delay_fraction * s.t1;
  s.stage_b_duration = pi * delta / (2.0 * gB * gB);
  return s;
}

}  // namespace cqed
