// Closed-form amplitudes of the effective two-stage dynamics and the protocol
// timings. Serves as the independent reference for the numerical propagator.
//
// Stage A starts from |ga>|0>. The effective generator acting on the span of
// {|ga,0>, |gL,L>, |gR,R>} is v v^T / delta with v = (OmegaA, gA, gA), so the
// amplitudes only pick up a phase along v:
//
//   c1(t) = (2 gA^2 + OmegaA^2 e^{-i eta t / delta}) / eta
//   c2(t) = c3(t) = gA OmegaA (e^{-i eta t / delta} - 1) / eta
//   eta   = 2 gA^2 + OmegaA^2
//
// Stage B acts on each photon branch through a two-level Raman pair with
// xi = zeta = gB^2 + OmegaB^2:
//
//   qubit:  d1 = d2 = (OmegaB^2 + gB^2 e^{-i xi t / delta}) / (sqrt(2) xi)
//           d3 = d4 = gB OmegaB (e^{-i xi t / delta} - 1) / (sqrt(2) xi)
//   qutrit: d1' = 1/sqrt(3), d2' = d3', d4' = d5' with sqrt(3) in place of sqrt(2)
//
// Values are returned literally; at the protocol times they carry a common
// factor of -1 relative to the ideal targets.
//
// Qutrit drive check: with OmegaA = (1 + sqrt 3) gA, eta = 2 (3 + sqrt 3) gA^2
// and at eta t / delta = pi all three stage-A amplitudes equal -1/sqrt(3).
#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

namespace cqed {

enum class Variant { Qubit, Qutrit };
std::string_view to_string(Variant v);

struct StageACoefficients {
  std::complex<double> c1, c2, c3;
  double eta = 0.0;

  double norm2() const;
};

struct StageBCoefficients {
  Variant variant = Variant::Qubit;
  /// d1..d4 for the qubit variant, d'1..d'5 for the qutrit variant.
  std::vector<std::complex<double>> amplitudes;
  /// xi (qubit) or zeta (qutrit); both equal gB^2 + OmegaB^2.
  double rate = 0.0;

  double norm2() const;
};

StageACoefficients stage_a_coeffs(double gA, double omegaA, double delta, double t);

/// `stage_a_final` must describe the hand-off state of the variant: for the
/// qubit, |c1| = 0 and |c2| = |c3| = 1/sqrt(2); for the qutrit, all three
/// magnitudes 1/sqrt(3). It is used for validation only. Throws
/// std::invalid_argument otherwise.
StageBCoefficients stage_b_coeffs(Variant variant, double gB, double omegaB,
                                  double delta, double t_since_stage_start,
                                  const StageACoefficients& stage_a_final);

/// OmegaA that produces the variant's stage-A superposition.
double stage_a_drive(Variant variant, double gA);

struct ProtocolSchedule {
  Variant variant = Variant::Qubit;
  double omegaA = 0.0;
  double omegaB = 0.0;
  double t1 = 0.0;
  /// t1' - t1.
  double delay = 0.0;
  /// t2 - t1'.
  double stage_b_duration = 0.0;

  double t1_prime() const { return t1 + delay; }
  double t2() const { return t1 + delay + stage_b_duration; }
  void validate() const;
};

inline constexpr double kDefaultDelayFraction = 0.1;

/// qubit:  OmegaA = sqrt(2) gA,      t1 = pi delta / (4 gA^2)
/// qutrit: OmegaA = (1 + sqrt 3) gA, t1 = pi delta / (2 (3 + sqrt 3) gA^2)
/// both:   OmegaB = gB,              t2 - t1' = pi delta / (2 gB^2)
ProtocolSchedule schedule(Variant variant, double gA, double gB, double delta,
                          double delay_fraction = kDefaultDelayFraction);

}  // namespace cqed
