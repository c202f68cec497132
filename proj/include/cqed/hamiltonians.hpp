// Interaction-picture and adiabatically eliminated Hamiltonians for the two
// stages of the protocol, plus the conditional (no-jump) decay extension.
//
// Units: every frequency is measured in units of the stage-A coupling gA and
// every time in units of 1/gA. The experimental point
//   (g, kappa, gamma) / 2pi = (750, 2.6, 3.5) MHz
// maps to (1, 0.003467, 0.004667) in these units.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "cqed/state_space.hpp"

namespace cqed {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

struct PhysicalParams {
  double gA = 1.0;
  double gB = 1.0;
  double omegaA = 1.4142135623730951;  // sqrt(2) gA: qubit drive
  double omegaB = 1.0;
  double delta = 10.0;
  double kappa = 0.0;
  double gamma = 0.0;

  /// Throws std::invalid_argument unless gA, gB, delta > 0 and kappa,
  /// gamma >= 0.
  void validate() const;
  /// False when delta < 5 * max(gA, gB, omegaA, omegaB). Advisory only.
  bool large_detuning() const;
};

enum class Polarization { L, R };
enum class Site { A, B };

struct HamiltonianTerm {
  std::string description;
  Matrix matrix;
};

// Sparse building blocks.
SparseMatrix atom_transition(const HilbertSpace& space, Site site,
                             AtomLevel to, AtomLevel from);
SparseMatrix annihilator(const HilbertSpace& space, Polarization pol);
SparseMatrix photon_number(const HilbertSpace& space);

/// Truncated bosonic lowering operator on one cavity mode.
Matrix mode_annihilator(const HilbertSpace& space, Polarization pol);

/// Excitation numbers conserved by the stage-A and stage-B couplings:
///   Q_A = nL + nR + [atomA in {ga, e0}]
///   Q_B = nL + nR + [atomB not in {g0, ga}]
Matrix excitation_number_a(const HilbertSpace& space);
Matrix excitation_number_b(const HilbertSpace& space);

/// Explicitly time-dependent Hamiltonian of the form
///
///   H(t) = S + exp(-i delta (t + offset)) C + exp(+i delta (t + offset)) C^dag
///
/// where S is a constant (possibly non-Hermitian) part and C raises atoms
/// into excited levels. Evaluation at any t is one scalar phase per block.
class TimeDependentHamiltonian {
 public:
  TimeDependentHamiltonian(SparseMatrix static_part, SparseMatrix raising,
                           double detuning, double clock_offset = 0.0);

  /// Constant rule, H(t) = H.
  static TimeDependentHamiltonian constant(const Matrix& H);

  Eigen::Index dim() const { return static_part_.rows(); }
  bool is_constant() const { return raising_.nonZeros() == 0 || detuning_ == 0.0; }
  double detuning() const { return detuning_; }
  double clock_offset() const { return clock_offset_; }
  /// Period of the time dependence; +inf for constant rules.
  double period() const;

  const SparseMatrix& static_part() const { return static_part_; }
  const SparseMatrix& raising() const { return raising_; }

  Matrix at(double t) const;

  /// out = H(t) * in, for a vector or a block of column vectors.
  template <typename In, typename Out>
  void apply(double t, const In& in, Out& out) const {
    out.noalias() = static_part_ * in;
    if (raising_.nonZeros() == 0) return;
    const Complex ph = std::polar(1.0, -detuning_ * (t + clock_offset_));
    out.noalias() += ph * (raising_ * in);
    out.noalias() += std::conj(ph) * (lowering_ * in);
  }

  /// Returns a copy with `extra` added to the constant part.
  TimeDependentHamiltonian plus_static(const SparseMatrix& extra) const;

 private:
  SparseMatrix static_part_;
  SparseMatrix raising_;
  SparseMatrix lowering_;
  double detuning_;
  double clock_offset_;
};

/// Coupling amplitudes into excited levels (the e^{-i delta t} block).
SparseMatrix stage_a_raising(const HilbertSpace& space, const PhysicalParams& p);
SparseMatrix stage_b_raising(const HilbertSpace& space, const PhysicalParams& p);

TimeDependentHamiltonian stage_a_rule(const HilbertSpace& space,
                                      const PhysicalParams& p);
/// `clock_offset` shifts the stage-local clock used in the drive phase.
TimeDependentHamiltonian stage_b_rule(const HilbertSpace& space,
                                      const PhysicalParams& p,
                                      double clock_offset = 0.0);

Matrix stage_a_full(const HilbertSpace& space, const PhysicalParams& p, double t);
Matrix stage_b_full(const HilbertSpace& space, const PhysicalParams& p, double t);

/// Individual terms of the effective Hamiltonians; they sum to the matrices
/// returned by stage_a_effective / stage_b_effective.
std::vector<HamiltonianTerm> stage_a_effective_terms(const HilbertSpace& space,
                                                     const PhysicalParams& p);
std::vector<HamiltonianTerm> stage_b_effective_terms(const HilbertSpace& space,
                                                     const PhysicalParams& p);

Matrix stage_a_effective(const HilbertSpace& space, const PhysicalParams& p);
Matrix stage_b_effective(const HilbertSpace& space, const PhysicalParams& p);

/// -i kappa (nL + nR) - i gamma/2 (sum of excited-level projectors of both
/// atoms).
SparseMatrix conditional_decay(const HilbertSpace& space, const PhysicalParams& p);

/// H - i kappa (a_L^dag a_L + a_R^dag a_R) - i (gamma/2) P_excited.
Matrix add_conditional_decay(const Matrix& H, const HilbertSpace& space,
                             const PhysicalParams& p);

}  // namespace cqed
