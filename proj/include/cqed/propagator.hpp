// Time evolution of state vectors: matrix exponentials for constant
// (possibly non-Hermitian) generators, adaptive Dormand-Prince stepping for
// the explicitly time-dependent interaction-picture Hamiltonians, and a
// stroboscopic (one-period propagator) path for very large detunings.
#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cqed/hamiltonians.hpp"
#include "cqed/state_space.hpp"

namespace cqed {

inline constexpr int kDefaultSamples = 400;
inline constexpr double kDefaultTolerance = 1e-10;

/// Raised when adaptive stepping cannot continue.
class PropagationError : public std::runtime_error {
 public:
  PropagationError(const std::string& what, double time_reached)
      : std::runtime_error(what), time_reached_(time_reached) {}
  double time_reached() const { return time_reached_; }

 private:
  double time_reached_;
};

enum class ExpMethod {
  ScalingSquaring,
  /// Diagonalize H; falls back to scaling-and-squaring when the eigenvector
  /// matrix is too ill-conditioned.
  Eigendecomposition,
};

struct ExpOptions {
  ExpMethod method = ExpMethod::ScalingSquaring;
  double max_condition = 1e8;
};

/// exp(-i H t).
Matrix propagator_matrix(const Matrix& H, double t, const ExpOptions& opts = {});

StateVector evolve_constant(const Matrix& H, const StateVector& psi0, double t,
                            const ExpOptions& opts = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> norms;

  std::size_t size() const { return times.size(); }
  const StateVector& final_state() const { return states.back(); }
  /// Copy with every sample time shifted by `offset`.
  Trajectory shifted(double offset) const;
};

struct StepStatistics {
  long accepted = 0;
  long rejected = 0;
};

/// Uniform sampling of exp(-i H t) psi0 on [0, duration].
Trajectory evolve_constant_sampled(const Matrix& H, const StateVector& psi0,
                                   double duration,
                                   int sample_count = kDefaultSamples,
                                   const ExpOptions& opts = {});

/// Adaptive integration of i dpsi/dt = H(t) psi with the local error of each
/// step below `tolerance` (mixed absolute/relative). Samples uniformly on
/// [0, duration] in the rule's local clock.
Trajectory evolve_timedep(const TimeDependentHamiltonian& rule,
                          const StateVector& psi0, double duration,
                          double tolerance = kDefaultTolerance,
                          int sample_count = kDefaultSamples,
                          StepStatistics* stats = nullptr);

/// Same contract as evolve_timedep for a periodic rule. Integrates the
/// propagator over one period once and raises it to integer powers, so the
/// cost is independent of the number of fast oscillations.
Trajectory evolve_stroboscopic(const TimeDependentHamiltonian& rule,
                               const StateVector& psi0, double duration,
                               double tolerance = kDefaultTolerance,
                               int sample_count = kDefaultSamples);

/// Generator for a propagation: either a constant matrix or a time rule.
struct PropagationRequest {
  std::variant<Matrix, TimeDependentHamiltonian> hamiltonian;
  StateVector initial;
  double duration = 0.0;
  int sample_count = kDefaultSamples;
  double tolerance = kDefaultTolerance;
  /// Switch to evolve_stroboscopic when the run spans more fast periods.
  double stroboscopic_threshold = 2e4;

  void validate() const;
};

Trajectory propagate(const PropagationRequest& request);

/// Population selector: a named predicate over basis labels.
class Selector {
 public:
  Selector(std::string name, std::function<bool(const BasisLabel&)> match)
      : name_(std::move(name)), match_(std::move(match)) {}

  static Selector state(const BasisLabel& label);
  static Selector states(std::string name, std::vector<BasisLabel> labels);
  /// All basis states holding at least one photon.
  static Selector photon();
  /// All basis states with exactly `n` photons in total.
  static Selector photon_count(int n);
  /// Either atom in an excited level.
  static Selector excited();

  const std::string& name() const { return name_; }
  bool matches(const BasisLabel& label) const { return match_(label); }

 private:
  std::string name_;
  std::function<bool(const BasisLabel&)> match_;
};

struct PopulationTable {
  std::vector<double> times;
  std::vector<std::string> names;
  /// series[selector][sample]
  std::vector<std::vector<double>> series;
};

PopulationTable populations(const Trajectory& traj, std::span<const Selector> selectors);

/// Summed population of the states matching `selector`.
double population(const StateVector& psi, const Selector& selector);

}  // namespace cqed
