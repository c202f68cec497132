// Self-check suite behind `cqed verify`: closed-form versus numerical
// amplitudes, structural properties of the Hamiltonians and propagator
// consistency. The Hamiltonian builders are injectable so the suite itself
// can be mutation-tested.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cqed/analytic.hpp"
#include "cqed/hamiltonians.hpp"

namespace cqed {

using HamiltonianBuilder = std::function<Matrix(const HilbertSpace&, const PhysicalParams&)>;

struct VerifyOptions {
  /// Threshold for the closed-form versus numerical comparison.
  double tolerance = 1e-8;
  int draws = 100;
  std::uint64_t seed = 20120901;
  HamiltonianBuilder stage_a_effective = cqed::stage_a_effective;
  HamiltonianBuilder stage_b_effective = cqed::stage_b_effective;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Max |numerical - closed form| over the stage-A amplitudes after time t,
/// including any amplitude that leaks outside the three tracked states.
double stage_a_oracle_error(const HamiltonianBuilder& builder, const PhysicalParams& p,
                            double t);
/// Same for stage B, starting from the ideal hand-off state of `variant`.
double stage_b_oracle_error(const HamiltonianBuilder& builder, Variant variant,
                            const PhysicalParams& p, double t);

/// Random (OmegaA, gA, OmegaB, gB, delta, t) draw used by the oracle checks.
struct OracleDraw {
  PhysicalParams params;
  double t_a = 0.0;
  double t_b = 0.0;
};
std::vector<OracleDraw> oracle_draws(int count, std::uint64_t seed);

std::vector<Check> run_verification(const VerifyOptions& options = {});

}  // namespace cqed
