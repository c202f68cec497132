#include "cqed/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cqed/propagator.hpp"
#include "cqed/protocol.hpp"

namespace cqed {

namespace {

using L = AtomLevel;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

double leak_outside(const StateVector& psi, const std::vector<BasisLabel>& tracked) {
  double worst = 0.0;
  const HilbertSpace& space = psi.space();
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const BasisLabel l = space.label(i);
    if (std::find(tracked.begin(), tracked.end(), l) != tracked.end()) continue;
    worst = std::max(worst, std::abs(psi.amplitudes()[static_cast<Eigen::Index>(i)]));
  }
  return worst;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return (m + m.adjoint()) / (2.0 * std::sqrt(static_cast<double>(n)));
}

Matrix random_decaying(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> rate(0.0, 0.5);
  Matrix m = random_hermitian(rng, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) -= Complex(0.0, rate(rng));
  return m;
}

}  // namespace

double stage_a_oracle_error(const HamiltonianBuilder& builder, const PhysicalParams& p,
                            double t) {
  const HilbertSpace space = build_space(1);
  const StateVector psi = evolve_constant(builder(space, p), initial_state(space), t);
  const StageACoefficients c = stage_a_coeffs(p.gA, p.omegaA, p.delta, t);
  const std::vector<BasisLabel> tracked = {
      {L::ga, L::g0, 0, 0}, {L::gL, L::g0, 1, 0}, {L::gR, L::g0, 0, 1}};
  const Complex expected[] = {c.c1, c.c2, c.c3};
  double err = leak_outside(psi, tracked);
  for (std::size_t k = 0; k < tracked.size(); ++k) {
    err = std::max(err, std::abs(psi.amplitude(tracked[k]) - expected[k]));
  }
  return err;
}

double stage_b_oracle_error(const HamiltonianBuilder& builder, Variant variant,
                            const PhysicalParams& p, double t) {
  const HilbertSpace space = build_space(1);
  const StateVector start = target_state(space, variant, Stage::A);
  const StateVector psi = evolve_constant(builder(space, p), start, t);

  StageACoefficients handoff;
  if (variant == Variant::Qubit) {
    handoff.c2 = handoff.c3 = 1.0 / std::numbers::sqrt2;
  } else {
    handoff.c1 = handoff.c2 = handoff.c3 = std::numbers::inv_sqrt3;
  }
  const StageBCoefficients d = stage_b_coeffs(variant, p.gB, p.omegaB, p.delta, t, handoff);

  std::vector<BasisLabel> tracked;
  if (variant == Variant::Qutrit) tracked.push_back({L::ga, L::g0, 0, 0});
  tracked.push_back({L::gL, L::g0, 1, 0});
  tracked.push_back({L::gR, L::g0, 0, 1});
  tracked.push_back({L::gL, L::gR, 0, 0});
  tracked.push_back({L::gR, L::gL, 0, 0});

  double err = leak_outside(psi, tracked);
  for (std::size_t k = 0; k < tracked.size(); ++k) {
    err = std::max(err, std::abs(psi.amplitude(tracked[k]) - d.amplitudes[k]));
  }
  return err;
}

std::vector<OracleDraw> oracle_draws(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coupling(0.5, 2.0);
  std::uniform_real_distribution<double> drive(0.2, 3.0);
  std::uniform_real_distribution<double> detuning(5.0, 100.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<OracleDraw> draws;
  for (int i = 0; i < count; ++i) {
    OracleDraw d;
    d.params.gA = coupling(rng);
    d.params.gB = coupling(rng);
    d.params.omegaA = drive(rng);
    d.params.omegaB = drive(rng);
    d.params.delta = detuning(rng);
    // Up to two periods of each stage's closed-form oscillation.
    const double eta = 2.0 * d.params.gA * d.params.gA + d.params.omegaA * d.params.omegaA;
    const double xi = d.params.gB * d.params.gB + d.params.omegaB * d.params.omegaB;
    d.t_a = unit(rng) * 4.0 * std::numbers::pi * d.params.delta / eta;
    d.t_b = unit(rng) * 4.0 * std::numbers::pi * d.params.delta / xi;
    draws.push_back(d);
  }
  return draws;
}

std::vector<Check> run_verification(const VerifyOptions& opt) {
  std::vector<Check> checks;
  auto record = [&](std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  };

  // Closed form against numerical exponentials.
  {
    const auto draws = oracle_draws(opt.draws, opt.seed);
    double ea = 0.0, eq = 0.0, et = 0.0;
    for (const auto& d : draws) {
      ea = std::max(ea, stage_a_oracle_error(opt.stage_a_effective, d.params, d.t_a));
      eq = std::max(eq, stage_b_oracle_error(opt.stage_b_effective, Variant::Qubit, d.params, d.t_b));
      et = std::max(et, stage_b_oracle_error(opt.stage_b_effective, Variant::Qutrit, d.params, d.t_b));
    }
    const std::string of = " over " + std::to_string(draws.size()) + " draws (limit " +
                           sci(opt.tolerance) + ")";
    record("oracle: stage A c1..c3", ea <= opt.tolerance, "max error " + sci(ea) + of);
    record("oracle: stage B qubit d1..d4", eq <= opt.tolerance, "max error " + sci(eq) + of);
    record("oracle: stage B qutrit d'1..d'5", et <= opt.tolerance, "max error " + sci(et) + of);
  }

  const HilbertSpace space = build_space(2);
  PhysicalParams p;
  p.omegaA = 1.3;
  p.omegaB = 0.7;
  p.gB = 1.1;
  p.delta = 12.0;

  // Hermiticity and excitation-number conservation.
  {
    const Matrix qa = excitation_number_a(space);
    const Matrix qb = excitation_number_b(space);
    double herm = 0.0, comm = 0.0;
    for (double t : {0.0, 0.37, 1.9, 13.1}) {
      const Matrix ha = stage_a_full(space, p, t);
      const Matrix hb = stage_b_full(space, p, t);
      herm = std::max({herm, max_abs(ha - ha.adjoint()), max_abs(hb - hb.adjoint())});
      comm = std::max({comm, max_abs(ha * qa - qa * ha), max_abs(hb * qb - qb * hb)});
    }
    const Matrix ea = opt.stage_a_effective(space, p);
    const Matrix eb = opt.stage_b_effective(space, p);
    herm = std::max({herm, max_abs(ea - ea.adjoint()), max_abs(eb - eb.adjoint())});
    comm = std::max({comm, max_abs(ea * qa - qa * ea), max_abs(eb * qb - qb * eb)});
    record("hermiticity", herm < 1e-12, "max |H - H^dag| = " + sci(herm));
    record("excitation conservation", comm < 1e-12, "max |[H, Q]| = " + sci(comm));
  }

  // Effective Hamiltonians equal the second-order contraction C^dag C / delta.
  {
    const Matrix ca(stage_a_raising(space, p));
    const Matrix cb(stage_b_raising(space, p));
    const double da = max_abs(opt.stage_a_effective(space, p) - ca.adjoint() * ca / p.delta);
    const double db = max_abs(opt.stage_b_effective(space, p) - cb.adjoint() * cb / p.delta);
    const double worst = std::max(da, db);
    record("second-order consistency", worst < 1e-12, "max deviation " + sci(worst));
  }

  // Matrix exponential against adaptive stepping on random generators, padded
  // into the smallest space so both routes take a StateVector.
  {
    std::mt19937_64 rng(opt.seed + 1);
    const HilbertSpace small = build_space(1);
    const auto dim = static_cast<Eigen::Index>(small.dim());
    double worst = 0.0;
    for (Eigen::Index n : {8, 20, 50}) {
      for (bool decaying : {false, true}) {
        Matrix h = Matrix::Zero(dim, dim);
        h.topLeftCorner(n, n) = decaying ? random_decaying(rng, n) : random_hermitian(rng, n);
        StateVector psi0(small);
        psi0.amplitudes()[0] = 1.0;
        const StateVector exact = evolve_constant(h, psi0, 3.0);
        const Trajectory traj =
            evolve_timedep(TimeDependentHamiltonian::constant(h), psi0, 3.0, 1e-10, 2);
        worst = std::max(worst, max_abs(traj.final_state().amplitudes() - exact.amplitudes()));
      }
    }
    record("propagator cross-validation", worst < 1e-8, "max amplitude difference " + sci(worst));
  }

  // Conditional decay keeps every eigenvalue in the lower half plane.
  {
    PhysicalParams lossy = p;
    lossy.kappa = 0.05;
    lossy.gamma = 0.02;
    const HilbertSpace small = build_space(1);
    const Matrix h = add_conditional_decay(opt.stage_a_effective(small, lossy), small, lossy);
    const Eigen::ComplexEigenSolver<Matrix> es(h, false);
    const double top = es.eigenvalues().imag().maxCoeff();
    record("decay spectrum", top <= 1e-12, "max Im(lambda) = " + sci(top));
  }

  // Ideal protocols against the closed-form end state, and against the
  // nominal target for reference.
  for (Variant v : {Variant::Qubit, Variant::Qutrit}) {
    ProtocolConfig cfg;
    cfg.variant = v;
    const SimResult r = run_protocol(cfg);
    const HilbertSpace& sp = r.final_state.space();
    const PhysicalParams rp = cfg.resolved_params();
    const StageBCoefficients d =
        stage_b_coeffs(v, rp.gB, rp.omegaB, rp.delta, r.schedule.stage_b_duration,
                       stage_a_coeffs(rp.gA, rp.omegaA, rp.delta, r.schedule.t1));
    StateVector closed(sp);
    const auto selectors = figure_selectors(v, Stage::B);
    for (std::size_t i = 0; i < d.amplitudes.size(); ++i) {
      for (std::size_t k = 0; k < sp.dim(); ++k) {
        if (selectors[i].matches(sp.label(k))) {
          closed.amplitudes()[static_cast<Eigen::Index>(k)] = d.amplitudes[i];
        }
      }
    }
    const double f = std::norm(overlap(closed.normalized(), r.final_state));
    const bool ok = f >= 1.0 - 1e-9 && std::abs(r.success_probability - 1.0) <= 1e-9;
    record(std::string("ideal ") + std::string(to_string(v)) + " protocol", ok,
           "1 - F(closed form) = " + sci(1.0 - f) +
               ", F(nominal target) = " + std::to_string(r.fidelity_unconditional));
  }
  return checks;
}

}  // namespace cqed
