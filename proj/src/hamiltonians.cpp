#include "cqed/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cqed {

namespace {

using Triplet = Eigen::Triplet<Complex>;

Eigen::Index dim_of(const HilbertSpace& space) {
  return static_cast<Eigen::Index>(space.dim());
}

SparseMatrix from_triplets(const HilbertSpace& space,
                           const std::vector<Triplet>& entries) {
  SparseMatrix m(dim_of(space), dim_of(space));
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

SparseMatrix adjoint(const SparseMatrix& m) { return SparseMatrix(m.adjoint()); }

SparseMatrix diagonal_from(const HilbertSpace& space, auto&& value_of) {
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const double v = value_of(space.label(i));
    if (v != 0.0) {
      const auto k = static_cast<Eigen::Index>(i);
      entries.emplace_back(k, k, v);
    }
  }
  return from_triplets(space, entries);
}

}  // namespace

void PhysicalParams::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("PhysicalParams: " + what);
  };
  if (!(gA > 0.0)) fail("gA must be > 0");
  if (!(gB > 0.0)) fail("gB must be > 0");
  if (!(delta > 0.0)) fail("delta must be > 0");
  if (!(kappa >= 0.0)) fail("kappa must be >= 0");
  if (!(gamma >= 0.0)) fail("gamma must be >= 0");
  if (!std::isfinite(omegaA) || !std::isfinite(omegaB)) fail("drive must be finite");
}

bool PhysicalParams::large_detuning() const {
  return delta >= 5.0 * std::max({gA, gB, std::abs(omegaA), std::abs(omegaB)});
}

SparseMatrix atom_transition(const HilbertSpace& space, Site site, AtomLevel to,
                             AtomLevel from) {
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    BasisLabel l = space.label(i);
    AtomLevel& level = site == Site::A ? l.atomA : l.atomB;
    if (level != from) continue;
    level = to;
    entries.emplace_back(static_cast<Eigen::Index>(space.index(l)),
                         static_cast<Eigen::Index>(i), 1.0);
  }
  return from_triplets(space, entries);
}

SparseMatrix annihilator(const HilbertSpace& space, Polarization pol) {
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    BasisLabel l = space.label(i);
    int& n = pol == Polarization::L ? l.nL : l.nR;
    if (n == 0) continue;
    const double amp = std::sqrt(static_cast<double>(n));
    --n;
    entries.emplace_back(static_cast<Eigen::Index>(space.index(l)),
                         static_cast<Eigen::Index>(i), amp);
  }
  return from_triplets(space, entries);
}

SparseMatrix photon_number(const HilbertSpace& space) {
  return diagonal_from(space, [](const BasisLabel& l) {
    return static_cast<double>(l.nL + l.nR);
  });
}

Matrix mode_annihilator(const HilbertSpace& space, Polarization pol) {
  return Matrix(annihilator(space, pol));
}

Matrix excitation_number_a(const HilbertSpace& space) {
  return Matrix(diagonal_from(space, [](const BasisLabel& l) {
    const bool counted = l.atomA == AtomLevel::ga || l.atomA == AtomLevel::e0;
    return static_cast<double>(l.nL + l.nR + (counted ? 1 : 0));
  }));
}

Matrix excitation_number_b(const HilbertSpace& space) {
  return Matrix(diagonal_from(space, [](const BasisLabel& l) {
    const bool counted = l.atomB != AtomLevel::g0 && l.atomB != AtomLevel::ga;
    return static_cast<double>(l.nL + l.nR + (counted ? 1 : 0));
  }));
}

// -- TimeDependentHamiltonian -------------------------------------------------

TimeDependentHamiltonian::TimeDependentHamiltonian(SparseMatrix static_part,
                                                   SparseMatrix raising,
                                                   double detuning,
                                                   double clock_offset)
    : static_part_(std::move(static_part)),
      raising_(std::move(raising)),
      lowering_(adjoint(raising_)),
      detuning_(detuning),
      clock_offset_(clock_offset) {
  if (static_part_.rows() != static_part_.cols() ||
      raising_.rows() != raising_.cols() ||
      static_part_.rows() != raising_.rows()) {
    throw std::invalid_argument("TimeDependentHamiltonian: block shapes differ");
  }
  static_part_.makeCompressed();
  raising_.makeCompressed();
  lowering_.makeCompressed();
}

TimeDependentHamiltonian TimeDependentHamiltonian::constant(const Matrix& H) {
  if (H.rows() != H.cols()) {
    throw std::invalid_argument("TimeDependentHamiltonian: matrix is not square");
  }
  SparseMatrix s = H.sparseView(0.0, 0.0);
  SparseMatrix zero(H.rows(), H.cols());
  return {std::move(s), std::move(zero), 0.0};
}

double TimeDependentHamiltonian::period() const {
  if (is_constant()) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / std::abs(detuning_);
}

Matrix TimeDependentHamiltonian::at(double t) const {
  Matrix h(static_part_);
  if (raising_.nonZeros() == 0) return h;
  const Complex ph = std::polar(1.0, -detuning_ * (t + clock_offset_));
  h += ph * Matrix(raising_) + std::conj(ph) * Matrix(lowering_);
  return h;
}

TimeDependentHamiltonian TimeDependentHamiltonian::plus_static(
    const SparseMatrix& extra) const {
  return {SparseMatrix(static_part_ + extra), raising_, detuning_, clock_offset_};
}

// -- Stage A ------------------------------------------------------------------
//
// Drive Omega_A couples ga <-> e0; the cavity couples gR <-> e0 via a_R and
// gL <-> e0 via a_L, both with strength gA.

SparseMatrix stage_a_raising(const HilbertSpace& space, const PhysicalParams& p) {
  using L = AtomLevel;
  const SparseMatrix aL = annihilator(space, Polarization::L);
  const SparseMatrix aR = annihilator(space, Polarization::R);
  SparseMatrix c = p.omegaA * atom_transition(space, Site::A, L::e0, L::ga);
  c += p.gA * SparseMatrix(aR * atom_transition(space, Site::A, L::e0, L::gR));
  c += p.gA * SparseMatrix(aL * atom_transition(space, Site::A, L::e0, L::gL));
  return c;
}

TimeDependentHamiltonian stage_a_rule(const HilbertSpace& space,
                                      const PhysicalParams& p) {
  return {SparseMatrix(dim_of(space), dim_of(space)), stage_a_raising(space, p),
          p.delta};
}

Matrix stage_a_full(const HilbertSpace& space, const PhysicalParams& p, double t) {
  return stage_a_rule(space, p).at(t);
}

std::vector<HamiltonianTerm> stage_a_effective_terms(const HilbertSpace& space,
                                                     const PhysicalParams& p) {
  using L = AtomLevel;
  const SparseMatrix aL = annihilator(space, Polarization::L);
  const SparseMatrix aR = annihilator(space, Polarization::R);
  const SparseMatrix aLd = adjoint(aL);
  const SparseMatrix aRd = adjoint(aR);
  auto tr = [&](L to, L from) { return atom_transition(space, Site::A, to, from); };

  const double stark = p.omegaA * p.omegaA / p.delta;
  const double cavity = p.gA * p.gA / p.delta;
  const double raman = p.omegaA * p.gA / p.delta;

  std::vector<HamiltonianTerm> terms;
  terms.push_back({"stark |ga><ga|", Matrix(stark * tr(L::ga, L::ga))});

  SparseMatrix photon = SparseMatrix(aLd * aL) * tr(L::gL, L::gL);
  photon += SparseMatrix(aRd * aR) * tr(L::gR, L::gR);
  terms.push_back({"photon-number shift", Matrix(cavity * photon)});

  SparseMatrix cross = SparseMatrix(aLd * aR) * tr(L::gL, L::gR);
  cross += SparseMatrix(aRd * aL) * tr(L::gR, L::gL);
  terms.push_back({"cross-mode Raman", Matrix(cavity * cross)});

  SparseMatrix flip = aRd * tr(L::gR, L::ga);
  flip += SparseMatrix(aLd * tr(L::gL, L::ga));
  terms.push_back({"Raman emission + H.c.",
                   Matrix(raman * SparseMatrix(flip + adjoint(flip)))});
  return terms;
}

Matrix stage_a_effective(const HilbertSpace& space, const PhysicalParams& p) {
  Matrix h = Matrix::Zero(dim_of(space), dim_of(space));
  for (const auto& term : stage_a_effective_terms(space, p)) h += term.matrix;
  return h;
}

// -- Stage B ------------------------------------------------------------------
//
// Drive Omega_B couples gL <-> eL and gR <-> eR; the cavity couples
// g0 <-> eR via a_L and g0 <-> eL via a_R, both with strength gB.

SparseMatrix stage_b_raising(const HilbertSpace& space, const PhysicalParams& p) {
  using L = AtomLevel;
  const SparseMatrix aL = annihilator(space, Polarization::L);
  const SparseMatrix aR = annihilator(space, Polarization::R);
  auto tr = [&](L to, L from) { return atom_transition(space, Site::B, to, from); };
  SparseMatrix c = p.omegaB * SparseMatrix(tr(L::eL, L::gL) + tr(L::eR, L::gR));
  c += p.gB * SparseMatrix(aL * tr(L::eR, L::g0));
  c += p.gB * SparseMatrix(aR * tr(L::eL, L::g0));
  return c;
}

TimeDependentHamiltonian stage_b_rule(const HilbertSpace& space,
                                      const PhysicalParams& p,
                                      double clock_offset) {
  return {SparseMatrix(dim_of(space), dim_of(space)), stage_b_raising(space, p),
          p.delta, clock_offset};
}

Matrix stage_b_full(const HilbertSpace& space, const PhysicalParams& p, double t) {
  return stage_b_rule(space, p).at(t);
}

std::vector<HamiltonianTerm> stage_b_effective_terms(const HilbertSpace& space,
                                                     const PhysicalParams& p) {
  using L = AtomLevel;
  const SparseMatrix aL = annihilator(space, Polarization::L);
  const SparseMatrix aR = annihilator(space, Polarization::R);
  auto tr = [&](L to, L from) { return atom_transition(space, Site::B, to, from); };

  const double stark = p.omegaB * p.omegaB / p.delta;
  const double cavity = p.gB * p.gB / p.delta;
  const double raman = p.omegaB * p.gB / p.delta;

  std::vector<HamiltonianTerm> terms;
  terms.push_back({"stark |gL><gL| + |gR><gR|",
                   Matrix(stark * SparseMatrix(tr(L::gL, L::gL) + tr(L::gR, L::gR)))});
  terms.push_back({"photon-number shift on g0",
                   Matrix(cavity * SparseMatrix(photon_number(space) * tr(L::g0, L::g0)))});

  SparseMatrix absorb = aR * tr(L::gL, L::g0);
  absorb += SparseMatrix(aL * tr(L::gR, L::g0));
  terms.push_back({"Raman absorption + H.c.",
                   Matrix(raman * SparseMatrix(absorb + adjoint(absorb)))});
  return terms;
}

Matrix stage_b_effective(const HilbertSpace& space, const PhysicalParams& p) {
  Matrix h = Matrix::Zero(dim_of(space), dim_of(space));
  for (const auto& term : stage_b_effective_terms(space, p)) h += term.matrix;
  return h;
}

// -- Decay --------------------------------------------------------------------

SparseMatrix conditional_decay(const HilbertSpace& space, const PhysicalParams& p) {
  SparseMatrix d = diagonal_from(space, [&](const BasisLabel& l) {
    const int excited = (is_excited(l.atomA) ? 1 : 0) + (is_excited(l.atomB) ? 1 : 0);
    return p.kappa * static_cast<double>(l.nL + l.nR) + 0.5 * p.gamma * excited;
  });
  return Complex(0.0, -1.0) * d;
}

Matrix add_conditional_decay(const Matrix& H, const HilbertSpace& space,
                             const PhysicalParams& p) {
  if (static_cast<std::size_t>(H.rows()) != space.dim() || H.rows() != H.cols()) {
    throw std::invalid_argument("add_conditional_decay: matrix does not match space");
  }
  if (p.kappa == 0.0 && p.gamma == 0.0) return H;
  return H + Matrix(conditional_decay(space, p));
}

}  // namespace cqed
