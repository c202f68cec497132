#include "cqed/state_space.hpp"

#include <stdexcept>

namespace cqed {

std::string_view to_string(AtomLevel l) {
  switch (l) {
    case AtomLevel::gL: return "gL";
    case AtomLevel::g0: return "g0";
    case AtomLevel::gR: return "gR";
    case AtomLevel::ga: return "ga";
    case AtomLevel::eL: return "eL";
    case AtomLevel::e0: return "e0";
    case AtomLevel::eR: return "eR";
  }
  return "?";
}

std::string to_string(const BasisLabel& label) {
  std::string s = "|";
  s += to_string(label.atomA);
  s += ',';
  s += to_string(label.atomB);
  s += ',' + std::to_string(label.nL) + ',' + std::to_string(label.nR) + '>';
  return s;
}

HilbertSpace::HilbertSpace(int n_max)
    : n_max_(n_max),
      dim_(static_cast<std::size_t>(kLevelCount * kLevelCount) *
           static_cast<std::size_t>(n_max + 1) *
           static_cast<std::size_t>(n_max + 1)) {}

HilbertSpace build_space(int n_max) {
  if (n_max < 1) {
    throw std::invalid_argument(
        "build_space: n_max must be >= 1 (each cavity mode has to hold one "
        "photon for the protocol), got " + std::to_string(n_max));
  }
  return HilbertSpace(n_max);
}

bool HilbertSpace::contains(const BasisLabel& l) const {
  return l.nL >= 0 && l.nL <= n_max_ && l.nR >= 0 && l.nR <= n_max_;
}

std::size_t HilbertSpace::index(const BasisLabel& l) const {
  if (!contains(l)) {
    throw std::out_of_range("HilbertSpace: photon occupation of " +
                            to_string(l) + " exceeds n_max=" +
                            std::to_string(n_max_));
  }
  const std::size_t m = static_cast<std::size_t>(n_max_ + 1);
  const auto a = static_cast<std::size_t>(l.atomA);
  const auto b = static_cast<std::size_t>(l.atomB);
  return ((a * kLevelCount + b) * m + static_cast<std::size_t>(l.nL)) * m +
         static_cast<std::size_t>(l.nR);
}

BasisLabel HilbertSpace::label(std::size_t i) const {
  if (i >= dim_) throw std::out_of_range("HilbertSpace: index out of range");
  const std::size_t m = static_cast<std::size_t>(n_max_ + 1);
  BasisLabel l;
  l.nR = static_cast<int>(i % m);
  i /= m;
  l.nL = static_cast<int>(i % m);
  i /= m;
  l.atomB = static_cast<AtomLevel>(i % kLevelCount);
  l.atomA = static_cast<AtomLevel>(i / kLevelCount);
  return l;
}

StateVector::StateVector(HilbertSpace space, Vector amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim()) {
    throw std::invalid_argument("StateVector: amplitude count " +
                                std::to_string(amplitudes_.size()) +
                                " does not match dim " +
                                std::to_string(space_.dim()));
  }
}

StateVector::StateVector(HilbertSpace space)
    : space_(space),
      amplitudes_(Vector::Zero(static_cast<Eigen::Index>(space.dim()))) {}

StateVector StateVector::normalized() const {
  const double n = amplitudes_.norm();
  if (n == 0.0) return *this;
  return StateVector(space_, amplitudes_ / n);
}

StateVector basis_state(const HilbertSpace& space, const BasisLabel& label) {
  StateVector s(space);
  s.amplitudes()[static_cast<Eigen::Index>(space.index(label))] = 1.0;
  return s;
}

Complex overlap(const StateVector& a, const StateVector& b) {
  if (!(a.space() == b.space())) {
    throw std::invalid_argument("overlap: states belong to different spaces (n_max " +
                                std::to_string(a.space().n_max()) + " vs " +
                                std::to_string(b.space().n_max()) + ")");
  }
  return a.amplitudes().dot(b.amplitudes());
}

}  // namespace cqed
