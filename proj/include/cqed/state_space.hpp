// Composite Hilbert space of two seven-level atoms and a two-mode (L, R)
// truncated cavity field.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace cqed {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Atomic levels. Four ground levels followed by three excited levels; the
/// enumeration order fixes the basis ordering.
enum class AtomLevel : int { gL = 0, g0, gR, ga, eL, e0, eR };

inline constexpr int kLevelCount = 7;
inline constexpr std::array<AtomLevel, kLevelCount> kAllLevels = {
    AtomLevel::gL, AtomLevel::g0, AtomLevel::gR, AtomLevel::ga,
    AtomLevel::eL, AtomLevel::e0, AtomLevel::eR};

constexpr bool is_excited(AtomLevel l) {
  return l == AtomLevel::eL || l == AtomLevel::e0 || l == AtomLevel::eR;
}

std::string_view to_string(AtomLevel l);

/// One product basis state |atomA, atomB, nL, nR>.
struct BasisLabel {
  AtomLevel atomA = AtomLevel::ga;
  AtomLevel atomB = AtomLevel::g0;
  int nL = 0;
  int nR = 0;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

std::string to_string(const BasisLabel& label);

/// Basis enumeration with a lexicographic index over (atomA, atomB, nL, nR),
/// the photon numbers varying fastest. Immutable; cheap to copy.
class HilbertSpace {
 public:
  int n_max() const { return n_max_; }
  std::size_t dim() const { return dim_; }

  bool contains(const BasisLabel& label) const;
  /// Throws std::out_of_range for labels outside the truncation.
  std::size_t index(const BasisLabel& label) const;
  BasisLabel label(std::size_t index) const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  friend HilbertSpace build_space(int n_max);
  explicit HilbertSpace(int n_max);

  int n_max_;
  std::size_t dim_;
};

/// Requires n_max >= 1; a zero-photon truncation cannot carry the protocol.
HilbertSpace build_space(int n_max);

/// Amplitudes over a HilbertSpace. Under conditional (no-jump) evolution the
/// norm may fall below one.
class StateVector {
 public:
  StateVector(HilbertSpace space, Vector amplitudes);
  explicit StateVector(HilbertSpace space);

  const HilbertSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Vector& amplitudes() { return amplitudes_; }

  Complex amplitude(const BasisLabel& label) const {
    return amplitudes_[static_cast<Eigen::Index>(space_.index(label))];
  }
  double population(const BasisLabel& label) const {
    return std::norm(amplitude(label));
  }
  double norm2() const { return amplitudes_.squaredNorm(); }
  /// Returns a unit-norm copy; a zero vector is returned unchanged.
  StateVector normalized() const;

 private:
  HilbertSpace space_;
  Vector amplitudes_;
};

StateVector basis_state(const HilbertSpace& space, const BasisLabel& label);

/// <a|b>, conjugate-linear in `a`. Throws std::invalid_argument when the two
/// states live in different spaces.
Complex overlap(const StateVector& a, const StateVector& b);

}  // namespace cqed
