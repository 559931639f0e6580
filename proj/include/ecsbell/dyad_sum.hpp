#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ecsbell/amplitude.hpp"

namespace ecsbell {

/// Single-mode coherent dyadic |ket><bra|.
struct CoherentDyad {
  ComplexAmplitude ket;
  ComplexAmplitude bra;

  CoherentDyad adjoint() const { return {bra, ket}; }
  bool near(const CoherentDyad& other, double tol) const {
    return ket.near(other.ket, tol) && bra.near(other.bra, tol);
  }
  /// Tr |ket><bra| = <bra|ket>.
  Complex trace() const { return coherent_overlap(bra, ket); }
};

/// weight * |mode1.ket><mode1.bra| (x) |mode2.ket><mode2.bra|
struct DyadTerm {
  Complex weight;
  CoherentDyad mode1;
  CoherentDyad mode2;

  DyadTerm adjoint() const { return {std::conj(weight), mode1.adjoint(), mode2.adjoint()}; }
};

/// Amplitudes closer than this are treated as the same coherent state when
/// terms are merged.
inline constexpr double kMergeTolerance = 1e-14;

/// A finite weighted sum of two-mode coherent dyadics.
///
/// Instances are always Hermitian: the only way to build one is through the
/// canonicalizing constructor, which merges coincident terms and replaces the
/// operator by (X + X^dagger) / 2. After canonicalization every term has a
/// partner with conjugate weight and adjoint dyads (self-adjoint terms are
/// their own partner, with real weight).
class TwoModeDyadSum {
 public:
  TwoModeDyadSum() = default;

  /// Canonicalize an arbitrary list of terms.
  static TwoModeDyadSum from_terms(std::span<const DyadTerm> terms);

  std::span<const DyadTerm> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Tr rho, via coherent overlaps.
  Complex trace() const;

  /// Paired-term Hermiticity check: amplitudes within `amp_tol`, weights exact.
  bool is_hermitian_paired(double amp_tol = kMergeTolerance) const;

  /// Sum over terms of weight * f1(mode1) * f2(mode2), where each functor
  /// receives (bra, ket) and returns <bra|O|ket>. This is Tr[rho (O1 x O2)].
  template <class F1, class F2>
  Complex product_expectation(F1&& f1, F2&& f2) const {
    Complex total{0.0, 0.0};
    for (const auto& t : terms_) {
      total += t.weight * f1(t.mode1.bra, t.mode1.ket) * f2(t.mode2.bra, t.mode2.ket);
    }
    return total;
  }

 private:
  std::vector<DyadTerm> terms_;
};

/// |0><0| (x) |0><0|
TwoModeDyadSum two_mode_vacuum();

}  // namespace ecsbell
