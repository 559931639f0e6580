#pragma once

#include "ecsbell/amplitude.hpp"
#include "ecsbell/dyad_sum.hpp"

namespace ecsbell {

/// The four displacement settings of a CHSH test with displaced parity.
struct PhaseSpaceSettings {
  ComplexAmplitude a;
  ComplexAmplitude b;
  ComplexAmplitude a_prime;
  ComplexAmplitude b_prime;

  /// Exchange of the two parties: (a, b, a', b') -> (b, a, b', a').
  PhaseSpaceSettings swapped() const { return {b, a, b_prime, a_prime}; }
};

struct BellResult {
  double value = 0.0;  ///< |B|
  PhaseSpaceSettings settings;
  bool violates = false;  ///< value > 2
};

/// Cirel'son bound 2 sqrt(2).
inline constexpr double kCirelsonBound = 2.8284271247461900976;

/// Imaginary residue above which a parity expectation is reported as a bug.
inline constexpr double kImaginaryResidueTolerance = 1e-8;

/// <bra| D(d) Pi D^dagger(d) |ket> for single-mode parity Pi = Pi_e - Pi_o.
Complex displaced_parity_element(ComplexAmplitude bra, ComplexAmplitude ket, ComplexAmplitude d);

/// <bra| D(eta) |ket>
Complex displacement_element(ComplexAmplitude bra, ComplexAmplitude ket, ComplexAmplitude eta);

/// Tr[rho Pi(a, b)] for the two-mode displaced parity operator.
/// Throws ConsistencyError if the imaginary residue exceeds 1e-8.
double parity_expectation(const TwoModeDyadSum& state, ComplexAmplitude a, ComplexAmplitude b);

/// Two-mode Wigner function (4/pi^2) Tr[rho Pi(a, b)].
double wigner(const TwoModeDyadSum& state, ComplexAmplitude a, ComplexAmplitude b);

/// Tr[rho D1(eta) D2(xi)]
Complex characteristic_function(const TwoModeDyadSum& state, ComplexAmplitude eta,
                                ComplexAmplitude xi);

/// Signed CHSH combination P(a,b) + P(a,b') + P(a',b) - P(a',b').
double bell_combination(const TwoModeDyadSum& state, const PhaseSpaceSettings& s);

/// |B| for the given settings.
BellResult bell_measure(const TwoModeDyadSum& state, const PhaseSpaceSettings& s);

/// bell_measure with a = b = 0 (the original parity-based test).
BellResult bw_restricted_bell(const TwoModeDyadSum& state, ComplexAmplitude a_prime,
                              ComplexAmplitude b_prime);

}  // namespace ecsbell
