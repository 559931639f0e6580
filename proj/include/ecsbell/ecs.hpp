#pragma once

#include <optional>

#include "ecsbell/amplitude.hpp"
#include "ecsbell/dyad_sum.hpp"

namespace ecsbell {

enum class EcsSign { plus, minus };

/// (|alpha>|-alpha> + e^{i phase}|-alpha>|alpha>) / sqrt(N)
///
/// `sign` is shorthand for phase 0 (plus) or pi (minus); when present it is
/// used instead of `phase` so that the relative factor is exactly +-1.
struct EcsSpec {
  ComplexAmplitude alpha;
  double phase = 0.0;
  std::optional<EcsSign> sign;

  static EcsSpec plus(ComplexAmplitude a) { return {a, 0.0, EcsSign::plus}; }
  static EcsSpec minus(ComplexAmplitude a);
  static EcsSpec with_phase(ComplexAmplitude a, double phase) { return {a, phase, std::nullopt}; }

  /// e^{i phase}, exact for the sign shorthand.
  Complex relative_factor() const;
};

/// Set when a constructor had to fall back to a product state.
struct EcsWarning {
  bool product_state = false;
};

/// N with <C|C> = 1. Throws DegenerateInputError when the state vanishes.
double ecs_normalization(const EcsSpec& spec);

/// Normalized 4-term density operator of the entangled coherent state.
///
/// alpha = 0 with a non-vanishing norm degenerates to the two-mode vacuum;
/// `warning->product_state` is set in that case.
TwoModeDyadSum build_ecs_state(const EcsSpec& spec, EcsWarning* warning = nullptr);

/// (|beta>|gamma> + e^{i phase}|gamma>|beta>) / sqrt(N), the general
/// two-amplitude form that canonicalize() maps onto an EcsSpec.
TwoModeDyadSum build_two_amplitude_state(ComplexAmplitude beta, ComplexAmplitude gamma,
                                         double phase);

/// N for the two-amplitude form: 2 + 2 cos(phase) |<beta|gamma>|^2.
double two_amplitude_normalization(ComplexAmplitude beta, ComplexAmplitude gamma,
                                   double phase);

struct CanonicalForm {
  ComplexAmplitude x;      ///< displacement applied to both modes
  ComplexAmplitude alpha;  ///< amplitude of the resulting |C> form
  double global_phase;     ///< D(x)D(x)|Psi> = e^{i global_phase} |C>
};

/// Local displacement D(x) (x) D(x) taking the two-amplitude state to the
/// symmetric |alpha>|-alpha> form. Throws DegenerateInputError if beta == gamma.
///
/// With the unitary convention D(x) = exp(x a^dag - x^* a) the acquired phase
/// is Im(x conj(beta)) + Im(x conj(gamma)), which vanishes identically
/// because beta + gamma = -2x.
CanonicalForm canonicalize(ComplexAmplitude beta, ComplexAmplitude gamma, double phase);

}  // namespace ecsbell
