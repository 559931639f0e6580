#include "ecsbell/ecs.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "ecsbell/errors.hpp"

namespace ecsbell {

EcsSpec EcsSpec::minus(ComplexAmplitude a) { return {a, std::numbers::pi, EcsSign::minus}; }

Complex EcsSpec::relative_factor() const {
  if (sign) return *sign == EcsSign::plus ? Complex{1.0, 0.0} : Complex{-1.0, 0.0};
  return std::polar(1.0, phase);
}

double two_amplitude_normalization(ComplexAmplitude beta, ComplexAmplitude gamma, double phase) {
  // |<beta|gamma>|^2 = exp(-|beta - gamma|^2)
  const double d2 = (beta - gamma).norm_sq();
  const double c = std::cos(phase);
  if (c == -1.0) return -2.0 * std::expm1(-d2);
  return 2.0 + 2.0 * c * std::exp(-d2);
}

double ecs_normalization(const EcsSpec& spec) {
  const double d2 = 4.0 * spec.alpha.norm_sq();
  double n = 0.0;
  if (spec.sign) {
    n = *spec.sign == EcsSign::plus ? 2.0 + 2.0 * std::exp(-d2) : -2.0 * std::expm1(-d2);
  } else {
    n = two_amplitude_normalization(spec.alpha, -spec.alpha, spec.phase);
  }
  if (!(n > 0.0)) {
    throw DegenerateInputError("ecs_normalization: state vanishes identically (alpha = 0, phase = pi)");
  }
  return n;
}

namespace {

TwoModeDyadSum build_pair_state(ComplexAmplitude beta, ComplexAmplitude gamma, Complex factor,
                                double norm) {
  const Complex w = 1.0 / norm;
  const std::array<DyadTerm, 4> terms{{
      {w, {beta, beta}, {gamma, gamma}},
      {w * std::conj(factor), {beta, gamma}, {gamma, beta}},
      {w * factor, {gamma, beta}, {beta, gamma}},
      {w, {gamma, gamma}, {beta, beta}},
  }};
  return TwoModeDyadSum::from_terms(terms);
}

}  // namespace

TwoModeDyadSum build_ecs_state(const EcsSpec& spec, EcsWarning* warning) {
  const double n = ecs_normalization(spec);
  if (warning) warning->product_state = spec.alpha.norm_sq() == 0.0;
  return build_pair_state(spec.alpha, -spec.alpha, spec.relative_factor(), n);
}

TwoModeDyadSum build_two_amplitude_state(ComplexAmplitude beta, ComplexAmplitude gamma,
                                         double phase) {
  const double n = two_amplitude_normalization(beta, gamma, phase);
  if (!(n > 0.0)) {
    throw DegenerateInputError("build_two_amplitude_state: state vanishes identically");
  }
  return build_pair_state(beta, gamma, std::polar(1.0, phase), n);
}

CanonicalForm canonicalize(ComplexAmplitude beta, ComplexAmplitude gamma, double phase) {
  if (!std::isfinite(phase)) throw DomainError("canonicalize: non-finite phase");
  if (beta.near(gamma, 1e-14)) {
    throw DegenerateInputError("canonicalize: beta == gamma describes a product state");
  }
  const ComplexAmplitude x = -0.5 * (beta + gamma);
  const ComplexAmplitude alpha = beta + x;
  // D(x)|v> = exp(i Im(x conj v)) |v + x>; both product terms pick up the same phase.
  const double global =
      std::imag(x.value() * std::conj(beta.value())) + std::imag(x.value() * std::conj(gamma.value()));
  return {x, alpha, global};
}

}  // namespace ecsbell
