#include "ecsbell/parity_wigner.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ecsbell/errors.hpp"

namespace ecsbell {

namespace {

// log of the phase in D^dagger(d)|v> = e^{(conj(d) v - d conj(v))/2} |v - d>
Complex log_shift_phase(ComplexAmplitude d, ComplexAmplitude v) {
  return 0.5 * (std::conj(d.value()) * v.value() - d.value() * std::conj(v.value()));
}

}  // namespace

Complex displaced_parity_element(ComplexAmplitude bra, ComplexAmplitude ket, ComplexAmplitude d) {
  // D^dagger(d)|ket> -> phase |ket - d>, parity sends |v> to |-v>.
  const Complex log_value = std::conj(log_shift_phase(d, bra)) + log_shift_phase(d, ket) +
                            log_overlap(bra - d, d - ket);
  return std::exp(log_value);
}

Complex displacement_element(ComplexAmplitude bra, ComplexAmplitude ket, ComplexAmplitude eta) {
  // D(eta)|ket> = e^{(eta conj(ket) - conj(eta) ket)/2} |ket + eta>
  const Complex phase =
      0.5 * (eta.value() * std::conj(ket.value()) - std::conj(eta.value()) * ket.value());
  return std::exp(phase + log_overlap(bra, ket + eta));
}

double parity_expectation(const TwoModeDyadSum& state, ComplexAmplitude a, ComplexAmplitude b) {
  const Complex v = state.product_expectation(
      [a](ComplexAmplitude bra, ComplexAmplitude ket) { return displaced_parity_element(bra, ket, a); },
      [b](ComplexAmplitude bra, ComplexAmplitude ket) { return displaced_parity_element(bra, ket, b); });
  if (std::abs(v.imag()) > kImaginaryResidueTolerance || !std::isfinite(v.real())) {
    throw ConsistencyError("parity_expectation: imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

double wigner(const TwoModeDyadSum& state, ComplexAmplitude a, ComplexAmplitude b) {
  return 4.0 / (std::numbers::pi * std::numbers::pi) * parity_expectation(state, a, b);
}

Complex characteristic_function(const TwoModeDyadSum& state, ComplexAmplitude eta,
                                ComplexAmplitude xi) {
  return state.product_expectation(
      [eta](ComplexAmplitude bra, ComplexAmplitude ket) { return displacement_element(bra, ket, eta); },
      [xi](ComplexAmplitude bra, ComplexAmplitude ket) { return displacement_element(bra, ket, xi); });
}

double bell_combination(const TwoModeDyadSum& state, const PhaseSpaceSettings& s) {
  return parity_expectation(state, s.a, s.b) + parity_expectation(state, s.a, s.b_prime) +
         parity_expectation(state, s.a_prime, s.b) - parity_expectation(state, s.a_prime, s.b_prime);
}

BellResult bell_measure(const TwoModeDyadSum& state, const PhaseSpaceSettings& s) {
  const double value = std::abs(bell_combination(state, s));
  return {value, s, value > 2.0};
}

BellResult bw_restricted_bell(const TwoModeDyadSum& state, ComplexAmplitude a_prime,
                              ComplexAmplitude b_prime) {
  return bell_measure(state, {0.0, 0.0, a_prime, b_prime});
}

}  // namespace ecsbell
