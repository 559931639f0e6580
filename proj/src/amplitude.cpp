#include "ecsbell/amplitude.hpp"

#include <cmath>

#include "ecsbell/errors.hpp"

namespace ecsbell {

ComplexAmplitude::ComplexAmplitude(double re, double im) : value_(re, im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw DomainError("ComplexAmplitude: non-finite component");
  }
}

ComplexAmplitude::ComplexAmplitude(Complex z) : ComplexAmplitude(z.real(), z.imag()) {}

bool ComplexAmplitude::near(ComplexAmplitude other, double tol) const noexcept {
  return std::abs(re() - other.re()) <= tol && std::abs(im() - other.im()) <= tol;
}

Complex log_overlap(ComplexAmplitude bra, ComplexAmplitude ket) {
  return -0.5 * ket.norm_sq() - 0.5 * bra.norm_sq() + std::conj(bra.value()) * ket.value();
}

Complex coherent_overlap(ComplexAmplitude bra, ComplexAmplitude ket) {
  return std::exp(log_overlap(bra, ket));
}

}  // namespace ecsbell
