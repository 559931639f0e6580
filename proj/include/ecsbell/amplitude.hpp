#pragma once

#include <complex>

namespace ecsbell {

using Complex = std::complex<double>;

/// A finite complex amplitude: a coherent-state label or a displacement.
///
/// Construction rejects NaN/Inf with DomainError, so every amplitude that
/// reaches the closed forms is finite.
class ComplexAmplitude {
 public:
  ComplexAmplitude() = default;
  ComplexAmplitude(double re, double im = 0.0);  // NOLINT: implicit from real
  ComplexAmplitude(Complex z);                   // NOLINT: implicit from complex

  double re() const noexcept { return value_.real(); }
  double im() const noexcept { return value_.imag(); }
  Complex value() const noexcept { return value_; }
  double norm_sq() const noexcept { return std::norm(value_); }
  double abs() const noexcept { return std::abs(value_); }
  ComplexAmplitude conj() const { return ComplexAmplitude(std::conj(value_)); }

  friend ComplexAmplitude operator+(ComplexAmplitude a, ComplexAmplitude b) {
    return ComplexAmplitude(a.value_ + b.value_);
  }
  friend ComplexAmplitude operator-(ComplexAmplitude a, ComplexAmplitude b) {
    return ComplexAmplitude(a.value_ - b.value_);
  }
  friend ComplexAmplitude operator*(double s, ComplexAmplitude a) {
    return ComplexAmplitude(s * a.value_);
  }
  ComplexAmplitude operator-() const { return ComplexAmplitude(-value_); }
  friend bool operator==(ComplexAmplitude a, ComplexAmplitude b) = default;

  /// True when both components agree within `tol`.
  bool near(ComplexAmplitude other, double tol) const noexcept;

 private:
  Complex value_{0.0, 0.0};
};

/// log <bra|ket> = -|ket|^2/2 - |bra|^2/2 + conj(bra) ket, taken literally.
Complex log_overlap(ComplexAmplitude bra, ComplexAmplitude ket);

/// Coherent-state inner product <bra|ket>.
Complex coherent_overlap(ComplexAmplitude bra, ComplexAmplitude ket);

}  // namespace ecsbell
