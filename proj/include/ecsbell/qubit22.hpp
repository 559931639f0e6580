#pragma once

#include <array>

#include <Eigen/Dense>

#include "ecsbell/amplitude.hpp"
#include "ecsbell/decoherence.hpp"

namespace ecsbell {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// Even/odd cat basis at damping time tau:
///   |e(tau)> = (|t alpha> + |-t alpha>) / sqrt(N+(tau))
///   |d(tau)> = (|t alpha> - |-t alpha>) / sqrt(N-(tau))
class CatBasis {
 public:
  /// Throws DegenerateInputError unless alpha > 0.
  CatBasis(double alpha, const DecoherenceClock& clock);

  double alpha() const noexcept { return alpha_; }
  double t() const noexcept { return t_; }
  double amplitude() const noexcept { return t_ * alpha_; }
  /// 2 + 2 exp(-2 t^2 alpha^2)
  double n_plus() const noexcept { return n_plus_; }
  /// 2 - 2 exp(-2 t^2 alpha^2)
  double n_minus() const noexcept { return n_minus_; }

  /// <x| D(d) Pi D^dagger(d) |y> for x, y in {e, d} (index 0 = e, 1 = d).
  Matrix2c displaced_parity(ComplexAmplitude d) const;

 private:
  double alpha_;
  double t_;
  double n_plus_;
  double n_minus_;
};

/// Validated two-qubit density matrix in the ordered basis {ee, ed, de, dd}.
class QubitDensityMatrix {
 public:
  /// Throws ValidationError unless the matrix is Hermitian and unit-trace
  /// within `tol` with eigenvalues >= -1e-10.
  explicit QubitDensityMatrix(const Matrix4c& m, double tol = 1e-12);

  const Matrix4c& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  static QubitDensityMatrix singlet();
  static QubitDensityMatrix maximally_mixed();

 private:
  Matrix4c m_;
};

/// Displacements D(i eps) on the two qubits: settings eps1, eps1', eps2, eps2'.
struct EpsilonSettings {
  double e1 = 0.0;
  double e1_prime = 0.0;
  double e2 = 0.0;
  double e2_prime = 0.0;

  EpsilonSettings swapped() const { return {e2, e2_prime, e1, e1_prime}; }
};

/// Entries A, C, D, E, Gamma of the damped |C-> matrix.
struct RhoMinusCoefficients {
  double a, c, d, e, gamma;
  double n_plus0, n_minus0;  ///< initial-time norms used in the prefactor
};

RhoMinusCoefficients rho_minus_coefficients(double alpha, const DecoherenceClock& clock);

/// Damped |C-> in the time-dependent cat basis.
QubitDensityMatrix rho_minus_matrix(double alpha, const DecoherenceClock& clock);

/// Pauli correlation tensor t_nm = Tr(rho sigma_m (x) sigma_n).
Eigen::Matrix3d correlation_tensor(const QubitDensityMatrix& rho);

/// 2 sqrt(M), M = sum of the two larger eigenvalues of T T^dagger.
double horodecki_bmax(const QubitDensityMatrix& rho);

/// Closed-form eigenvalues of T T^dagger for the damped |C->.
std::array<double, 3> tt_eigenvalues_closed_form(double alpha, const DecoherenceClock& clock);

/// 2 sqrt(sum of the two larger closed-form eigenvalues).
double horodecki_bmax_closed_form(double alpha, const DecoherenceClock& clock);

/// R_x(theta) on {|e>, |d>}.
Matrix2c ideal_rotation(double theta);

struct ParityProbabilities {
  double pe;        ///< <e'|Pi_e|e'>
  double pe_tilde;  ///< <d'|Pi_e|d'>
  Complex ie;       ///< <e'|Pi_e|d'>
  Complex io;       ///< <d'|Pi_o|e'>, equal to -conj(ie)

  double po() const { return 1.0 - pe; }
  double po_tilde() const { return 1.0 - pe_tilde; }
};

/// Even-parity statistics of |e'> = D(i eps)|e(tau)>, |d'> = D(i eps)|d(tau)>.
ParityProbabilities displaced_parity_probs(double alpha, const DecoherenceClock& clock, double eps);

/// Same statistics for an arbitrary complex displacement |x'> = D(shift)|x>.
ParityProbabilities displaced_parity_probs_general(double alpha, const DecoherenceClock& clock,
                                                   ComplexAmplitude shift);

/// Signed CHSH combination for D1(i eps1) (x) D2(i eps2) |C->, assembled from
/// the parity probabilities of the pure cat basis.
double bell_pure_displaced_signed(double alpha, const EpsilonSettings& eps);
double bell_pure_displaced(double alpha, const EpsilonSettings& eps);

/// Tr{rho_-(tau; eps_i, eps_j) Pi} summed CHSH-style inside the restricted
/// space, with rho_-(tau) taken from rho_minus_matrix.
double bell_mixed_displaced_signed(double alpha, const DecoherenceClock& clock,
                                   const EpsilonSettings& eps);
double bell_mixed_displaced(double alpha, const DecoherenceClock& clock,
                            const EpsilonSettings& eps);

/// Tr[rho (O1 (x) O2)] for 2x2 local operators in the cat basis.
Complex qubit_expectation(const Matrix4c& rho, const Matrix2c& o1, const Matrix2c& o2);

}  // namespace ecsbell
