#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "ecsbell/amplitude.hpp"
#include "ecsbell/decoherence.hpp"
#include "ecsbell/dyad_sum.hpp"
#include "ecsbell/qubit22.hpp"

/// Truncated number-basis brute force, used to validate the closed forms.
///
/// Nothing here shares code with the coherent-dyad algebra: states are
/// built from number-state expansions, displacements from associated
/// Laguerre polynomials and damping from the Kraus decomposition.
namespace ecsbell::fock {

/// Basis {|0>, ..., |n_max>} per mode.
struct FockTruncation {
  int n_max = 64;
  double leakage_tol = 1e-12;

  int levels() const noexcept { return n_max + 1; }
};

/// Amplitude vector over one mode or, row-major in (n1, n2), two modes.
struct FockVector {
  Eigen::VectorXcd amplitudes;
  int modes = 1;
  double tail_weight = 0.0;  ///< probability outside the truncation
};

/// Dense operator over one or two modes.
struct FockMatrix {
  Eigen::MatrixXcd data;
  int modes = 1;
};

/// Low-rank density operator basis * coeffs * basis^dagger.
///
/// Mixed two-mode states at n_max = 64 live in a 4225-dimensional space; the
/// factored form keeps damped coherent mixtures at their (small) true rank.
struct FockState {
  Eigen::MatrixXcd basis;   ///< dim x k
  Eigen::MatrixXcd coeffs;  ///< k x k, Hermitian
  int modes = 1;
  int levels = 0;

  Complex trace() const;
  double purity() const;
  /// Smallest eigenvalue on the support (the state is zero elsewhere).
  double min_eigenvalue() const;
  FockMatrix to_dense() const;
  int rank() const { return static_cast<int>(coeffs.rows()); }
};

/// e^{-|alpha|^2/2} sum_n alpha^n / sqrt(n!) |n>, not renormalized.
/// Throws TruncationError (with the n_max needed) if the tail exceeds leakage_tol.
FockVector coherent_vector(ComplexAmplitude alpha, const FockTruncation& trunc);

/// |v1> (x) |v2>
FockVector tensor(const FockVector& v1, const FockVector& v2);

/// <m|D(alpha)|n> from the associated Laguerre closed form.
///
/// Every element is exact; only products through the cut-off lose weight.
/// Throws TruncationError if D^dagger D deviates from the identity by more
/// than 1e-8 on the lower quarter {0, ..., n_max/4} of the basis.
FockMatrix displacement_matrix(ComplexAmplitude alpha, const FockTruncation& trunc);

/// Same elements without the unitarity check.
Eigen::MatrixXcd displacement_elements(ComplexAmplitude alpha, int levels);

struct ParityMatrices {
  FockMatrix even;    ///< Pi_e
  FockMatrix odd;     ///< Pi_o
  FockMatrix parity;  ///< Pi_e - Pi_o
};

ParityMatrices parity_matrices(const FockTruncation& trunc);

/// D(d) Pi D^dagger(d), built as D(2d) Pi so that no truncated product enters.
FockMatrix displaced_parity_matrix(ComplexAmplitude d, const FockTruncation& trunc);

FockState pure_state(const FockVector& v);

/// Expands a coherent dyad sum over the number basis.
FockState from_dyad_sum(const TwoModeDyadSum& rho, const FockTruncation& trunc);

/// |Psi> = (|beta>|gamma> + e^{i phase}|gamma>|beta>) normalized numerically.
FockVector two_amplitude_vector(ComplexAmplitude beta, ComplexAmplitude gamma, Complex factor,
                                const FockTruncation& trunc);

/// Applies a single-mode operator to `mode` (0 or 1) of a two-mode vector.
Eigen::VectorXcd apply_local(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& v, int mode,
                             int levels);

/// Amplitude-damping Kraus operators with loss 1 - t^2.
std::vector<Eigen::MatrixXcd> kraus_operators(const DecoherenceClock& clock, int levels);

/// Kraus evolution of every mode. Throws TruncationError on trace drift > 1e-10.
FockState kraus_damp(const FockState& rho, const DecoherenceClock& clock, const FockTruncation& trunc);

/// Dense variant, for small truncations.
FockMatrix kraus_damp(const FockMatrix& rho, const DecoherenceClock& clock, const FockTruncation& trunc);

/// Re-factorizes to the numerical rank.
FockState compress(const FockState& rho, double rel_tol = 1e-15);

struct QubitProjection {
  Matrix4c matrix;          ///< <X_m|rho|X_n>, basis {ee, ed, de, dd}
  double discarded_weight;  ///< Tr rho - Tr(projected)
};

/// Projection onto the time-dependent cat basis built from number states.
QubitProjection project_to_qubit_basis(const FockState& rho, double alpha,
                                       const DecoherenceClock& clock, const FockTruncation& trunc);

/// Cat basis vectors |e(tau)>, |d(tau)> from number states, numerically normalized.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> cat_vectors(double alpha, const DecoherenceClock& clock,
                                                           const FockTruncation& trunc);

/// Tr(rho obs). Throws DomainError on dimension mismatch.
Complex expectation(const FockMatrix& rho, const FockMatrix& obs);

/// Tr[rho (op1 (x) op2)] for a two-mode state.
Complex expectation(const FockState& rho, const Eigen::MatrixXcd& op1, const Eigen::MatrixXcd& op2);

/// (1/2) || rho - sigma ||_1
double trace_distance(const FockState& rho, const FockState& sigma);

/// |<u|v>|^2
double fidelity(const FockVector& u, const FockVector& v);

}  // namespace ecsbell::fock
