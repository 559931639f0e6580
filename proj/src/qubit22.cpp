#include "ecsbell/qubit22.hpp"

#include <algorithm>
#include <cmath>

#include "ecsbell/errors.hpp"
#include "ecsbell/parity_wigner.hpp"

namespace ecsbell {

CatBasis::CatBasis(double alpha, const DecoherenceClock& clock) : alpha_(alpha), t_(clock.t()) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    throw DegenerateInputError("CatBasis: alpha must be > 0 (the odd state vanishes at alpha = 0)");
  }
  const double x = 2.0 * t_ * t_ * alpha_ * alpha_;
  n_plus_ = 2.0 + 2.0 * std::exp(-x);
  n_minus_ = -2.0 * std::expm1(-x);
}

Matrix2c CatBasis::displaced_parity(ComplexAmplitude d) const {
  const double beta = amplitude();
  const std::array<ComplexAmplitude, 2> amps{beta, -beta};
  const double ce = 1.0 / std::sqrt(n_plus_);
  const double cd = 1.0 / std::sqrt(n_minus_);
  const std::array<std::array<double, 2>, 2> coef{{{ce, ce}, {cd, -cd}}};

  std::array<std::array<Complex, 2>, 2> elem{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) elem[i][j] = displaced_parity_element(amps[i], amps[j], d);

  Matrix2c out;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      Complex s{0.0, 0.0};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += coef[x][i] * coef[y][j] * elem[i][j];
      out(x, y) = s;
    }
  }
  return out;
}

QubitDensityMatrix::QubitDensityMatrix(const Matrix4c& m, double tol) : m_(m) {
  if (!m.allFinite()) throw ValidationError("QubitDensityMatrix: non-finite entries");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw ValidationError("QubitDensityMatrix: not Hermitian");
  }
  if (std::abs(m.trace() - Complex{1.0, 0.0}) > tol) {
    throw ValidationError("QubitDensityMatrix: trace differs from 1");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw ValidationError("QubitDensityMatrix: negative eigenvalue");
  }
}

QubitDensityMatrix QubitDensityMatrix::singlet() {
  Matrix4c m = Matrix4c::Zero();
  m(1, 1) = m(2, 2) = 0.5;
  m(1, 2) = m(2, 1) = -0.5;
  return QubitDensityMatrix(m);
}

QubitDensityMatrix QubitDensityMatrix::maximally_mixed() {
  return QubitDensityMatrix(Matrix4c::Identity() * 0.25);
}

RhoMinusCoefficients rho_minus_coefficients(double alpha, const DecoherenceClock& clock) {
  const CatBasis basis(alpha, clock);
  const double a2 = alpha * alpha;
  const double np = basis.n_plus();
  const double nm = basis.n_minus();
  const double gamma = std::exp(-4.0 * clock.loss() * a2);
  const double one_minus_gamma = -std::expm1(-4.0 * clock.loss() * a2);
  RhoMinusCoefficients c{};
  c.gamma = gamma;
  c.a = one_minus_gamma * np * np;
  c.c = (1.0 + gamma) * np * nm;
  c.d = -one_minus_gamma * np * nm;
  c.e = one_minus_gamma * nm * nm;
  c.n_plus0 = 2.0 + 2.0 * std::exp(-2.0 * a2);
  c.n_minus0 = -2.0 * std::expm1(-2.0 * a2);
  return c;
}

QubitDensityMatrix rho_minus_matrix(double alpha, const DecoherenceClock& clock) {
  const auto k = rho_minus_coefficients(alpha, clock);
  const double pre = 1.0 / (4.0 * k.n_plus0 * k.n_minus0);
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = k.a;
  m(0, 3) = m(3, 0) = k.d;
  m(1, 1) = m(2, 2) = k.c;
  m(1, 2) = m(2, 1) = -k.c;
  m(3, 3) = k.e;
  return QubitDensityMatrix(pre * m);
}

namespace {

std::array<Matrix2c, 3> pauli() {
  const Complex i{0.0, 1.0};
  Matrix2c x, y, z;
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  return {x, y, z};
}

double two_largest_sum(std::array<double, 3> v) {
  std::sort(v.begin(), v.end());
  return std::max(0.0, v[1] + v[2]);
}

}  // namespace

Complex qubit_expectation(const Matrix4c& rho, const Matrix2c& o1, const Matrix2c& o2) {
  Complex total{0.0, 0.0};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) total += rho(2 * c + d, 2 * a + b) * o1(a, c) * o2(b, d);
  return total;
}

Eigen::Matrix3d correlation_tensor(const QubitDensityMatrix& rho) {
  const auto s = pauli();
  Eigen::Matrix3d t;
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 3; ++m) t(n, m) = qubit_expectation(rho.matrix(), s[m], s[n]).real();
  return t;
}

double horodecki_bmax(const QubitDensityMatrix& rho) {
  const Eigen::Matrix3d t = correlation_tensor(rho);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t * t.transpose(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return 2.0 * std::sqrt(two_largest_sum({ev(0), ev(1), ev(2)}));
}

std::array<double, 3> tt_eigenvalues_closed_form(double alpha, const DecoherenceClock& clock) {
  const auto k = rho_minus_coefficients(alpha, clock);
  const double denom = 4.0 * k.n_plus0 * k.n_plus0 * k.n_minus0 * k.n_minus0;
  const double s1 = k.c + k.d;
  const double s2 = k.c - k.d;
  const double s3 = k.a - 2.0 * k.c + k.e;
  return {s1 * s1 / denom, s2 * s2 / denom, s3 * s3 / (4.0 * denom)};
}

double horodecki_bmax_closed_form(double alpha, const DecoherenceClock& clock) {
  return 2.0 * std::sqrt(two_largest_sum(tt_eigenvalues_closed_form(alpha, clock)));
}

Matrix2c ideal_rotation(double theta) {
  const Complex c{std::cos(theta), 0.0};
  const Complex s{0.0, std::sin(theta)};
  Matrix2c r;
  r << c, s, s, c;
  return r;
}

ParityProbabilities displaced_parity_probs_general(double alpha, const DecoherenceClock& clock,
                                                   ComplexAmplitude shift) {
  // <x|D^dagger(s) Pi D(s)|y> is the displaced-parity element at d = -s.
  const Matrix2c o = CatBasis(alpha, clock).displaced_parity(-shift);
  ParityProbabilities p{};
  p.pe = 0.5 * (1.0 + o(0, 0).real());
  p.pe_tilde = 0.5 * (1.0 + o(1, 1).real());
  // <e|d> = 0, so only the parity part survives in the cross terms.
  p.ie = 0.5 * o(0, 1);
  p.io = -0.5 * o(1, 0);
  return p;
}

ParityProbabilities displaced_parity_probs(double alpha, const DecoherenceClock& clock, double eps) {
  return displaced_parity_probs_general(alpha, clock, ComplexAmplitude(0.0, eps));
}

namespace {

struct LocalParity {
  double p;        // 2 Pe - 1
  double p_tilde;  // 2 Pe~ - 1
  Complex q;       // 2 Ie
};

LocalParity local_parity(double alpha, double eps) {
  const auto pr = displaced_parity_probs(alpha, DecoherenceClock{}, eps);
  return {2.0 * pr.pe - 1.0, 2.0 * pr.pe_tilde - 1.0, 2.0 * pr.ie};
}

// <C-| O1 (x) O2 |C-> with |C-> = (|ed> - |de>)/sqrt(2).
double singlet_correlation(const LocalParity& x, const LocalParity& y) {
  return 0.5 * (x.p * y.p_tilde + x.p_tilde * y.p) - std::real(x.q * std::conj(y.q));
}

}  // namespace

double bell_pure_displaced_signed(double alpha, const EpsilonSettings& eps) {
  const LocalParity a = local_parity(alpha, eps.e1);
  const LocalParity ap = local_parity(alpha, eps.e1_prime);
  const LocalParity b = local_parity(alpha, eps.e2);
  const LocalParity bp = local_parity(alpha, eps.e2_prime);
  return singlet_correlation(a, b) + singlet_correlation(a, bp) + singlet_correlation(ap, b) -
         singlet_correlation(ap, bp);
}

double bell_pure_displaced(double alpha, const EpsilonSettings& eps) {
  return std::abs(bell_pure_displaced_signed(alpha, eps));
}

double bell_mixed_displaced_signed(double alpha, const DecoherenceClock& clock,
                                   const EpsilonSettings& eps) {
  const Matrix4c rho = rho_minus_matrix(alpha, clock).matrix();
  const CatBasis basis(alpha, clock);
  auto local = [&](double e) { return basis.displaced_parity(ComplexAmplitude(0.0, -e)); };
  const Matrix2c a = local(eps.e1);
  const Matrix2c ap = local(eps.e1_prime);
  const Matrix2c b = local(eps.e2);
  const Matrix2c bp = local(eps.e2_prime);
  const Complex total = qubit_expectation(rho, a, b) + qubit_expectation(rho, a, bp) +
                        qubit_expectation(rho, ap, b) - qubit_expectation(rho, ap, bp);
  return total.real();
}

double bell_mixed_displaced(double alpha, const DecoherenceClock& clock,
                            const EpsilonSettings& eps) {
  return std::abs(bell_mixed_displaced_signed(alpha, clock, eps));
}

}  // namespace ecsbell
