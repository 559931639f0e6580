#include "ecsbell/fock_oracle.hpp"

#include <cmath>
#include <array>
#include <string>

#include "ecsbell/errors.hpp"

namespace ecsbell::fock {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using RowMajorXcd = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Poisson(x) tail P(n > n_max) and the smallest n_max that would satisfy tol.
std::pair<double, int> poisson_tail(double x, int n_max, double tol) {
  if (x == 0.0) return {0.0, 0};
  const double lx = std::log(x);
  auto term = [&](int n) { return std::exp(-x + n * lx - std::lgamma(n + 1.0)); };
  double tail = 0.0;
  for (int n = n_max + 1;; ++n) {
    const double t = term(n);
    tail += t;
    if (n > x && t < 1e-300) break;
    if (n > x && t < 1e-18 * tail) break;
  }
  // Smallest cut-off whose tail is below tol.
  int required = n_max;
  double running = tail;
  if (running > tol) {
    for (int n = n_max + 1; running > tol; ++n) {
      running -= term(n);
      required = n;
      if (n > n_max + 100000) break;
    }
  }
  return {tail, required};
}

MatrixXcd block_diag(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out = MatrixXcd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

MatrixXcd hcat(const MatrixXcd& a, const MatrixXcd& b) {
  if (a.cols() == 0) return b;
  MatrixXcd out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

int dimension(int modes, int levels) { return modes == 1 ? levels : levels * levels; }

MatrixXcd apply_local_columns(const MatrixXcd& op, const MatrixXcd& cols, int mode, int levels) {
  MatrixXcd out(cols.rows(), cols.cols());
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    out.col(c) = apply_local(op, cols.col(c), mode, levels);
  }
  return out;
}

}  // namespace

Complex FockState::trace() const {
  const MatrixXcd g = basis.adjoint() * basis;
  return (coeffs.cwiseProduct(g.transpose())).sum();
}

double FockState::purity() const {
  const MatrixXcd g = basis.adjoint() * basis;
  const MatrixXcd cg = coeffs * g;
  return (cg * cg).trace().real();
}

double FockState::min_eigenvalue() const {
  const FockState c = compress(*this, 0.0);
  if (c.rank() == 0) return 0.0;
  return c.coeffs.diagonal().real().minCoeff();
}

FockMatrix FockState::to_dense() const {
  return {basis * coeffs * basis.adjoint(), modes};
}

FockVector coherent_vector(ComplexAmplitude alpha, const FockTruncation& trunc) {
  const int levels = trunc.levels();
  FockVector v;
  v.amplitudes = VectorXcd::Zero(levels);
  v.modes = 1;
  const double x = alpha.norm_sq();
  if (x == 0.0) {
    v.amplitudes(0) = 1.0;
    return v;
  }
  const auto [tail, required] = poisson_tail(x, trunc.n_max, trunc.leakage_tol);
  if (tail > trunc.leakage_tol) {
    throw TruncationError("coherent_vector: |alpha|^2 = " + std::to_string(x) + " leaks " +
                              std::to_string(tail) + " beyond n_max = " + std::to_string(trunc.n_max) +
                              "; need n_max >= " + std::to_string(required),
                          required);
  }
  const double log_abs = std::log(std::abs(alpha.value()));
  const double arg = std::arg(alpha.value());
  for (int n = 0; n < levels; ++n) {
    const double mag = std::exp(-0.5 * x + n * log_abs - 0.5 * std::lgamma(n + 1.0));
    v.amplitudes(n) = std::polar(mag, n * arg);
  }
  v.tail_weight = tail;
  return v;
}

FockVector tensor(const FockVector& v1, const FockVector& v2) {
  if (v1.modes != 1 || v2.modes != 1) throw DomainError("tensor: expects single-mode vectors");
  const Eigen::Index n = v1.amplitudes.size();
  FockVector out;
  out.modes = 2;
  out.amplitudes.resize(n * v2.amplitudes.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    out.amplitudes.segment(i * v2.amplitudes.size(), v2.amplitudes.size()) =
        v1.amplitudes(i) * v2.amplitudes;
  }
  out.tail_weight = v1.tail_weight + v2.tail_weight;
  return out;
}

Eigen::MatrixXcd displacement_elements(ComplexAmplitude alpha, int levels) {
  const double x = alpha.norm_sq();
  if (x == 0.0) return MatrixXcd::Identity(levels, levels);
  const long double xl = x;
  const double log_abs = std::log(std::abs(alpha.value()));
  const double theta = std::arg(alpha.value());
  MatrixXcd d(levels, levels);
  std::vector<long double> lag(levels);
  for (int k = 0; k < levels; ++k) {
    // L_j^{(k)}(x), j = 0 .. levels-1-k, by the three-term recurrence.
    const int jmax = levels - 1 - k;
    lag[0] = 1.0L;
    if (jmax >= 1) lag[1] = 1.0L + k - xl;
    for (int j = 1; j < jmax; ++j) {
      lag[j + 1] = ((2.0L * j + 1.0L + k - xl) * lag[j] - (j + k) * lag[j - 1]) / (j + 1.0L);
    }
    for (int j = 0; j <= jmax; ++j) {
      const int lo = j;
      const int hi = j + k;
      const double log_pref =
          0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0)) + k * log_abs - 0.5 * x;
      const double mag = static_cast<double>(std::exp(static_cast<long double>(log_pref)) * lag[j]);
      // <hi|D|lo> carries alpha^k, <lo|D|hi> carries (-conj alpha)^k.
      d(hi, lo) = std::polar(mag, k * theta);
      if (k != 0) d(lo, hi) = std::polar((k % 2 == 0 ? 1.0 : -1.0) * mag, -k * theta);
    }
  }
  return d;
}

FockMatrix displacement_matrix(ComplexAmplitude alpha, const FockTruncation& trunc) {
  const int levels = trunc.levels();
  MatrixXcd d = displacement_elements(alpha, levels);
  const int q = trunc.n_max / 4 + 1;
  const MatrixXcd cols = d.leftCols(q);
  const double defect = (cols.adjoint() * cols - MatrixXcd::Identity(q, q)).cwiseAbs().maxCoeff();
  if (defect > 1e-8) {
    // Column n of D(alpha) spreads to about n + |alpha|^2 + 6|alpha| sqrt(2n + 1).
    const double a = alpha.abs();
    const int need = static_cast<int>(4.0 * (q + a * a + 6.0 * a * std::sqrt(2.0 * q + 1.0)));
    throw TruncationError("displacement_matrix: unitarity defect " + std::to_string(defect) +
                              " on the lower quarter of the basis",
                          need);
  }
  return {std::move(d), 1};
}

ParityMatrices parity_matrices(const FockTruncation& trunc) {
  const int levels = trunc.levels();
  MatrixXcd even = MatrixXcd::Zero(levels, levels);
  MatrixXcd odd = MatrixXcd::Zero(levels, levels);
  for (int n = 0; n < levels; ++n) (n % 2 == 0 ? even : odd)(n, n) = 1.0;
  return {{even, 1}, {odd, 1}, {even - odd, 1}};
}

FockMatrix displaced_parity_matrix(ComplexAmplitude d, const FockTruncation& trunc) {
  const int levels = trunc.levels();
  MatrixXcd m = displacement_elements(2.0 * d, levels);
  for (int n = 1; n < levels; n += 2) m.col(n) *= -1.0;
  return {std::move(m), 1};
}

FockState pure_state(const FockVector& v) {
  FockState s;
  s.basis = v.amplitudes;
  s.coeffs = MatrixXcd::Ones(1, 1);
  s.modes = v.modes;
  s.levels = v.modes == 1 ? static_cast<int>(v.amplitudes.size())
                          : static_cast<int>(std::lround(std::sqrt(double(v.amplitudes.size()))));
  return s;
}

FockState from_dyad_sum(const TwoModeDyadSum& rho, const FockTruncation& trunc) {
  const int levels = trunc.levels();
  const auto terms = rho.terms();
  const Eigen::Index k = 2 * static_cast<Eigen::Index>(terms.size());
  FockState s;
  s.modes = 2;
  s.levels = levels;
  s.basis.resize(levels * levels, k);
  s.coeffs = MatrixXcd::Zero(k, k);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    s.basis.col(2 * i) =
        tensor(coherent_vector(t.mode1.ket, trunc), coherent_vector(t.mode2.ket, trunc)).amplitudes;
    s.basis.col(2 * i + 1) =
        tensor(coherent_vector(t.mode1.bra, trunc), coherent_vector(t.mode2.bra, trunc)).amplitudes;
    s.coeffs(2 * i, 2 * i + 1) = t.weight;
  }
  // The paired-term structure makes V C V^dagger Hermitian; symmetrize the
  // coefficients so compress() sees a Hermitian middle factor.
  FockState h = s;
  h.basis = hcat(s.basis, s.basis);
  h.coeffs = 0.5 * block_diag(s.coeffs, s.coeffs.adjoint());
  return compress(h);
}

FockVector two_amplitude_vector(ComplexAmplitude beta, ComplexAmplitude gamma, Complex factor,
                                const FockTruncation& trunc) {
  const FockVector b = coherent_vector(beta, trunc);
  const FockVector g = coherent_vector(gamma, trunc);
  FockVector v = tensor(b, g);
  v.amplitudes += factor * tensor(g, b).amplitudes;
  const double n = v.amplitudes.norm();
  if (n == 0.0) throw DegenerateInputError("two_amplitude_vector: state vanishes");
  v.amplitudes /= n;
  return v;
}

Eigen::VectorXcd apply_local(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& v, int mode,
                             int levels) {
  if (v.size() != static_cast<Eigen::Index>(levels) * levels) {
    throw DomainError("apply_local: vector is not two-mode at this truncation");
  }
  Eigen::Map<const RowMajorXcd> x(v.data(), levels, levels);
  RowMajorXcd y = mode == 0 ? RowMajorXcd(op * x) : RowMajorXcd(x * op.transpose());
  return Eigen::Map<const VectorXcd>(y.data(), y.size());
}

std::vector<Eigen::MatrixXcd> kraus_operators(const DecoherenceClock& clock, int levels) {
  std::vector<MatrixXcd> ops;
  if (clock.loss() == 0.0) {
    ops.push_back(MatrixXcd::Identity(levels, levels));
    return ops;
  }
  const double log_t = std::log(clock.t());
  const double log_r = 0.5 * std::log(clock.loss());
  for (int k = 0; k < levels; ++k) {
    MatrixXcd kk = MatrixXcd::Zero(levels, levels);
    for (int n = k; n < levels; ++n) {
      const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
      kk(n - k, n) = std::exp(0.5 * log_binom + (n - k) * log_t + k * log_r);
    }
    ops.push_back(std::move(kk));
  }
  return ops;
}

FockState compress(const FockState& rho, double rel_tol) {
  FockState out;
  out.modes = rho.modes;
  out.levels = rho.levels;
  const Eigen::Index d = rho.basis.rows();
  const Eigen::Index m = rho.basis.cols();
  if (m == 0) {
    out.basis = MatrixXcd::Zero(d, 0);
    out.coeffs = MatrixXcd::Zero(0, 0);
    return out;
  }
  const Eigen::HouseholderQR<MatrixXcd> qr(rho.basis);
  const Eigen::Index p = std::min(d, m);
  const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(d, p);
  const MatrixXcd r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  MatrixXcd mid = r * rho.coeffs * r.adjoint();
  mid = 0.5 * (mid + mid.adjoint()).eval();
  const Eigen::SelfAdjointEigenSolver<MatrixXcd> es(mid);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double scale = lam.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i)) > rel_tol * scale && lam(i) != 0.0) keep.push_back(i);
  }
  out.basis.resize(d, static_cast<Eigen::Index>(keep.size()));
  out.coeffs = MatrixXcd::Zero(keep.size(), keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j) {
    out.basis.col(j) = q * es.eigenvectors().col(keep[j]);
    out.coeffs(j, j) = lam(keep[j]);
  }
  return out;
}

FockState kraus_damp(const FockState& rho, const DecoherenceClock& clock, const FockTruncation& trunc) {
  const int levels = trunc.levels();
  if (rho.basis.rows() != dimension(rho.modes, levels)) {
    throw DomainError("kraus_damp: state does not match the truncation");
  }
  if (clock.loss() == 0.0) return rho;
  const auto ops = kraus_operators(clock, levels);
  const Complex tr0 = rho.trace();

  FockState cur = rho;
  for (int mode = 0; mode < rho.modes; ++mode) {
    FockState acc;
    acc.modes = rho.modes;
    acc.levels = levels;
    acc.basis = MatrixXcd::Zero(cur.basis.rows(), 0);
    acc.coeffs = MatrixXcd::Zero(0, 0);
    const double ref = cur.basis.squaredNorm();
    const Eigen::Index limit = std::max<Eigen::Index>(48, 4 * cur.rank());
    for (const auto& k : ops) {
      MatrixXcd cols = rho.modes == 1 ? MatrixXcd(k * cur.basis)
                                      : apply_local_columns(k, cur.basis, mode, levels);
      if (cols.squaredNorm() <= 1e-34 * ref) continue;
      acc.basis = hcat(acc.basis, cols);
      acc.coeffs = block_diag(acc.coeffs, cur.coeffs);
      if (acc.rank() > limit) acc = compress(acc, 1e-16);
    }
    cur = compress(acc, 1e-16);
  }
  const Complex tr1 = cur.trace();
  if (std::abs(tr1 - tr0) > 1e-10) {
    throw TruncationError("kraus_damp: trace drift " + std::to_string(std::abs(tr1 - tr0)),
                          2 * trunc.n_max);
  }
  return cur;
}

FockMatrix kraus_damp(const FockMatrix& rho, const DecoherenceClock& clock, const FockTruncation& trunc) {
  const int levels = trunc.levels();
  if (rho.data.rows() != dimension(rho.modes, levels)) {
    throw DomainError("kraus_damp: matrix does not match the truncation");
  }
  const auto ops = kraus_operators(clock, levels);
  MatrixXcd cur = rho.data;
  const MatrixXcd id = MatrixXcd::Identity(levels, levels);
  for (int mode = 0; mode < rho.modes; ++mode) {
    MatrixXcd next = MatrixXcd::Zero(cur.rows(), cur.cols());
    for (const auto& k : ops) {
      const MatrixXcd full = rho.modes == 1 ? k : (mode == 0 ? kron(k, id) : kron(id, k));
      next += full * cur * full.adjoint();
    }
    cur = std::move(next);
  }
  if (std::abs(cur.trace() - rho.data.trace()) > 1e-10) {
    throw TruncationError("kraus_damp: trace drift", 2 * trunc.n_max);
  }
  return {std::move(cur), rho.modes};
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> cat_vectors(double alpha, const DecoherenceClock& clock,
                                                           const FockTruncation& trunc) {
  const double beta = clock.t() * alpha;
  const VectorXcd plus = coherent_vector(beta, trunc).amplitudes;
  const VectorXcd minus = coherent_vector(-beta, trunc).amplitudes;
  VectorXcd e = plus + minus;
  VectorXcd d = plus - minus;
  if (d.norm() == 0.0) throw DegenerateInputError("cat_vectors: odd cat state vanishes");
  e /= e.norm();
  d /= d.norm();
  return {e, d};
}

QubitProjection project_to_qubit_basis(const FockState& rho, double alpha,
                                       const DecoherenceClock& clock, const FockTruncation& trunc) {
  const int levels = trunc.levels();
  if (rho.modes != 2 || rho.basis.rows() != levels * levels) {
    throw DomainError("project_to_qubit_basis: expects a two-mode state at this truncation");
  }
  const auto [e, d] = cat_vectors(alpha, clock, trunc);
  const std::array<const VectorXcd*, 2> single{&e, &d};
  MatrixXcd x(levels * levels, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      FockVector a{*single[i], 1, 0.0};
      FockVector b{*single[j], 1, 0.0};
      x.col(2 * i + j) = tensor(a, b).amplitudes;
    }
  }
  const MatrixXcd b = x.adjoint() * rho.basis;
  const Matrix4c p = b * rho.coeffs * b.adjoint();
  return {p, (rho.trace() - p.trace()).real()};
}

Complex expectation(const FockMatrix& rho, const FockMatrix& obs) {
  if (rho.data.rows() != obs.data.rows() || rho.data.cols() != obs.data.cols() ||
      rho.data.rows() != rho.data.cols()) {
    throw DomainError("expectation: dimension mismatch");
  }
  return (rho.data * obs.data).trace();
}

Complex expectation(const FockState& rho, const Eigen::MatrixXcd& op1, const Eigen::MatrixXcd& op2) {
  if (rho.modes != 2 || op1.rows() != rho.levels || op2.rows() != rho.levels) {
    throw DomainError("expectation: dimension mismatch");
  }
  MatrixXcd ov = apply_local_columns(op1, rho.basis, 0, rho.levels);
  ov = apply_local_columns(op2, ov, 1, rho.levels);
  const MatrixXcd g = rho.basis.adjoint() * ov;
  return (rho.coeffs.cwiseProduct(g.transpose())).sum();
}

double trace_distance(const FockState& rho, const FockState& sigma) {
  if (rho.basis.rows() != sigma.basis.rows()) throw DomainError("trace_distance: dimension mismatch");
  FockState diff;
  diff.modes = rho.modes;
  diff.levels = rho.levels;
  diff.basis = hcat(rho.basis, sigma.basis);
  diff.coeffs = block_diag(rho.coeffs, -sigma.coeffs);
  const FockState c = compress(diff, 0.0);
  return 0.5 * c.coeffs.diagonal().cwiseAbs().sum();
}

double fidelity(const FockVector& u, const FockVector& v) {
  if (u.amplitudes.size() != v.amplitudes.size()) throw DomainError("fidelity: dimension mismatch");
  return std::norm(u.amplitudes.dot(v.amplitudes));
}

}  // namespace ecsbell::fock
