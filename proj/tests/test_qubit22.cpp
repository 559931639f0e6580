#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ecsbell/ecs.hpp"
#include "ecsbell/errors.hpp"
#include "ecsbell/fock_oracle.hpp"
#include "ecsbell/measures.hpp"
#include "ecsbell/qubit22.hpp"

using namespace ecsbell;

namespace {

const double kRootTwo2 = 2.0 * std::sqrt(2.0);

Matrix4c projector(const Eigen::Vector4cd& v) { return v * v.adjoint(); }

}  // namespace

TEST_CASE("cat basis rejects alpha <= 0") {
  CHECK_THROWS_AS(CatBasis(0.0, {}), DegenerateInputError);
  CHECK_THROWS_AS(rho_minus_matrix(0.0, {}), DegenerateInputError);
  CHECK_THROWS_AS(tt_eigenvalues_closed_form(-1.0, {}), DegenerateInputError);
}

TEST_CASE("cat basis is orthonormal at every damping time") {
  const fock::FockTruncation tr;
  for (double a : {0.3, 1.0, 2.0, 3.0}) {
    for (double r : {0.0, 0.3, 0.7, 0.95}) {
      const DecoherenceClock c = clock_from_r(r);
      const CatBasis basis(a, c);
      const Eigen::VectorXcd p = fock::coherent_vector(basis.amplitude(), tr).amplitudes;
      const Eigen::VectorXcd m = fock::coherent_vector(-basis.amplitude(), tr).amplitudes;
      const Eigen::VectorXcd e = (p + m) / std::sqrt(basis.n_plus());
      const Eigen::VectorXcd d = (p - m) / std::sqrt(basis.n_minus());
      CHECK(std::abs(e.squaredNorm() - 1.0) < 1e-12);
      CHECK(std::abs(d.squaredNorm() - 1.0) < 1e-12);
      CHECK(std::abs(e.dot(d)) < 1e-12);
    }
  }
}

TEST_CASE("density matrix validation") {
  Matrix4c bad = QubitDensityMatrix::singlet().matrix();
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(QubitDensityMatrix{bad}, ValidationError);
  CHECK_THROWS_AS(QubitDensityMatrix{Matrix4c(2.0 * QubitDensityMatrix::maximally_mixed().matrix())}, ValidationError);
  Matrix4c negative = Matrix4c::Zero();
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(QubitDensityMatrix{negative}, ValidationError);
}

TEST_CASE("rho minus at r = 0 is the singlet") {
  const RhoMinusCoefficients k = rho_minus_coefficients(2.0, {});
  CHECK(k.gamma == 1.0);
  CHECK(std::abs(k.a) < 1e-15);
  CHECK(std::abs(k.d) < 1e-15);
  CHECK(std::abs(k.e) < 1e-15);
  const Eigen::Vector4cd s(0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0);
  CHECK((rho_minus_matrix(2.0, {}).matrix() - projector(s)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("rho minus against the projected number-basis state") {
  const fock::FockTruncation tr;
  const DecoherenceClock c = clock_from_r(0.5);
  const fock::FockState f =
      fock::kraus_damp(fock::from_dyad_sum(build_ecs_state(EcsSpec::minus(2.0)), tr), c, tr);
  const fock::QubitProjection p = fock::project_to_qubit_basis(f, 2.0, c, tr);
  CHECK((p.matrix - rho_minus_matrix(2.0, c).matrix()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(std::abs(p.discarded_weight) < 1e-10);

  const Eigen::Vector4cd ee(1.0, 0.0, 0.0, 0.0);
  CHECK((rho_minus_matrix(2.0, clock_from_r(0.9999)).matrix() - projector(ee)).cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("rho minus has unit trace and is positive over the grid") {
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    for (int i = 0; i <= 10; ++i) {
      const double r = i == 10 ? 0.99 : 0.1 * i;
      const Matrix4c m = rho_minus_matrix(a, clock_from_r(r)).matrix();
      worst = std::max(worst, std::abs(m.trace() - 1.0));
      const Eigen::SelfAdjointEigenSolver<Matrix4c> es(m);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Horodecki value") {
  CHECK(horodecki_bmax(QubitDensityMatrix::singlet()) == doctest::Approx(kRootTwo2).epsilon(1e-14));
  CHECK(std::abs(horodecki_bmax(QubitDensityMatrix::maximally_mixed())) < 1e-14);

  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    for (double r = 0.0; r < 1.0; r += 0.05) {
      const DecoherenceClock c = clock_from_r(r);
      const auto closed = tt_eigenvalues_closed_form(a, c);
      const Eigen::Matrix3d t = correlation_tensor(rho_minus_matrix(a, c));
      Eigen::Vector3d numeric = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(t * t.transpose()).eigenvalues();
      std::array<double, 3> sorted = closed;
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(sorted[i] - numeric(i)));
      worst = std::max(worst, std::abs(horodecki_bmax_closed_form(a, c) - horodecki_bmax(rho_minus_matrix(a, c))));
    }
  }
  CHECK(worst < 1e-10);

  const auto r0 = tt_eigenvalues_closed_form(2.0, {});
  for (double v : r0) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  const auto late = tt_eigenvalues_closed_form(2.0, clock_from_r(0.9999));
  CHECK(late[0] < 1e-3);
  CHECK(late[1] < 1e-3);
  CHECK(late[2] > 0.99);
  CHECK(tt_eigenvalues_closed_form(2.0, clock_from_r(0.99999))[2] > late[2]);

  for (double a : {0.1, 0.5, 2.0, 5.0}) CHECK(std::abs(horodecki_bmax(rho_minus_matrix(a, {})) - kRootTwo2) < 1e-12);
  // Below 2 at late times, recovering to 2 only as the damped amplitude vanishes.
  for (double a : {2.0, 3.0, 5.0}) {
    const double b999 = horodecki_bmax(rho_minus_matrix(a, clock_from_r(0.999)));
    const double b_end = horodecki_bmax(rho_minus_matrix(a, clock_from_r(0.999999)));
    CHECK(b999 < 2.0);
    CHECK(b_end > b999);
    CHECK(std::abs(b_end - 2.0) < 1e-3);
  }
}

TEST_CASE("ideal rotation") {
  CHECK((ideal_rotation(0.0) - Matrix2c::Identity()).cwiseAbs().maxCoeff() == 0.0);
  Matrix2c swap_i;
  swap_i << 0.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 0.0;
  CHECK((ideal_rotation(std::numbers::pi / 2) - swap_i).cwiseAbs().maxCoeff() < 1e-15);
  for (double a : {0.3, -1.2}) {
    for (double b : {0.7, 2.5}) {
      const Matrix2c u = ideal_rotation(a);
      CHECK((u * u.adjoint() - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-14);
      CHECK((ideal_rotation(a) * ideal_rotation(b) - ideal_rotation(a + b)).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("displaced parity probabilities") {
  for (double a : {0.4, 2.0, 5.0}) {
    const ParityProbabilities p = displaced_parity_probs(a, {}, 0.0);
    CHECK(p.pe == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(p.pe_tilde) < 1e-14);
  }

  double lo = 1.0, hi = 0.0;
  for (double e = 0.0; e <= 1.0; e += 0.005) {
    const ParityProbabilities p = displaced_parity_probs(2.0, {}, e);
    lo = std::min(lo, p.pe);
    hi = std::max(hi, p.pe);
    CHECK(p.pe + p.po() == 1.0);
    CHECK(p.pe_tilde + p.po_tilde() == 1.0);
    CHECK(p.pe >= -1e-10);
    CHECK(p.pe <= 1.0 + 1e-10);
    CHECK(std::abs(p.io + std::conj(p.ie)) < 1e-14);
  }
  CHECK(hi > 0.99);
  CHECK(lo < 0.15);
  // Closer to a full rotation at larger amplitude.
  double lo5 = 1.0;
  for (double e = 0.0; e <= 0.5; e += 0.002) lo5 = std::min(lo5, displaced_parity_probs(5.0, {}, e).pe);
  CHECK(lo5 < 0.03);
  CHECK(lo5 < lo);

  const fock::FockTruncation tr;
  const DecoherenceClock c = DecoherenceClock::from_t(0.7);
  const auto [e, d] = fock::cat_vectors(1.3, c, tr);
  const Eigen::MatrixXcd shift = fock::displacement_elements(ComplexAmplitude(0.0, 0.4), tr.levels());
  const Eigen::VectorXcd ep = shift * e, dp = shift * d;
  const auto pm = fock::parity_matrices(tr);
  const ParityProbabilities p = displaced_parity_probs(1.3, c, 0.4);
  CHECK(std::abs(p.pe - ep.dot(pm.even.data * ep).real()) < 1e-9);
  CHECK(std::abs(p.pe_tilde - dp.dot(pm.even.data * dp).real()) < 1e-9);
  CHECK(std::abs(p.ie - ep.dot(pm.even.data * dp)) < 1e-9);
  CHECK(std::abs(p.io - dp.dot(pm.odd.data * ep)) < 1e-9);
}

TEST_CASE("displaced Bell functions") {
  CHECK(bell_pure_displaced(1.0, {}) == doctest::Approx(2.0).epsilon(1e-13));

  const fock::FockTruncation tr;
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  auto oracle = [&](const fock::FockState& f, const EpsilonSettings& s) {
    auto p = [&](double x) { return fock::displaced_parity_matrix(ComplexAmplitude(0.0, -x), tr).data; };
    return (fock::expectation(f, p(s.e1), p(s.e2)) + fock::expectation(f, p(s.e1), p(s.e2_prime)) +
            fock::expectation(f, p(s.e1_prime), p(s.e2)) - fock::expectation(f, p(s.e1_prime), p(s.e2_prime)))
        .real();
  };
  const fock::FockState pure = fock::from_dyad_sum(build_ecs_state(EcsSpec::minus(0.7)), tr);
  const DecoherenceClock c = clock_from_r(0.3);
  const TwoModeDyadSum damped = damp_state(build_ecs_state(EcsSpec::minus(1.5)), c);
  const fock::FockState mixed = fock::from_dyad_sum(damped, tr);
  for (int i = 0; i < 5; ++i) {
    const EpsilonSettings s{u(g), u(g), u(g), u(g)};
    CHECK(std::abs(bell_pure_displaced_signed(0.7, s) - oracle(pure, s)) < 1e-8);
    CHECK(std::abs(bell_mixed_displaced_signed(1.5, c, s) - oracle(mixed, s)) < 1e-8);
    CHECK(std::abs(bell_mixed_displaced(2.0, {}, s) - bell_pure_displaced(2.0, s)) < 1e-12);
    CHECK(bell_pure_displaced(2.0, s) <= kCirelsonBound + 1e-9);
  }
}

TEST_CASE("optimized displaced Bell value equals the optimized phase-space value for the pure state") {
  SearchConfig cfg;
  cfg.axis_mode = AxisMode::imaginary;
  const double qubit = optimized_bell(StateFamily::c_minus, Measure::qubit_displaced, 2.0, {}, cfg).value;
  const double cv = optimized_bell(StateFamily::c_minus, Measure::cv_generalized, 2.0, {}, cfg).value;
  cfg.axis_mode = AxisMode::full;
  const double cv_full = optimized_bell(StateFamily::c_minus, Measure::cv_generalized, 2.0, {}, cfg).value;
  CHECK(std::abs(qubit - cv) < 1e-6);
  CHECK(std::abs(qubit - cv_full) < 1e-6);
}
