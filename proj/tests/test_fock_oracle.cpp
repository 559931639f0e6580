#include <doctest.h>

#include <cmath>
#include <random>

#include "ecsbell/ecs.hpp"
#include "ecsbell/errors.hpp"
#include "ecsbell/fock_oracle.hpp"
#include "ecsbell/parity_wigner.hpp"

using namespace ecsbell;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

TEST_CASE("coherent vectors") {
  const fock::FockTruncation tr;
  const fock::FockVector vac = fock::coherent_vector(0.0, tr);
  CHECK(vac.amplitudes(0) == Complex(1.0));
  CHECK(vac.amplitudes.tail(tr.n_max).cwiseAbs().maxCoeff() == 0.0);

  const fock::FockTruncation small{32, 1e-12};
  const Complex ip = fock::coherent_vector(-1.0, small).amplitudes.dot(fock::coherent_vector(1.0, small).amplitudes);
  CHECK(std::abs(ip - std::exp(-2.0)) < 1e-12);

  const fock::FockVector three = fock::coherent_vector(3.0, tr);
  CHECK(std::abs(three.amplitudes.squaredNorm() - 1.0) < 1e-12);
  CHECK(std::abs(three.amplitudes.squaredNorm() + three.tail_weight - 1.0) < 1e-14);

  try {
    fock::coherent_vector(3.0, small);
    FAIL("expected a truncation error");
  } catch (const TruncationError& e) {
    CHECK(e.required_n_max() > 32);
    CHECK(e.required_n_max() < 64);
    CHECK_NOTHROW(fock::coherent_vector(3.0, fock::FockTruncation{e.required_n_max(), 1e-12}));
  }
}

TEST_CASE("displacement matrix") {
  const fock::FockTruncation tr;
  CHECK((fock::displacement_matrix(0.0, tr).data - MatrixXcd::Identity(tr.levels(), tr.levels())).cwiseAbs().maxCoeff() ==
        0.0);
  const ComplexAmplitude a(1.1, -0.6);
  CHECK((fock::displacement_matrix(a, tr).data.col(0) - fock::coherent_vector(a, tr).amplitudes).cwiseAbs().maxCoeff() <
        1e-14);

  // D(a) D(-a) restricted to the lower quarter of the basis.
  const int q = tr.n_max / 4 + 1;
  for (double x : {0.5, 1.0, 2.0}) {
    const ComplexAmplitude al = std::polar(x, 0.7);
    const MatrixXcd prod = fock::displacement_matrix(al, tr).data * fock::displacement_matrix(-al, tr).data;
    CHECK((prod.topLeftCorner(q, q) - MatrixXcd::Identity(q, q)).cwiseAbs().maxCoeff() < 1e-8);
  }
  CHECK_THROWS_AS(fock::displacement_matrix(5.0, fock::FockTruncation{16, 1e-12}), TruncationError);
}

TEST_CASE("Laguerre elements against high-precision reference values") {
  // <m|D(2 + i)|n>, reference computed independently at 50 significant digits.
  struct Ref {
    int m, n;
    double re, im;
  };
  const Ref refs[] = {
      {40, 29, -0.028791497674949006, 0.070496668606830097},
      {10, 29, 0.15580104213648151, 0.11016649667661271},
      {29, 29, -0.038044338802010177, 0.0},
      {0, 29, -2.4022138221357992e-7, 2.9023834050341128e-7},
      {64, 20, 2.9532203778480521e-8, 1.4870146248268238e-6},
      {5, 60, -5.2342306834602065e-16, 2.0173933839237854e-16},
      {64, 64, -0.12022935554440068, 0.0},
  };
  const MatrixXcd d = fock::displacement_elements(ComplexAmplitude(2.0, 1.0), 65);
  for (const Ref& r : refs) {
    CAPTURE(r.m);
    CAPTURE(r.n);
    const double scale = std::max(1e-3, std::abs(Complex(r.re, r.im)));
    CHECK(std::abs(d(r.m, r.n) - Complex(r.re, r.im)) < 1e-13 * scale);
  }
}

TEST_CASE("parity matrices") {
  const fock::FockTruncation tr;
  const auto pm = fock::parity_matrices(tr);
  CHECK((pm.even.data + pm.odd.data - MatrixXcd::Identity(tr.levels(), tr.levels())).cwiseAbs().maxCoeff() == 0.0);
  CHECK(pm.even.data(0, 0) == Complex(1.0));
  CHECK(pm.even.data(1, 1) == Complex(0.0));
  const ComplexAmplitude a(0.8, 0.3);
  CHECK((pm.parity.data * fock::coherent_vector(a, tr).amplitudes - fock::coherent_vector(-a, tr).amplitudes)
            .cwiseAbs()
            .maxCoeff() < 1e-14);
  fock::FockMatrix vac{MatrixXcd::Zero(tr.levels(), tr.levels()), 1};
  vac.data(0, 0) = 1.0;
  CHECK(fock::expectation(vac, pm.parity) == Complex(1.0));
}

TEST_CASE("Kraus damping") {
  const fock::FockTruncation tr;
  const fock::FockState s = fock::from_dyad_sum(build_ecs_state(EcsSpec::minus(1.2)), tr);
  const fock::FockState same = fock::kraus_damp(s, clock_from_r(0.0), tr);
  CHECK(fock::trace_distance(s, same) < 1e-14);

  const ComplexAmplitude a(1.4, -0.5);
  const DecoherenceClock c = clock_from_r(0.6);
  const fock::FockState single = fock::pure_state(fock::coherent_vector(a, tr));
  const fock::FockState damped = fock::kraus_damp(single, c, tr);
  const fock::FockState expect = fock::pure_state(fock::coherent_vector(c.t() * a, tr));
  CHECK(fock::trace_distance(damped, expect) < 1e-9);

  // Kraus operators complete the identity.
  MatrixXcd sum = MatrixXcd::Zero(tr.levels(), tr.levels());
  for (const auto& k : fock::kraus_operators(c, tr.levels())) sum += k.adjoint() * k;
  CHECK((sum - MatrixXcd::Identity(tr.levels(), tr.levels())).cwiseAbs().maxCoeff() < 1e-12);

  // Dense and factored paths agree on a small truncation.
  const fock::FockTruncation small{12, 1e-6};
  const fock::FockState f = fock::from_dyad_sum(build_ecs_state(EcsSpec::plus(0.6)), small);
  const MatrixXcd dense = fock::kraus_damp(f.to_dense(), c, small).data;
  CHECK((dense - fock::kraus_damp(f, c, small).to_dense().data).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("projection onto the cat basis") {
  const fock::FockTruncation tr;
  const fock::FockState pure = fock::from_dyad_sum(build_ecs_state(EcsSpec::minus(1.5)), tr);
  const fock::QubitProjection p = fock::project_to_qubit_basis(pure, 1.5, {}, tr);
  Eigen::Vector4cd singlet(0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0);
  CHECK((p.matrix - singlet * singlet.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(p.discarded_weight) < 1e-12);

  // A thermal-like admixture of |1>|1> lies partly outside the span.
  const int n = tr.levels();
  fock::FockState mixed = pure;
  VectorXcd one_one = VectorXcd::Zero(n * n);
  one_one(1 * n + 1) = 1.0;
  mixed.basis.conservativeResize(Eigen::NoChange, mixed.basis.cols() + 1);
  mixed.basis.col(mixed.basis.cols() - 1) = one_one;
  MatrixXcd coeffs = MatrixXcd::Zero(mixed.basis.cols(), mixed.basis.cols());
  coeffs.topLeftCorner(pure.rank(), pure.rank()) = 0.9 * pure.coeffs;
  coeffs(pure.rank(), pure.rank()) = 0.1;
  mixed.coeffs = coeffs;
  CHECK(fock::project_to_qubit_basis(mixed, 1.5, {}, tr).discarded_weight > 1e-3);
}

TEST_CASE("expectation values") {
  const fock::FockTruncation tr;
  const fock::FockState s = fock::from_dyad_sum(build_ecs_state(EcsSpec::minus(1.0)), tr);
  const MatrixXcd id = MatrixXcd::Identity(tr.levels(), tr.levels());
  CHECK(std::abs(fock::expectation(s, id, id) - 1.0) < 1e-12);
  const auto pm = fock::parity_matrices(tr);
  CHECK(std::abs(fock::expectation(s, pm.parity.data, pm.parity.data) + 1.0) < 1e-10);

  std::mt19937_64 g(9);
  std::normal_distribution<double> nd;
  const int dim = 12;
  auto random_matrix = [&] {
    MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = Complex(nd(g), nd(g));
    return m;
  };
  for (int k = 0; k < 10; ++k) {
    const MatrixXcd a = random_matrix();
    MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace();
    const MatrixXcd h = random_matrix();
    const Complex v = fock::expectation(fock::FockMatrix{rho, 1}, fock::FockMatrix{h + h.adjoint(), 1});
    CHECK(std::abs(v.imag()) < 1e-12);
    CHECK(std::abs(fock::expectation(fock::FockMatrix{rho, 1}, fock::FockMatrix{MatrixXcd::Identity(dim, dim), 1}) -
                   1.0) < 1e-12);
  }
  CHECK_THROWS_AS(fock::expectation(fock::FockMatrix{MatrixXcd::Identity(3, 3), 1},
                                    fock::FockMatrix{MatrixXcd::Identity(4, 4), 1}),
                  DomainError);
}

TEST_CASE("raising the cut-off from 40 to 64 leaves Bell values unchanged") {
  const fock::FockTruncation lo{40, 1e-12};
  const fock::FockTruncation hi{64, 1e-12};
  std::mt19937_64 g(21);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double worst = 0.0;
  for (double a : {0.5, 1.5, 3.0}) {
    const TwoModeDyadSum s = damp_state(build_ecs_state(EcsSpec::minus(a)), clock_from_r(0.2));
    const fock::FockState f_lo = fock::from_dyad_sum(s, lo);
    const fock::FockState f_hi = fock::from_dyad_sum(s, hi);
    for (int k = 0; k < 3; ++k) {
      const PhaseSpaceSettings st{{u(g), u(g)}, {u(g), u(g)}, {u(g), u(g)}, {u(g), u(g)}};
      auto bell = [&](const fock::FockState& f, const fock::FockTruncation& tr) {
        auto p = [&](ComplexAmplitude x) { return fock::displaced_parity_matrix(x, tr).data; };
        return (fock::expectation(f, p(st.a), p(st.b)) + fock::expectation(f, p(st.a), p(st.b_prime)) +
                fock::expectation(f, p(st.a_prime), p(st.b)) - fock::expectation(f, p(st.a_prime), p(st.b_prime)))
            .real();
      };
      worst = std::max(worst, std::abs(bell(f_lo, lo) - bell(f_hi, hi)));
    }
  }
  CHECK(worst < 1e-9);
}
