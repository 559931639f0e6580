#include "ecsbell/oracle_suites.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ecsbell/decoherence.hpp"
#include "ecsbell/ecs.hpp"
#include "ecsbell/errors.hpp"
#include "ecsbell/fock_oracle.hpp"
#include "ecsbell/parity_wigner.hpp"
#include "ecsbell/qubit22.hpp"

namespace ecsbell {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

struct CaseResult {
  double deviation = 0.0;
  std::string description;
};

class CaseRng {
 public:
  CaseRng(std::uint64_t seed, OracleSuite suite, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(index)};
    gen_.seed(seq);
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  ComplexAmplitude disc(double radius) {
    const double rad = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(rad, uniform(0.0, 2.0 * std::numbers::pi));
  }

 private:
  std::mt19937_64 gen_;
};

std::string fmt(ComplexAmplitude z) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << z.re() << (z.im() < 0 ? "" : "+") << z.im() << "i)";
  return os.str();
}

CaseResult overlaps_case(CaseRng& rng, int index, const fock::FockTruncation& trunc) {
  ComplexAmplitude alpha = 0.0, beta = 0.0, eta = 0.0;
  if (index > 0) {
    alpha = rng.disc(3.0);
    beta = rng.disc(3.0);
    eta = rng.disc(1.5);
  }
  const VectorXcd va = fock::coherent_vector(alpha, trunc).amplitudes;
  const VectorXcd vb = fock::coherent_vector(beta, trunc).amplitudes;
  const MatrixXcd d = fock::displacement_elements(eta, trunc.levels());
  const double dev1 = std::abs(coherent_overlap(beta, alpha) - vb.dot(va));
  const double dev2 = std::abs(displacement_element(beta, alpha, eta) - vb.dot(d * va));
  return {std::max(dev1, dev2), "alpha=" + fmt(alpha) + " beta=" + fmt(beta) + " eta=" + fmt(eta)};
}

CaseResult parity_case(CaseRng& rng, int index, const fock::FockTruncation& trunc) {
  EcsSpec spec = EcsSpec::plus(0.0);
  DecoherenceClock clock;
  ComplexAmplitude d1 = 0.0, d2 = 0.0;
  if (index > 0) {
    const ComplexAmplitude a = std::polar(rng.uniform(0.1, 3.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
    spec = EcsSpec::with_phase(a, rng.uniform(0.0, 2.0 * std::numbers::pi));
    clock = DecoherenceClock::from_r(rng.uniform(0.0, 0.99));
    d1 = rng.disc(1.5);
    d2 = rng.disc(1.5);
  }
  const TwoModeDyadSum state = damp_state(build_ecs_state(spec), clock);
  const fock::FockState f = fock::from_dyad_sum(state, trunc);
  const MatrixXcd p1 = fock::displaced_parity_matrix(d1, trunc).data;
  const MatrixXcd p2 = fock::displaced_parity_matrix(d2, trunc).data;
  const double dev1 = std::abs(parity_expectation(state, d1, d2) - fock::expectation(f, p1, p2));
  const MatrixXcd e1 = fock::displacement_elements(d1, trunc.levels());
  const MatrixXcd e2 = fock::displacement_elements(d2, trunc.levels());
  const double dev2 = std::abs(characteristic_function(state, d1, d2) - fock::expectation(f, e1, e2));
  std::ostringstream os;
  os << "alpha=" << fmt(spec.alpha) << " phase=" << spec.phase << " r=" << clock.r() << " d1=" << fmt(d1)
     << " d2=" << fmt(d2);
  return {std::max(dev1, dev2), os.str()};
}

CaseResult decoherence_case(CaseRng& rng, int index, const fock::FockTruncation& trunc) {
  EcsSpec spec = EcsSpec::minus(1.0);
  DecoherenceClock clock;
  if (index > 0) {
    const ComplexAmplitude a = std::polar(rng.uniform(0.1, 3.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
    spec = EcsSpec::with_phase(a, rng.uniform(0.0, 2.0 * std::numbers::pi));
    clock = DecoherenceClock::from_r(rng.uniform(0.0, 0.99));
  }
  const TwoModeDyadSum initial = build_ecs_state(spec);
  const fock::FockState analytic = fock::from_dyad_sum(damp_state(initial, clock), trunc);
  const fock::FockState kraus = fock::kraus_damp(fock::from_dyad_sum(initial, trunc), clock, trunc);
  std::ostringstream os;
  os << "alpha=" << fmt(spec.alpha) << " phase=" << spec.phase << " r=" << clock.r();
  return {fock::trace_distance(analytic, kraus), os.str()};
}

CaseResult qubit_case(CaseRng& rng, int index, const fock::FockTruncation& trunc) {
  double alpha = 1.0;
  DecoherenceClock clock;
  EpsilonSettings eps;
  if (index > 0) {
    alpha = rng.uniform(0.2, 3.0);
    clock = DecoherenceClock::from_r(rng.uniform(0.0, 0.95));
    eps = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  }
  const fock::FockState f =
      fock::kraus_damp(fock::from_dyad_sum(build_ecs_state(EcsSpec::minus(alpha)), trunc), clock, trunc);

  // Restricted-space density matrix and its Horodecki value.
  const fock::QubitProjection proj = fock::project_to_qubit_basis(f, alpha, clock, trunc);
  const QubitDensityMatrix closed = rho_minus_matrix(alpha, clock);
  double dev = (proj.matrix - closed.matrix()).cwiseAbs().maxCoeff();
  dev = std::max(dev, std::abs(proj.discarded_weight));
  const Matrix4c herm = 0.5 * (proj.matrix + proj.matrix.adjoint());
  dev = std::max(dev, std::abs(horodecki_bmax(QubitDensityMatrix(herm, 1e-8)) - horodecki_bmax(closed)));

  // Parity statistics of the displaced cat basis.
  const auto [e, d] = fock::cat_vectors(alpha, clock, trunc);
  const MatrixXcd shift = fock::displacement_elements(ComplexAmplitude(0.0, eps.e1), trunc.levels());
  const VectorXcd ep = shift * e;
  const VectorXcd dp = shift * d;
  const auto pm = fock::parity_matrices(trunc);
  const ParityProbabilities probs = displaced_parity_probs(alpha, clock, eps.e1);
  dev = std::max(dev, std::abs(probs.pe - ep.dot(pm.even.data * ep).real()));
  dev = std::max(dev, std::abs(probs.pe_tilde - dp.dot(pm.even.data * dp).real()));
  dev = std::max(dev, std::abs(probs.ie - ep.dot(pm.even.data * dp)));
  dev = std::max(dev, std::abs(probs.io - dp.dot(pm.odd.data * ep)));

  // Displaced CHSH combination evaluated over the full truncated space.
  auto corr = [&](double x, double y) {
    return fock::expectation(f, fock::displaced_parity_matrix(ComplexAmplitude(0.0, -x), trunc).data,
                             fock::displaced_parity_matrix(ComplexAmplitude(0.0, -y), trunc).data)
        .real();
  };
  const double full = corr(eps.e1, eps.e2) + corr(eps.e1, eps.e2_prime) + corr(eps.e1_prime, eps.e2) -
                      corr(eps.e1_prime, eps.e2_prime);
  dev = std::max(dev, std::abs(bell_mixed_displaced_signed(alpha, clock, eps) - full));

  std::ostringstream os;
  os << "alpha=" << alpha << " r=" << clock.r() << " eps=(" << eps.e1 << "," << eps.e1_prime << ","
     << eps.e2 << "," << eps.e2_prime << ")";
  return {dev, os.str()};
}

CaseResult bell_case(CaseRng& rng, int index, const fock::FockTruncation& trunc) {
  EcsSpec spec = EcsSpec::minus(1.0);
  DecoherenceClock clock;
  PhaseSpaceSettings s{0.0, 0.0, 0.0, 0.0};
  if (index > 0) {
    const ComplexAmplitude a = std::polar(rng.uniform(0.1, 3.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
    spec = EcsSpec::with_phase(a, rng.uniform(0.0, 2.0 * std::numbers::pi));
    clock = DecoherenceClock::from_r(rng.uniform(0.0, 0.99));
    s = {rng.disc(1.0), rng.disc(1.0), rng.disc(1.0), rng.disc(1.0)};
  }
  const TwoModeDyadSum state = damp_state(build_ecs_state(spec), clock);
  const fock::FockState f = fock::from_dyad_sum(state, trunc);
  auto p = [&](ComplexAmplitude x) { return fock::displaced_parity_matrix(x, trunc).data; };
  const MatrixXcd pa = p(s.a), pb = p(s.b), pa2 = p(s.a_prime), pb2 = p(s.b_prime);
  const Complex full = fock::expectation(f, pa, pb) + fock::expectation(f, pa, pb2) +
                       fock::expectation(f, pa2, pb) - fock::expectation(f, pa2, pb2);
  std::ostringstream os;
  os << "alpha=" << fmt(spec.alpha) << " phase=" << spec.phase << " r=" << clock.r() << " a=" << fmt(s.a)
     << " b=" << fmt(s.b) << " a'=" << fmt(s.a_prime) << " b'=" << fmt(s.b_prime);
  return {std::abs(bell_combination(state, s) - full), os.str()};
}

}  // namespace

std::string to_string(OracleSuite s) {
  switch (s) {
    case OracleSuite::overlaps: return "overlaps";
    case OracleSuite::parity: return "parity";
    case OracleSuite::decoherence: return "decoherence";
    case OracleSuite::qubit: return "qubit";
    case OracleSuite::bell: return "bell";
  }
  return "?";
}

OracleSuite oracle_suite_from_string(const std::string& s) {
  for (OracleSuite o : all_oracle_suites()) {
    if (to_string(o) == s) return o;
  }
  throw DomainError("unknown oracle suite '" + s + "'");
}

std::vector<OracleSuite> all_oracle_suites() {
  return {OracleSuite::overlaps, OracleSuite::parity, OracleSuite::decoherence, OracleSuite::qubit,
          OracleSuite::bell};
}

OracleReport run_oracle_suite(OracleSuite suite, int cases, std::uint64_t seed, int n_max, double tolerance) {
  if (cases < 1) throw DomainError("run_oracle_suite: cases must be positive");
  const fock::FockTruncation trunc{n_max, 1e-12};
  std::vector<CaseResult> results(cases);
  std::vector<std::string> errors(cases);

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < cases; ++i) {
    CaseRng rng(seed, suite, i);
    try {
      switch (suite) {
        case OracleSuite::overlaps: results[i] = overlaps_case(rng, i, trunc); break;
        case OracleSuite::parity: results[i] = parity_case(rng, i, trunc); break;
        case OracleSuite::decoherence: results[i] = decoherence_case(rng, i, trunc); break;
        case OracleSuite::qubit: results[i] = qubit_case(rng, i, trunc); break;
        case OracleSuite::bell: results[i] = bell_case(rng, i, trunc); break;
      }
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }

  OracleReport report;
  report.suite = to_string(suite);
  report.cases = cases;
  report.seed = seed;
  report.n_max = n_max;
  report.tolerance = tolerance;
  for (int i = 0; i < cases; ++i) {
    if (!errors[i].empty()) {
      report.failures.push_back({i, "error: " + errors[i], std::numeric_limits<double>::infinity()});
      report.max_deviation = std::numeric_limits<double>::infinity();
      continue;
    }
    report.max_deviation = std::max(report.max_deviation, results[i].deviation);
    if (!(results[i].deviation <= tolerance)) {
      report.failures.push_back({i, results[i].description, results[i].deviation});
    }
  }
  return report;
}

}  // namespace ecsbell
