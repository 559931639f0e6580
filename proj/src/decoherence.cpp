#include "ecsbell/decoherence.hpp"

#include <cmath>
#include <vector>

#include "ecsbell/errors.hpp"

namespace ecsbell {

DecoherenceClock DecoherenceClock::from_gamma_tau(double gamma_tau) {
  if (!std::isfinite(gamma_tau) || gamma_tau < 0.0) {
    throw DomainError("DecoherenceClock: gamma*tau must be finite and >= 0");
  }
  const double loss = -std::expm1(-gamma_tau);
  return {gamma_tau, std::exp(-0.5 * gamma_tau), std::sqrt(loss), loss};
}

DecoherenceClock DecoherenceClock::from_t(double t) {
  if (!std::isfinite(t) || t <= 0.0 || t > 1.0) {
    throw DomainError("DecoherenceClock: t must lie in (0, 1]");
  }
  const double loss = (1.0 - t) * (1.0 + t);
  return {-2.0 * std::log(t), t, std::sqrt(loss), loss};
}

DecoherenceClock DecoherenceClock::from_r(double r) {
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0) {
    throw DomainError("DecoherenceClock: r must lie in [0, 1)");
  }
  const double loss = r * r;
  const double t = std::sqrt((1.0 - r) * (1.0 + r));
  return {-std::log1p(-loss), t, r, loss};
}

DecoherenceClock DecoherenceClock::then(const DecoherenceClock& next) const {
  const double t = t_ * next.t_;
  // 1 - t1^2 t2^2 = l1 + l2 - l1 l2
  const double loss = loss_ + next.loss_ - loss_ * next.loss_;
  return {gamma_tau_ + next.gamma_tau_, t, std::sqrt(loss), loss};
}

DecoherenceClock clock_from_r(double r) { return DecoherenceClock::from_r(r); }

std::pair<Complex, CoherentDyad> damp_dyad(const CoherentDyad& d, const DecoherenceClock& clock) {
  const Complex weight = std::exp(clock.loss() * log_overlap(d.bra, d.ket));
  const double t = clock.t();
  return {weight, {t * d.ket, t * d.bra}};
}

TwoModeDyadSum damp_state(const TwoModeDyadSum& state, const DecoherenceClock& clock) {
  std::vector<DyadTerm> out;
  out.reserve(state.size());
  for (const auto& term : state.terms()) {
    const auto [w1, d1] = damp_dyad(term.mode1, clock);
    const auto [w2, d2] = damp_dyad(term.mode2, clock);
    out.push_back({term.weight * w1 * w2, d1, d2});
  }
  return TwoModeDyadSum::from_terms(out);
}

}  // namespace ecsbell
