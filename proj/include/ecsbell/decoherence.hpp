#pragma once

#include <utility>

#include "ecsbell/dyad_sum.hpp"

namespace ecsbell {

/// Amplitude-damping clock (gamma*tau, t, r) with t = exp(-gamma*tau/2) and
/// r = sqrt(1 - t^2). All three are populated consistently by the factories.
class DecoherenceClock {
 public:
  /// The identity channel (r = 0).
  DecoherenceClock() = default;

  static DecoherenceClock from_gamma_tau(double gamma_tau);
  static DecoherenceClock from_t(double t);
  static DecoherenceClock from_r(double r);

  double gamma_tau() const noexcept { return gamma_tau_; }
  double t() const noexcept { return t_; }
  double r() const noexcept { return r_; }
  /// 1 - t^2, computed without cancellation.
  double loss() const noexcept { return loss_; }

  /// Running the channel for c1 and then c2 equals running it for c1.then(c2).
  DecoherenceClock then(const DecoherenceClock& next) const;

 private:
  DecoherenceClock(double gamma_tau, double t, double r, double loss)
      : gamma_tau_(gamma_tau), t_(t), r_(r), loss_(loss) {}

  double gamma_tau_ = 0.0;
  double t_ = 1.0;
  double r_ = 0.0;
  double loss_ = 0.0;
};

/// Convenience for clock_from_r in free-function form.
DecoherenceClock clock_from_r(double r);

/// exp[(J + L) tau] |ket><bra| = <bra|ket>^{1-t^2} |t ket><t bra|.
///
/// The power is taken through the Gaussian exponent of the overlap, so no
/// complex branch is involved.
std::pair<Complex, CoherentDyad> damp_dyad(const CoherentDyad& d, const DecoherenceClock& clock);

/// Both modes damped with the same clock.
TwoModeDyadSum damp_state(const TwoModeDyadSum& state, const DecoherenceClock& clock);

}  // namespace ecsbell
