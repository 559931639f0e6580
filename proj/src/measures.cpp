#include "ecsbell/measures.hpp"

#include <algorithm>
#include <cmath>

#include "ecsbell/ecs.hpp"
#include "ecsbell/errors.hpp"

namespace ecsbell {

std::string to_string(Measure m) {
  switch (m) {
    case Measure::cv_generalized: return "cv-generalized";
    case Measure::cv_bw_restricted: return "cv-bw-restricted";
    case Measure::qubit_ideal: return "qubit-ideal";
    case Measure::qubit_displaced: return "qubit-displaced";
  }
  return "?";
}

std::string to_string(StateFamily f) { return f == StateFamily::c_minus ? "c-minus" : "c-plus"; }

Measure measure_from_string(const std::string& s) {
  if (s == "cv-generalized") return Measure::cv_generalized;
  if (s == "cv-bw-restricted") return Measure::cv_bw_restricted;
  if (s == "qubit-ideal") return Measure::qubit_ideal;
  if (s == "qubit-displaced") return Measure::qubit_displaced;
  throw DomainError("unknown measure '" + s + "'");
}

StateFamily family_from_string(const std::string& s) {
  if (s == "c-minus") return StateFamily::c_minus;
  if (s == "c-plus") return StateFamily::c_plus;
  throw DomainError("unknown state family '" + s + "'");
}

TwoModeDyadSum family_state(StateFamily family, double alpha, const DecoherenceClock& clock) {
  const EcsSpec spec = family == StateFamily::c_minus ? EcsSpec::minus(alpha) : EcsSpec::plus(alpha);
  return damp_state(build_ecs_state(spec), clock);
}

std::size_t parameter_count(Measure m, AxisMode axis) {
  const std::size_t per = axis == AxisMode::full ? 2 : 1;
  switch (m) {
    case Measure::cv_generalized: return 4 * per;
    case Measure::cv_bw_restricted: return 2 * per;
    case Measure::qubit_displaced: return 4;
    case Measure::qubit_ideal: return 0;
  }
  return 0;
}

namespace {

ComplexAmplitude slot(AxisMode axis, std::span<const double> p, std::size_t i) {
  switch (axis) {
    case AxisMode::real: return {p[i], 0.0};
    case AxisMode::imaginary: return {0.0, p[i]};
    case AxisMode::full: return {p[2 * i], p[2 * i + 1]};
  }
  return {};
}

// Permutation exchanging slot pairs (0 <-> 1, 2 <-> 3) of `slots` settings.
std::vector<std::size_t> slot_swap(std::size_t slots, std::size_t per) {
  std::vector<std::size_t> perm(slots * per);
  for (std::size_t s = 0; s < slots; ++s) {
    const std::size_t partner = s ^ 1U;
    for (std::size_t k = 0; k < per; ++k) perm[s * per + k] = partner * per + k;
  }
  return perm;
}

}  // namespace

PhaseSpaceSettings phase_space_settings(Measure m, AxisMode axis, std::span<const double> p) {
  if (p.size() != parameter_count(m, axis)) throw DomainError("phase_space_settings: wrong parameter count");
  if (m == Measure::cv_generalized) {
    return {slot(axis, p, 0), slot(axis, p, 1), slot(axis, p, 2), slot(axis, p, 3)};
  }
  if (m == Measure::cv_bw_restricted) return {0.0, 0.0, slot(axis, p, 0), slot(axis, p, 1)};
  throw DomainError("phase_space_settings: not a phase-space measure");
}

EpsilonSettings epsilon_settings(std::span<const double> p) {
  if (p.size() != 4) throw DomainError("epsilon_settings: expects 4 parameters");
  return {p[0], p[1], p[2], p[3]};
}

Objective bell_objective(StateFamily family, Measure m, double alpha, const DecoherenceClock& clock,
                         AxisMode axis) {
  Objective obj;
  obj.dimension = parameter_count(m, axis);
  const std::size_t per = axis == AxisMode::full ? 2 : 1;
  switch (m) {
    case Measure::cv_generalized:
    case Measure::cv_bw_restricted: {
      const TwoModeDyadSum state = family_state(family, alpha, clock);
      obj.evaluate = [state, m, axis](std::span<const double> p) {
        return std::abs(bell_combination(state, phase_space_settings(m, axis, p)));
      };
      obj.party_swap = slot_swap(m == Measure::cv_generalized ? 4 : 2, per);
      break;
    }
    case Measure::qubit_displaced: {
      if (family != StateFamily::c_minus) throw DomainError("qubit measures are defined for c-minus only");
      // Validate alpha once, up front, rather than on every evaluation.
      (void)CatBasis(alpha, clock);
      obj.evaluate = [alpha, clock](std::span<const double> p) {
        return bell_mixed_displaced(alpha, clock, epsilon_settings(p));
      };
      obj.party_swap = {2, 3, 0, 1};
      break;
    }
    case Measure::qubit_ideal:
      throw DomainError("qubit-ideal has no settings to optimize");
  }
  return obj;
}

MeasureResult optimized_bell(StateFamily family, Measure m, double alpha, const DecoherenceClock& clock,
                             const SearchConfig& config, std::span<const std::vector<double>> warm_starts) {
  MeasureResult out;
  if (m == Measure::qubit_ideal) {
    if (family != StateFamily::c_minus) throw DomainError("qubit measures are defined for c-minus only");
    out.value = horodecki_bmax(rho_minus_matrix(alpha, clock));
    return out;
  }
  SearchConfig cfg = config;
  cfg.seed_box_halfwidth = std::max(config.seed_box_halfwidth, 2.0 * alpha);
  out.report = maximize(bell_objective(family, m, alpha, clock, config.axis_mode), cfg, warm_starts);
  out.value = out.report.best_value;
  out.parameters = out.report.best_settings;
  return out;
}

std::vector<MeasureResult> r_sweep(StateFamily family, Measure m, double alpha, std::span<const double> rs,
                                   const SearchConfig& config) {
  std::vector<MeasureResult> out;
  out.reserve(rs.size());
  std::vector<std::vector<double>> warm;
  for (double r : rs) {
    try {
      out.push_back(optimized_bell(family, m, alpha, clock_from_r(r), config, warm));
    } catch (const Error& e) {
      throw Error("sweep point r=" + std::to_string(r) + ": " + e.what());
    }
    warm.assign(1, out.back().parameters);
    if (warm.front().empty()) warm.clear();
  }
  return out;
}

Crossing find_crossing(std::span<const double> rs, std::span<const double> values, double threshold) {
  if (rs.size() != values.size() || rs.empty()) throw DomainError("find_crossing: mismatched or empty grid");
  Crossing c;
  std::size_t last = rs.size();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (values[i] > threshold) last = i;
  }
  if (last == rs.size()) {
    c.r = rs.front();
    return c;
  }
  c.ever_violates = true;
  if (last + 1 == rs.size()) {
    c.r = rs.back();
    return c;
  }
  c.bracketed = true;
  const double b0 = values[last];
  const double b1 = values[last + 1];
  c.r = rs[last] + (b0 - threshold) * (rs[last + 1] - rs[last]) / (b0 - b1);
  return c;
}

std::vector<double> grid(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) throw DomainError("grid: need step > 0 and stop >= start");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-6));
  std::vector<double> out;
  out.reserve(n + 1);
  for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

}  // namespace ecsbell
