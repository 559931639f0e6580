#pragma once

#include <span>
#include <string>
#include <vector>

#include "ecsbell/decoherence.hpp"
#include "ecsbell/dyad_sum.hpp"
#include "ecsbell/optimizer.hpp"
#include "ecsbell/parity_wigner.hpp"
#include "ecsbell/qubit22.hpp"

namespace ecsbell {

enum class Measure { cv_generalized, cv_bw_restricted, qubit_ideal, qubit_displaced };
enum class StateFamily { c_minus, c_plus };

std::string to_string(Measure m);
std::string to_string(StateFamily f);
/// "cv-generalized" | "cv-bw-restricted" | "qubit-ideal" | "qubit-displaced"
Measure measure_from_string(const std::string& s);
/// "c-minus" | "c-plus"
StateFamily family_from_string(const std::string& s);

/// The damped member of a family: |C+-> with real amplitude alpha, then the clock.
TwoModeDyadSum family_state(StateFamily family, double alpha, const DecoherenceClock& clock);

/// Free parameters of a measure.
///
/// cv-generalized: a, b, a', b' (one real per setting on a single axis, two in
/// full mode: re, im). cv-bw-restricted: a', b' only. qubit-displaced: eps1,
/// eps1', eps2, eps2' whatever the axis. qubit-ideal has none.
std::size_t parameter_count(Measure m, AxisMode axis);

PhaseSpaceSettings phase_space_settings(Measure m, AxisMode axis, std::span<const double> p);
EpsilonSettings epsilon_settings(std::span<const double> p);

/// |B| as a function of the measure's parameters, with the party-swap
/// permutation filled in. Throws DomainError for qubit measures on |C+>.
Objective bell_objective(StateFamily family, Measure m, double alpha, const DecoherenceClock& clock,
                         AxisMode axis);

struct MeasureResult {
  double value = 0.0;
  std::vector<double> parameters;
  OptimizationReport report;  ///< empty for qubit-ideal
};

/// Maximized Bell measure; qubit-ideal is the Horodecki value and needs no search.
/// The seed box half-width is raised to 2 alpha when that is larger.
MeasureResult optimized_bell(StateFamily family, Measure m, double alpha, const DecoherenceClock& clock,
                             const SearchConfig& config,
                             std::span<const std::vector<double>> warm_starts = {});

/// Optimized measure along an r grid, each point warm-started from its predecessor.
std::vector<MeasureResult> r_sweep(StateFamily family, Measure m, double alpha,
                                   std::span<const double> rs, const SearchConfig& config);

struct Crossing {
  double r = 0.0;
  bool bracketed = false;      ///< a grid point above and a later one at or below the threshold
  bool ever_violates = false;  ///< some grid point above the threshold
};

/// Largest r with B > threshold, linearly interpolated between neighbouring
/// grid points. Unbracketed crossings report the last grid point.
Crossing find_crossing(std::span<const double> rs, std::span<const double> values,
                       double threshold = 2.0);

/// start, start + step, ... up to stop inclusive (within step/1e6).
std::vector<double> grid(double start, double stop, double step);

}  // namespace ecsbell
