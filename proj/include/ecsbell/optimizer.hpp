#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ecsbell/errors.hpp"

namespace ecsbell {

/// Which phase-space direction the displacement settings may take.
enum class AxisMode { real, imaginary, full };

std::string to_string(AxisMode mode);
AxisMode axis_mode_from_string(const std::string& s);

struct SearchConfig {
  AxisMode axis_mode = AxisMode::full;
  bool symmetry_constraint = true;
  int starts = 64;
  double seed_box_halfwidth = 2.0;
  double gradient_step = 1e-5;
  double convergence_tol = 1e-9;
  int max_iterations = 4000;
  std::uint64_t rng_seed = 7;

  /// Throws DomainError on a non-positive count or tolerance.
  void validate() const;
};

/// A real objective over a flat parameter vector.
///
/// `party_swap`, when non-empty, is the permutation that exchanges the two
/// parties' settings; it is what the symmetry constraint identifies.
/// `evaluate` must be pure and safe to call concurrently.
struct Objective {
  std::size_t dimension = 0;
  std::function<double(std::span<const double>)> evaluate;
  std::vector<std::size_t> party_swap;
};

struct OptimizationReport {
  double best_value = 0.0;
  std::vector<double> best_settings;
  int best_start = -1;  ///< -1 marks a warm start
  long iterations_used = 0;
  int starts_converged = 0;
  long objective_evaluations = 0;
};

/// Raised when the objective returns NaN/Inf; carries the offending point.
class NonFiniteObjectiveError : public Error {
 public:
  NonFiniteObjectiveError(const std::string& what, std::vector<double> settings)
      : Error(what), settings_(std::move(settings)) {}
  const std::vector<double>& settings() const noexcept { return settings_; }

 private:
  std::vector<double> settings_;
};

/// Multi-start steepest ascent. Starts are independent and run in parallel;
/// the result is merged by start index and is bitwise reproducible.
///
/// `warm_starts` are extra seeds tried in addition to the random ones.
OptimizationReport maximize(const Objective& objective, const SearchConfig& config,
                            std::span<const std::vector<double>> warm_starts = {});

/// Serial reference for maximize(); returns an identical report.
OptimizationReport maximize_serial(const Objective& objective, const SearchConfig& config,
                                   std::span<const std::vector<double>> warm_starts = {});

/// The deterministic random seed point of start `index`, after folding.
std::vector<double> seed_point(const Objective& objective, const SearchConfig& config, int index);

struct GridResult {
  double best_value = 0.0;
  std::vector<double> best_settings;
  std::size_t points = 0;
};

/// Brute-force maximum over the hypercube [-halfwidth, halfwidth]^n with the
/// given resolution. Parallel over the outermost coordinate.
GridResult grid_search(const Objective& objective, double halfwidth, double resolution);
GridResult grid_search_serial(const Objective& objective, double halfwidth, double resolution);

/// One optimization per sweep parameter.
///
/// With `warm_start` each point additionally starts from the previous optimum;
/// points then run in order, each maximize() parallel over its starts.
/// Without it the points themselves are distributed over threads.
std::vector<OptimizationReport> sweep(const std::function<Objective(double)>& family,
                                      std::span<const double> params, const SearchConfig& config,
                                      bool warm_start = false);

}  // namespace ecsbell
