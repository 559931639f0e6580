#include "ecsbell/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include <omp.h>

namespace ecsbell {

std::string to_string(AxisMode mode) {
  switch (mode) {
    case AxisMode::real: return "real";
    case AxisMode::imaginary: return "imag";
    case AxisMode::full: return "full";
  }
  return "full";
}

AxisMode axis_mode_from_string(const std::string& s) {
  if (s == "real") return AxisMode::real;
  if (s == "imag" || s == "imaginary") return AxisMode::imaginary;
  if (s == "full") return AxisMode::full;
  throw DomainError("unknown axis mode '" + s + "' (expected real, imag or full)");
}

void SearchConfig::validate() const {
  if (starts < 0) throw DomainError("SearchConfig: starts must be >= 0");
  if (!(convergence_tol > 0.0)) throw DomainError("SearchConfig: convergence_tol must be > 0");
  if (!(gradient_step > 0.0)) throw DomainError("SearchConfig: gradient_step must be > 0");
  if (!(seed_box_halfwidth > 0.0)) throw DomainError("SearchConfig: seed_box_halfwidth must be > 0");
  if (max_iterations <= 0) throw DomainError("SearchConfig: max_iterations must be > 0");
}

namespace {

using Vec = std::vector<double>;

struct StartResult {
  double value = -INFINITY;
  Vec x;
  long iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

std::string format_point(const Vec& x) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ']';
  return os.str();
}

class CountingObjective {
 public:
  explicit CountingObjective(const Objective& f) : f_(f) {}

  double operator()(const Vec& x) {
    ++count_;
    const double v = f_.evaluate(x);
    if (!std::isfinite(v)) {
      throw NonFiniteObjectiveError("objective returned a non-finite value at " + format_point(x), x);
    }
    return v;
  }
  long count() const { return count_; }

 private:
  const Objective& f_;
  long count_ = 0;
};

Vec swapped(const Objective& f, const Vec& x) {
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[f.party_swap[i]];
  return y;
}

// Representative of the orbit {x, swap(x)}: the lexicographically smaller one.
Vec fold(const Objective& f, const SearchConfig& cfg, Vec x) {
  if (!cfg.symmetry_constraint || f.party_swap.empty()) return x;
  Vec y = swapped(f, x);
  return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end()) ? y : x;
}

double norm2(const Vec& v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return s;
}

Vec gradient(CountingObjective& f, const Vec& x, double step) {
  Vec g(x.size());
  Vec probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

// Steepest ascent with a Barzilai-Borwein trial step and Armijo backtracking.
StartResult ascend(const Objective& objective, const SearchConfig& cfg, Vec x) {
  CountingObjective f(objective);
  StartResult res;
  double fx = f(x);
  Vec g = gradient(f, x, cfg.gradient_step);
  double step = 1.0 / std::max(1.0, std::sqrt(norm2(g)));
  constexpr double kArmijo = 1e-4;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    res.iterations = it + 1;
    const double gg = norm2(g);
    if (std::sqrt(gg) < cfg.convergence_tol) {
      res.converged = true;
      break;
    }
    Vec trial(x.size());
    double ftrial = fx;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * g[i];
      ftrial = f(trial);
      if (ftrial >= fx + kArmijo * step * gg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || ftrial - fx <= 1e-15 * std::max(1.0, std::abs(fx))) {
      // No measurable ascent left along the gradient.
      if (accepted && ftrial > fx) {
        x = trial;
        fx = ftrial;
      }
      res.converged = true;
      break;
    }
    Vec gnew = gradient(f, trial, cfg.gradient_step);
    double sy = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = trial[i] - x[i];
      const double y = gnew[i] - g[i];
      sy += s * y;
      yy += y * y;
    }
    x = std::move(trial);
    fx = ftrial;
    g = std::move(gnew);
    step = (yy > 0.0 && sy != 0.0) ? std::clamp(std::abs(sy) / yy, 1e-10, 1e3) : 2.0 * step;
  }
  res.value = fx;
  res.x = std::move(x);
  res.evaluations = f.count();
  return res;
}

// Warm starts occupy indices [0, w); random start k sits at w + k.
Vec start_point(const Objective& f, const SearchConfig& cfg,
                std::span<const std::vector<double>> warm, int index) {
  const int w = static_cast<int>(warm.size());
  if (index < w) {
    if (warm[index].size() != f.dimension) throw DomainError("warm start has wrong dimension");
    return fold(f, cfg, warm[index]);
  }
  return seed_point(f, cfg, index - w);
}

bool better(const StartResult& cand, const StartResult& best) {
  if (cand.value > best.value + 1e-12) return true;
  if (cand.value < best.value - 1e-12) return false;
  // Equal optima: lowest-norm settings win, earlier start on exact ties.
  return norm2(cand.x) < norm2(best.x);
}

OptimizationReport merge(const Objective& f, const SearchConfig& cfg,
                         std::vector<StartResult>& results, int warm_count) {
  OptimizationReport rep;
  int best = -1;
  for (int i = 0; i < static_cast<int>(results.size()); ++i) {
    const auto& r = results[i];
    rep.iterations_used += r.iterations;
    rep.objective_evaluations += r.evaluations;
    rep.starts_converged += r.converged ? 1 : 0;
    if (best < 0 || better(r, results[best])) best = i;
  }
  if (best >= 0) {
    rep.best_value = results[best].value;
    rep.best_settings = fold(f, cfg, results[best].x);
    rep.best_start = best < warm_count ? -1 : best - warm_count;
    if (rep.best_settings != results[best].x) {
      // The folded twin is an equally good point only for swap-symmetric
      // objectives; keep the value consistent with the reported settings.
      rep.best_value = f.evaluate(rep.best_settings);
      ++rep.objective_evaluations;
      if (rep.best_value < results[best].value - 1e-12) {
        rep.best_settings = results[best].x;
        rep.best_value = results[best].value;
      }
    }
  }
  return rep;
}

void check_inputs(const Objective& f, const SearchConfig& cfg, std::size_t warm) {
  cfg.validate();
  if (f.dimension == 0 || !f.evaluate) throw DomainError("maximize: empty objective");
  if (!f.party_swap.empty() && f.party_swap.size() != f.dimension) {
    throw DomainError("maximize: party_swap size does not match dimension");
  }
  if (cfg.starts + static_cast<int>(warm) == 0) throw DomainError("maximize: no starts");
}

}  // namespace

std::vector<double> seed_point(const Objective& objective, const SearchConfig& config, int index) {
  // One generator per start, keyed by (rng_seed, index), so the seed does not
  // depend on which thread runs the start.
  std::seed_seq seq{static_cast<std::uint32_t>(config.rng_seed),
                    static_cast<std::uint32_t>(config.rng_seed >> 32),
                    static_cast<std::uint32_t>(index), 0x9e3779b9u};
  std::mt19937_64 gen(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Log-uniform radius: Bell optima of large amplitudes sit at small settings.
  const double radius = config.seed_box_halfwidth * std::pow(10.0, -3.0 * unit(gen));
  Vec x(objective.dimension);
  for (auto& e : x) e = radius * (2.0 * unit(gen) - 1.0);
  return fold(objective, config, std::move(x));
}

OptimizationReport maximize_serial(const Objective& objective, const SearchConfig& config,
                                   std::span<const std::vector<double>> warm_starts) {
  check_inputs(objective, config, warm_starts.size());
  const int w = static_cast<int>(warm_starts.size());
  const int total = w + config.starts;
  std::vector<StartResult> results(total);
  for (int i = 0; i < total; ++i) {
    results[i] = ascend(objective, config, start_point(objective, config, warm_starts, i));
  }
  return merge(objective, config, results, w);
}

OptimizationReport maximize(const Objective& objective, const SearchConfig& config,
                            std::span<const std::vector<double>> warm_starts) {
  check_inputs(objective, config, warm_starts.size());
  const int w = static_cast<int>(warm_starts.size());
  const int total = w + config.starts;
  std::vector<StartResult> results(total);
  std::vector<std::exception_ptr> errors(total);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < total; ++i) {
    try {
      results[i] = ascend(objective, config, start_point(objective, config, warm_starts, i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return merge(objective, config, results, w);
}

namespace {

struct GridScan {
  double best = -INFINITY;
  Vec best_x;
  std::size_t points = 0;
};

// Scans every grid point whose first coordinate has index `first`.
void scan_slice(const Objective& f, double halfwidth, double resolution, int per_axis, int first,
                GridScan& out) {
  const std::size_t n = f.dimension;
  std::vector<int> idx(n, 0);
  idx[0] = first;
  Vec x(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = -halfwidth + resolution * idx[i];
    const double v = f.evaluate(x);
    if (!std::isfinite(v)) throw NonFiniteObjectiveError("grid_search: non-finite objective", x);
    ++out.points;
    if (v > out.best) {
      out.best = v;
      out.best_x = x;
    }
    std::size_t k = n - 1;
    while (k > 0 && ++idx[k] == per_axis) idx[k--] = 0;
    if (k == 0) break;
  }
}

int grid_count(double halfwidth, double resolution) {
  if (!(halfwidth > 0.0) || !(resolution > 0.0)) throw DomainError("grid_search: bad box");
  return static_cast<int>(std::floor(2.0 * halfwidth / resolution + 1e-9)) + 1;
}

GridResult reduce(std::vector<GridScan>& slices) {
  GridResult out;
  double best = -INFINITY;
  for (auto& s : slices) {
    out.points += s.points;
    if (s.best > best) {
      best = s.best;
      out.best_settings = s.best_x;
    }
  }
  out.best_value = best;
  return out;
}

}  // namespace

GridResult grid_search_serial(const Objective& objective, double halfwidth, double resolution) {
  const int per_axis = grid_count(halfwidth, resolution);
  std::vector<GridScan> slices(per_axis);
  for (int i = 0; i < per_axis; ++i) scan_slice(objective, halfwidth, resolution, per_axis, i, slices[i]);
  return reduce(slices);
}

GridResult grid_search(const Objective& objective, double halfwidth, double resolution) {
  const int per_axis = grid_count(halfwidth, resolution);
  std::vector<GridScan> slices(per_axis);
  std::vector<std::exception_ptr> errors(per_axis);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < per_axis; ++i) {
    try {
      scan_slice(objective, halfwidth, resolution, per_axis, i, slices[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reduce(slices);
}

namespace {

[[noreturn]] void rethrow_tagged(double param) {
  try {
    throw;
  } catch (const NonFiniteObjectiveError& e) {
    std::ostringstream os;
    os.precision(17);
    os << "sweep point " << param << ": " << e.what();
    throw NonFiniteObjectiveError(os.str(), e.settings());
  } catch (const Error& e) {
    std::ostringstream os;
    os.precision(17);
    os << "sweep point " << param << ": " << e.what();
    throw Error(os.str());
  }
}

}  // namespace

std::vector<OptimizationReport> sweep(const std::function<Objective(double)>& family,
                                      std::span<const double> params, const SearchConfig& config,
                                      bool warm_start) {
  if (params.empty()) throw DomainError("sweep: empty parameter list");
  const int n = static_cast<int>(params.size());
  std::vector<OptimizationReport> out(n);

  if (warm_start) {
    for (int i = 0; i < n; ++i) {
      try {
        const Objective f = family(params[i]);
        std::vector<std::vector<double>> warm;
        if (i > 0 && out[i - 1].best_settings.size() == f.dimension) {
          warm.push_back(out[i - 1].best_settings);
        }
        out[i] = maximize(f, config, warm);
      } catch (const Error&) {
        rethrow_tagged(params[i]);
      }
    }
    return out;
  }

  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      try {
        out[i] = maximize_serial(family(params[i]), config);
      } catch (const Error&) {
        rethrow_tagged(params[i]);
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace ecsbell
