#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ecsbell {

/// Randomized closed-form vs number-basis equivalence checks.
enum class OracleSuite { overlaps, parity, decoherence, qubit, bell };

std::string to_string(OracleSuite s);
/// "overlaps" | "parity" | "decoherence" | "qubit" | "bell"; "all" is handled by callers.
OracleSuite oracle_suite_from_string(const std::string& s);
std::vector<OracleSuite> all_oracle_suites();

struct OracleCaseFailure {
  int index;
  std::string description;
  double deviation;
};

struct OracleReport {
  std::string suite;
  int cases = 0;
  std::uint64_t seed = 0;
  int n_max = 64;
  double tolerance = 1e-8;
  double max_deviation = 0.0;
  std::vector<OracleCaseFailure> failures;

  bool passed() const { return failures.empty(); }
};

/// Case 0 of every suite is a fixed trivial point (zero amplitude shift, r = 0);
/// the remaining cases draw |alpha| <= 3 and r in [0, 1) from `seed`.
OracleReport run_oracle_suite(OracleSuite suite, int cases, std::uint64_t seed, int n_max = 64,
                              double tolerance = 1e-8);

}  // namespace ecsbell
