#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ecsbell/measures.hpp"
#include "ecsbell/optimizer.hpp"

namespace ecsbell {

enum class OutputFormat { csv, json };

std::string to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

/// Parses "0.5,1,2" or "0:0.99:0.01" (start:stop:step, inclusive) or a mix
/// of both separated by commas. Throws ParseError naming the offending item.
std::vector<double> parse_value_list(const std::string& spec, const std::string& what = "list");

/// One optimized curve family: every alpha crossed with every r.
struct SweepJob {
  std::string figure;  ///< informational tag, empty for custom sweeps
  StateFamily family = StateFamily::c_minus;
  std::string alpha = "1";  ///< value-list syntax, see parse_value_list
  std::string r = "0";
  Measure measure = Measure::cv_generalized;
  SearchConfig search;
  bool warm_start = true;
  std::string out;  ///< empty or "-" for stdout
  OutputFormat format = OutputFormat::csv;

  /// Flat "key = value" text, one field per line, in a fixed key order.
  std::string serialize() const;
  /// Inverse of serialize(); unknown keys, bad values and duplicates are
  /// ParseErrors that name the line. Missing keys keep their defaults.
  static SweepJob parse(const std::string& text);
};

/// One output row. Figure 6 rows carry a parity probability in `value`.
struct ResultRow {
  std::string curve;
  std::string family;
  std::string measure;
  double alpha = 0.0;
  double r = 0.0;
  double sweep_param = 0.0;
  double value = 0.0;
  bool violates = false;
  std::vector<double> parameters;
  long iterations = 0;
  int starts_converged = 0;
  long evaluations = 0;
};

struct JobOutput {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<ResultRow> rows;
  std::vector<std::string> summary;
};

inline constexpr int kSchemaVersion = 1;
/// Fixed CSV header; parameter columns p0..p7 are blank when unused.
std::string csv_header();

/// Rows for every (alpha, r) in sweep order, plus the summary lines.
JobOutput run_sweep(const SweepJob& job);

struct FigureOverrides {
  std::string alpha;  ///< empty keeps the figure's own list
  std::string r;
  SearchConfig search;
  OutputFormat format = OutputFormat::csv;
  std::string out;
};

/// Tags fig2 .. fig7.
JobOutput run_figure(const std::string& tag, const FigureOverrides& overrides);

std::string render(const JobOutput& output, OutputFormat format);
/// Writes to `path`, or to `os` when the path is empty or "-".
void write_output(const JobOutput& output, OutputFormat format, const std::string& path, std::ostream& os);

struct EvalRequest {
  StateFamily family = StateFamily::c_minus;
  double alpha = 1.0;
  double r = 0.0;
  Measure measure = Measure::cv_generalized;
  std::string settings = "optimize";  ///< "optimize" or a comma-separated parameter list
  SearchConfig search;
};

/// One evaluation or optimization, echoing the resolved request.
nlohmann::json evaluate(const EvalRequest& request);

}  // namespace ecsbell
