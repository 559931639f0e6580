#include "ecsbell/jobs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "ecsbell/errors.hpp"
#include "ecsbell/qubit22.hpp"

namespace ecsbell {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool to_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  return res.ec == std::errc() && res.ptr == t.data() + t.size() && std::isfinite(out);
}

template <typename Int>
bool to_int(const std::string& s, Int& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  return res.ec == std::errc() && res.ptr == t.data() + t.size();
}

bool to_bool(const std::string& s, bool& out) {
  const std::string t = trim(s);
  if (t == "true") return out = true, true;
  if (t == "false") return out = false, true;
  return false;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::vector<std::pair<std::string, std::string>> search_pairs(const SearchConfig& c) {
  return {{"axis", to_string(c.axis_mode)},
          {"symmetry", bool_str(c.symmetry_constraint)},
          {"starts", std::to_string(c.starts)},
          {"halfwidth", num(c.seed_box_halfwidth)},
          {"gradient_step", num(c.gradient_step)},
          {"tol", num(c.convergence_tol)},
          {"max_iter", std::to_string(c.max_iterations)},
          {"seed", std::to_string(c.rng_seed)}};
}

std::vector<std::pair<std::string, std::string>> job_pairs(const SweepJob& j) {
  std::vector<std::pair<std::string, std::string>> out{{"figure", j.figure},
                                                       {"family", to_string(j.family)},
                                                       {"alpha", j.alpha},
                                                       {"r", j.r},
                                                       {"measure", to_string(j.measure)}};
  for (auto& kv : search_pairs(j.search)) out.push_back(kv);
  out.emplace_back("warm_start", bool_str(j.warm_start));
  out.emplace_back("out", j.out);
  out.emplace_back("format", to_string(j.format));
  return out;
}

struct Point {
  double alpha;
  double r;
};

std::vector<MeasureResult> compute_points(const SweepJob& job, const std::vector<Point>& pts) {
  std::vector<MeasureResult> out;
  auto tag = [&](std::size_t i, const std::exception& e) {
    return Error("sweep point alpha=" + num(pts[i].alpha) + " r=" + num(pts[i].r) + ": " + e.what());
  };
  if (job.measure == Measure::qubit_ideal || job.warm_start) {
    std::vector<std::vector<double>> warm;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      try {
        out.push_back(optimized_bell(job.family, job.measure, pts[i].alpha, clock_from_r(pts[i].r), job.search,
                                     warm));
      } catch (const Error& e) {
        throw tag(i, e);
      }
      warm.clear();
      if (!out.back().parameters.empty()) warm.push_back(out.back().parameters);
    }
    return out;
  }
  std::vector<double> index(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) index[i] = static_cast<double>(i);
  auto family = [&](double i) {
    const Point& p = pts[static_cast<std::size_t>(i)];
    return bell_objective(job.family, job.measure, p.alpha, clock_from_r(p.r), job.search.axis_mode);
  };
  const auto reports = sweep(family, index, job.search, false);
  for (const auto& rep : reports) {
    MeasureResult m;
    m.value = rep.best_value;
    m.parameters = rep.best_settings;
    m.report = rep;
    out.push_back(std::move(m));
  }
  return out;
}

void summarize_alpha_curve(const std::string& curve, const std::vector<ResultRow>& rows,
                           std::vector<std::string>& summary) {
  if (rows.empty()) return;
  const auto best = std::max_element(rows.begin(), rows.end(),
                                     [](const ResultRow& a, const ResultRow& b) { return a.value < b.value; });
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].value >= rows[i - 1].value - 1e-3;
  summary.push_back(curve + ": B(alpha=" + num(rows.back().alpha) + ") = " + num(rows.back().value) +
                    "; max " + num(best->value) + " at alpha=" + num(best->alpha) +
                    "; non-decreasing within 1e-3: " + (monotone ? "yes" : "no"));
}

void summarize_r_curve(const std::string& curve, const std::vector<ResultRow>& rows,
                       std::vector<std::string>& summary) {
  if (rows.empty()) return;
  std::vector<double> rs, bs;
  for (const auto& row : rows) {
    rs.push_back(row.r);
    bs.push_back(row.value);
  }
  const Crossing c = find_crossing(rs, bs);
  std::string note = c.bracketed ? "bracketed" : (c.ever_violates ? "B > 2 up to the last grid point" : "never above 2");
  summary.push_back(curve + ": crossing r* = " + num(c.r) + " (" + note + ")");
}

JobOutput run_sweep_rows(const SweepJob& job) {
  job.search.validate();
  const std::vector<double> alphas = parse_value_list(job.alpha, "alpha");
  const std::vector<double> rs = parse_value_list(job.r, "r");
  const bool alpha_sweep = rs.size() == 1 && alphas.size() > 1;
  std::vector<Point> pts;
  for (double a : alphas)
    for (double r : rs) pts.push_back({a, r});
  const auto results = compute_points(job, pts);

  JobOutput out;
  out.config = job_pairs(job);
  const std::string base = to_string(job.family) + ":" + to_string(job.measure);
  std::vector<ResultRow> curve_rows;
  std::string current;
  auto flush = [&] {
    if (curve_rows.empty()) return;
    if (alpha_sweep) {
      summarize_alpha_curve(current, curve_rows, out.summary);
    } else {
      summarize_r_curve(current, curve_rows, out.summary);
    }
    curve_rows.clear();
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ResultRow row;
    row.curve = alpha_sweep ? base : base + ":alpha=" + num(pts[i].alpha);
    if (row.curve != current) {
      flush();
      current = row.curve;
    }
    row.family = to_string(job.family);
    row.measure = to_string(job.measure);
    row.alpha = pts[i].alpha;
    row.r = pts[i].r;
    row.sweep_param = alpha_sweep ? pts[i].alpha : pts[i].r;
    row.value = results[i].value;
    row.violates = row.value > 2.0;
    row.parameters = results[i].parameters;
    row.iterations = results[i].report.iterations_used;
    row.starts_converged = results[i].report.starts_converged;
    row.evaluations = results[i].report.objective_evaluations;
    curve_rows.push_back(row);
    out.rows.push_back(std::move(row));
  }
  flush();
  return out;
}

void append(JobOutput& into, JobOutput&& part) {
  for (auto& r : part.rows) into.rows.push_back(std::move(r));
  for (auto& s : part.summary) into.summary.push_back(std::move(s));
}

std::vector<double> parse_settings(const std::string& text) {
  std::vector<double> out;
  std::size_t offset = 0;
  int index = 0;
  for (const std::string& tok : split(text, ',')) {
    double v = 0.0;
    if (!to_double(tok, v)) {
      throw ParseError("settings: item " + std::to_string(index + 1) + " at column " + std::to_string(offset + 1) +
                       " ('" + trim(tok) + "') is not a finite number");
    }
    out.push_back(v);
    offset += tok.size() + 1;
    ++index;
  }
  return out;
}

nlohmann::json settings_json(Measure m, AxisMode axis, const std::vector<double>& p) {
  nlohmann::json j = nlohmann::json::object();
  if (p.empty()) return j;
  if (m == Measure::qubit_displaced) {
    const EpsilonSettings e = epsilon_settings(p);
    return {{"eps1", e.e1}, {"eps1_prime", e.e1_prime}, {"eps2", e.e2}, {"eps2_prime", e.e2_prime}};
  }
  const PhaseSpaceSettings s = phase_space_settings(m, axis, p);
  auto c = [](ComplexAmplitude z) { return nlohmann::json::array({z.re(), z.im()}); };
  return {{"a", c(s.a)}, {"b", c(s.b)}, {"a_prime", c(s.a_prime)}, {"b_prime", c(s.b_prime)}};
}

nlohmann::json report_json(const OptimizationReport& r) {
  return {{"best_value", r.best_value},
          {"best_start", r.best_start},
          {"iterations_used", r.iterations_used},
          {"starts_converged", r.starts_converged},
          {"objective_evaluations", r.objective_evaluations}};
}

}  // namespace

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ParseError("unknown format '" + s + "' (expected csv or json)");
}

std::vector<double> parse_value_list(const std::string& spec, const std::string& what) {
  std::vector<double> out;
  int index = 0;
  for (const std::string& item : split(spec, ',')) {
    ++index;
    const auto parts = split(item, ':');
    const std::string where = what + " item " + std::to_string(index) + " ('" + trim(item) + "')";
    if (parts.size() == 1) {
      double v = 0.0;
      if (!to_double(parts[0], v)) throw ParseError(where + ": not a finite number");
      out.push_back(v);
    } else if (parts.size() == 3) {
      double a = 0.0, b = 0.0, step = 0.0;
      if (!to_double(parts[0], a) || !to_double(parts[1], b) || !to_double(parts[2], step)) {
        throw ParseError(where + ": range needs numeric start:stop:step");
      }
      if (!(step > 0.0) || b < a) throw ParseError(where + ": range needs step > 0 and stop >= start");
      for (double v : grid(a, b, step)) out.push_back(v);
    } else {
      throw ParseError(where + ": expected a number or start:stop:step");
    }
  }
  return out;
}

std::string SweepJob::serialize() const {
  std::string s;
  for (const auto& [k, v] : job_pairs(*this)) s += k + " = " + v + "\n";
  return s;
}

SweepJob SweepJob::parse(const std::string& text) {
  SweepJob job;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string at = "line " + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(at + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (seen.count(key)) {
      throw ParseError(at + ": duplicate key '" + key + "' (first on line " + std::to_string(seen[key]) + ")");
    }
    seen[key] = lineno;
    auto bad = [&](const std::string& expected) {
      return ParseError(at + ": key '" + key + "': '" + value + "' is not " + expected);
    };
    try {
      if (key == "figure") {
        job.figure = value;
      } else if (key == "family") {
        job.family = family_from_string(value);
      } else if (key == "alpha") {
        parse_value_list(value, "alpha");
        job.alpha = value;
      } else if (key == "r") {
        parse_value_list(value, "r");
        job.r = value;
      } else if (key == "measure") {
        job.measure = measure_from_string(value);
      } else if (key == "axis") {
        job.search.axis_mode = axis_mode_from_string(value);
      } else if (key == "symmetry") {
        if (!to_bool(value, job.search.symmetry_constraint)) throw bad("true or false");
      } else if (key == "starts") {
        if (!to_int(value, job.search.starts)) throw bad("an integer");
      } else if (key == "halfwidth") {
        if (!to_double(value, job.search.seed_box_halfwidth)) throw bad("a number");
      } else if (key == "gradient_step") {
        if (!to_double(value, job.search.gradient_step)) throw bad("a number");
      } else if (key == "tol") {
        if (!to_double(value, job.search.convergence_tol)) throw bad("a number");
      } else if (key == "max_iter") {
        if (!to_int(value, job.search.max_iterations)) throw bad("an integer");
      } else if (key == "seed") {
        if (!to_int(value, job.search.rng_seed)) throw bad("an unsigned integer");
      } else if (key == "warm_start") {
        if (!to_bool(value, job.warm_start)) throw bad("true or false");
      } else if (key == "out") {
        job.out = value;
      } else if (key == "format") {
        job.format = output_format_from_string(value);
      } else {
        throw ParseError(at + ": unknown key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(at + ": " + e.what());
    }
  }
  try {
    job.search.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return job;
}

std::string csv_header() {
  return "curve,family,measure,alpha,r,sweep_param,value,violates,p0,p1,p2,p3,p4,p5,p6,p7,"
         "iterations,starts_converged,evaluations";
}

JobOutput run_sweep(const SweepJob& job) { return run_sweep_rows(job); }

JobOutput run_figure(const std::string& tag, const FigureOverrides& ov) {
  ov.search.validate();
  JobOutput out;
  out.config = {{"figure", tag}, {"alpha", ov.alpha}, {"r", ov.r}};
  for (auto& kv : search_pairs(ov.search)) out.config.push_back(kv);
  out.config.emplace_back("warm_start", "true");
  out.config.emplace_back("out", ov.out);
  out.config.emplace_back("format", to_string(ov.format));

  auto job = [&](StateFamily f, Measure m, const std::string& alpha, const std::string& r) {
    SweepJob j;
    j.figure = tag;
    j.family = f;
    j.measure = m;
    j.alpha = ov.alpha.empty() ? alpha : ov.alpha;
    j.r = ov.r.empty() ? r : ov.r;
    j.search = ov.search;
    return j;
  };
  const std::string r_grid = "0:0.99:0.01";
  auto set_default = [&](const std::string& key, const std::string& value) {
    for (auto& kv : out.config)
      if (kv.first == key && kv.second.empty()) kv.second = value;
  };

  if (tag == "fig2") {
    set_default("alpha", "0.05:5:0.05");
    set_default("r", "0");
    for (Measure m : {Measure::cv_generalized, Measure::cv_bw_restricted})
      for (StateFamily f : {StateFamily::c_minus, StateFamily::c_plus})
        append(out, run_sweep(job(f, m, "0.05:5:0.05", "0")));
  } else if (tag == "fig3" || tag == "fig5" || tag == "fig7") {
    const Measure m = tag == "fig3" ? Measure::cv_generalized
                                    : (tag == "fig5" ? Measure::qubit_ideal : Measure::qubit_displaced);
    set_default("alpha", "2,3,5");
    set_default("r", r_grid);
    append(out, run_sweep(job(StateFamily::c_minus, m, "2,3,5", r_grid)));
    if (tag == "fig7") {
      // Distance from the ideal-rotation curve at the same grid points.
      std::map<double, double> sup;
      for (const auto& row : out.rows) {
        const double ideal = horodecki_bmax(rho_minus_matrix(row.alpha, clock_from_r(row.r)));
        sup[row.alpha] = std::max(sup[row.alpha], std::abs(row.value - ideal));
      }
      for (const auto& [a, d] : sup) {
        out.summary.push_back("alpha=" + num(a) + ": sup_r |qubit-displaced - qubit-ideal| = " + num(d));
      }
    }
  } else if (tag == "fig4") {
    set_default("alpha", "0.1");
    set_default("r", r_grid);
    append(out, run_sweep(job(StateFamily::c_plus, Measure::cv_generalized, "0.1", r_grid)));
  } else if (tag == "fig6") {
    const std::string alpha = ov.alpha.empty() ? "2,5" : ov.alpha;
    const std::string eps = ov.r.empty() ? "0:1.5:0.005" : ov.r;
    set_default("alpha", alpha);
    set_default("r", eps);
    const auto es = parse_value_list(eps, "eps");
    for (double a : parse_value_list(alpha, "alpha")) {
      double lo = 1.0, hi = 0.0;
      for (const char* which : {"pe", "pe_tilde"}) {
        for (double e : es) {
          const ParityProbabilities p = displaced_parity_probs(a, DecoherenceClock{}, e);
          ResultRow row;
          row.curve = std::string(which) + ":alpha=" + num(a);
          row.family = "cat-basis";
          row.measure = which;
          row.alpha = a;
          row.sweep_param = e;
          row.value = std::string(which) == "pe" ? p.pe : p.pe_tilde;
          lo = std::min(lo, row.value);
          hi = std::max(hi, row.value);
          out.rows.push_back(std::move(row));
        }
      }
      out.summary.push_back("alpha=" + num(a) + ": parity probabilities span [" + num(lo) + ", " + num(hi) + "]");
    }
  } else {
    throw ValidationError("unknown figure tag '" + tag + "' (expected fig2 .. fig7)");
  }
  return out;
}

std::string render(const JobOutput& output, OutputFormat format) {
  if (format == OutputFormat::json) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = nlohmann::json::object();
    for (const auto& [k, v] : output.config) j["config"][k] = v;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : output.rows) {
      j["rows"].push_back({{"curve", r.curve},
                           {"family", r.family},
                           {"measure", r.measure},
                           {"alpha", r.alpha},
                           {"r", r.r},
                           {"sweep_param", r.sweep_param},
                           {"value", r.value},
                           {"violates", r.violates},
                           {"parameters", r.parameters},
                           {"iterations", r.iterations},
                           {"starts_converged", r.starts_converged},
                           {"evaluations", r.evaluations}});
    }
    j["summary"] = output.summary;
    return j.dump(2) + "\n";
  }
  std::string s = "# ecsbell schema_version = " + std::to_string(kSchemaVersion) + "\n";
  for (const auto& [k, v] : output.config) s += "# " + k + " = " + v + "\n";
  s += csv_header() + "\n";
  for (const auto& r : output.rows) {
    s += r.curve + "," + r.family + "," + r.measure + "," + num(r.alpha) + "," + num(r.r) + "," +
         num(r.sweep_param) + "," + num(r.value) + "," + (r.violates ? "1" : "0");
    for (std::size_t i = 0; i < 8; ++i) s += "," + (i < r.parameters.size() ? num(r.parameters[i]) : "");
    s += "," + std::to_string(r.iterations) + "," + std::to_string(r.starts_converged) + "," +
         std::to_string(r.evaluations) + "\n";
  }
  for (const auto& line : output.summary) s += "# summary: " + line + "\n";
  return s;
}

void write_output(const JobOutput& output, OutputFormat format, const std::string& path, std::ostream& os) {
  const std::string text = render(output, format);
  if (path.empty() || path == "-") {
    os << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error("write to '" + path + "' failed");
}

nlohmann::json evaluate(const EvalRequest& req) {
  req.search.validate();
  const DecoherenceClock clock = clock_from_r(req.r);
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  nlohmann::json echo = {{"family", to_string(req.family)},
                         {"alpha", req.alpha},
                         {"r", req.r},
                         {"measure", to_string(req.measure)},
                         {"settings", req.settings}};
  for (const auto& [k, v] : search_pairs(req.search)) echo[k] = v;
  j["request"] = echo;

  if (req.measure == Measure::qubit_ideal) {
    if (req.settings != "optimize") throw ValidationError("qubit-ideal takes no settings; use 'optimize'");
    const MeasureResult res = optimized_bell(req.family, req.measure, req.alpha, clock, req.search);
    j["value"] = res.value;
    j["violates"] = res.value > 2.0;
    const auto ev = tt_eigenvalues_closed_form(req.alpha, clock);
    j["tt_eigenvalues_closed_form"] = {ev[0], ev[1], ev[2]};
    j["closed_form_value"] = horodecki_bmax_closed_form(req.alpha, clock);
    return j;
  }

  if (req.settings == "optimize") {
    const MeasureResult res = optimized_bell(req.family, req.measure, req.alpha, clock, req.search);
    j["value"] = res.value;
    j["violates"] = res.value > 2.0;
    j["parameters"] = res.parameters;
    j["settings_decoded"] = settings_json(req.measure, req.search.axis_mode, res.parameters);
    j["report"] = report_json(res.report);
    return j;
  }

  const std::vector<double> p = parse_settings(req.settings);
  const std::size_t want = parameter_count(req.measure, req.search.axis_mode);
  if (p.size() != want) {
    throw ValidationError("settings: " + to_string(req.measure) + " with axis " + to_string(req.search.axis_mode) +
                          " takes " + std::to_string(want) + " values, got " + std::to_string(p.size()));
  }
  const Objective obj = bell_objective(req.family, req.measure, req.alpha, clock, req.search.axis_mode);
  const double v = obj.evaluate(p);
  j["value"] = v;
  j["violates"] = v > 2.0;
  j["parameters"] = p;
  j["settings_decoded"] = settings_json(req.measure, req.search.axis_mode, p);
  return j;
}

}  // namespace ecsbell
