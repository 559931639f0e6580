// Command-line front end: figure data, single evaluations, oracle checks and
// custom sweeps. Exit status 0 on success, 1 on validation errors, 2 when an
// oracle check fails.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecsbell/errors.hpp"
#include "ecsbell/jobs.hpp"
#include "ecsbell/oracle_suites.hpp"

namespace {

using namespace ecsbell;

struct CommonOptions {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 7;
  int starts = 64;
  std::string axis = "full";
  bool symmetry = true;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", o.seed, "Optimizer seed");
  cmd->add_option("--starts", o.starts, "Random optimizer starts");
  cmd->add_option("--axis", o.axis, "Displacement directions: real, imag or full")
      ->check(CLI::IsMember({"real", "imag", "imaginary", "full"}));
  cmd->add_flag("--symmetry,!--no-symmetry", o.symmetry, "Identify settings related by the party swap");
}

SearchConfig search_from(const CommonOptions& o) {
  SearchConfig c;
  c.axis_mode = axis_mode_from_string(o.axis);
  c.symmetry_constraint = o.symmetry;
  c.starts = o.starts;
  c.rng_seed = o.seed;
  return c;
}

void print_summary(const JobOutput& out, const std::string& path) {
  std::ostream& os = (path.empty() || path == "-") ? std::cerr : std::cout;
  for (const auto& line : out.summary) os << line << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-CHSH measures of entangled coherent states"};
  app.require_subcommand(1);

  CommonOptions fig_opts;
  std::string tag, fig_alpha, fig_r;
  auto* fig = app.add_subcommand("figure", "Reproduce the data behind one figure (fig2 .. fig7)");
  fig->add_option("tag", tag)->required()->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}));
  fig->add_option("--alpha", fig_alpha, "Override the amplitude list, e.g. 2 or 2,3 or 0.5:5:0.5");
  fig->add_option("--r", fig_r, "Override the r grid (the eps grid for fig6)");
  add_common(fig, fig_opts);

  CommonOptions eval_opts;
  EvalRequest req;
  std::string family = "c-minus", measure = "cv-generalized";
  auto* ev = app.add_subcommand("eval", "One Bell evaluation or optimization as a JSON record");
  ev->add_option("--family", family, "c-minus or c-plus")->check(CLI::IsMember({"c-minus", "c-plus"}));
  ev->add_option("--alpha", req.alpha, "Real coherent amplitude");
  ev->add_option("--r", req.r, "Normalized time r in [0, 1)");
  ev->add_option("--measure", measure, "cv-generalized, cv-bw-restricted, qubit-ideal or qubit-displaced");
  ev->add_option("--settings", req.settings, "'optimize' or comma-separated parameters");
  add_common(ev, eval_opts);

  std::string suite = "all";
  int cases = 100;
  std::uint64_t oracle_seed = 7;
  int n_max = 64;
  std::string oracle_out;
  auto* oc = app.add_subcommand("oracle-check", "Closed forms against the number-basis oracle");
  oc->add_option("--suite", suite, "overlaps, parity, decoherence, qubit, bell or all")
      ->check(CLI::IsMember({"overlaps", "parity", "decoherence", "qubit", "bell", "all"}));
  oc->add_option("--cases", cases, "Random cases per suite");
  oc->add_option("--seed", oracle_seed, "Case generator seed");
  oc->add_option("--nmax", n_max, "Number-basis cut-off");
  oc->add_option("--out", oracle_out, "Also write the JSON report here");

  CommonOptions sweep_opts;
  std::string config_path;
  auto* sw = app.add_subcommand("sweep", "Run a sweep described by a key = value config file");
  sw->add_option("config", config_path)->required();
  add_common(sw, sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*fig) {
      FigureOverrides ov;
      ov.alpha = fig_alpha;
      ov.r = fig_r;
      ov.search = search_from(fig_opts);
      ov.format = output_format_from_string(fig_opts.format);
      ov.out = fig_opts.out;
      const JobOutput out = run_figure(tag, ov);
      write_output(out, ov.format, ov.out, std::cout);
      print_summary(out, ov.out);
    } else if (*ev) {
      req.family = family_from_string(family);
      req.measure = measure_from_string(measure);
      req.search = search_from(eval_opts);
      const std::string text = evaluate(req).dump(2) + "\n";
      if (eval_opts.out.empty() || eval_opts.out == "-") {
        std::cout << text;
      } else {
        std::ofstream f(eval_opts.out, std::ios::binary);
        if (!(f << text)) throw Error("cannot write '" + eval_opts.out + "'");
      }
    } else if (*oc) {
      std::vector<OracleSuite> suites =
          suite == "all" ? all_oracle_suites() : std::vector<OracleSuite>{oracle_suite_from_string(suite)};
      bool ok = true;
      nlohmann::json report = nlohmann::json::array();
      for (OracleSuite s : suites) {
        const OracleReport r = run_oracle_suite(s, cases, oracle_seed, n_max);
        std::cout << r.suite << ": cases=" << r.cases << " seed=" << r.seed << " n_max=" << r.n_max
                  << " max_deviation=" << r.max_deviation << " tolerance=" << r.tolerance << " "
                  << (r.passed() ? "PASS" : "FAIL") << "\n";
        nlohmann::json fails = nlohmann::json::array();
        for (const auto& f : r.failures) {
          std::cout << "  case " << f.index << ": deviation " << f.deviation << " at " << f.description << "\n";
          fails.push_back({{"index", f.index}, {"deviation", f.deviation}, {"case", f.description}});
        }
        report.push_back({{"suite", r.suite},
                          {"cases", r.cases},
                          {"seed", r.seed},
                          {"n_max", r.n_max},
                          {"tolerance", r.tolerance},
                          {"max_deviation", r.max_deviation},
                          {"passed", r.passed()},
                          {"failures", fails}});
        ok = ok && r.passed();
      }
      if (!oracle_out.empty()) {
        std::ofstream f(oracle_out, std::ios::binary);
        if (!(f << nlohmann::json{{"schema_version", kSchemaVersion}, {"suites", report}}.dump(2) << "\n")) {
          throw Error("cannot write '" + oracle_out + "'");
        }
      }
      return ok ? 0 : 2;
    } else if (*sw) {
      SweepJob job = SweepJob::parse(read_file(config_path));
      // Flags given on the command line take precedence over the file.
      if (sw->count("--out")) job.out = sweep_opts.out;
      if (sw->count("--format")) job.format = output_format_from_string(sweep_opts.format);
      if (sw->count("--seed")) job.search.rng_seed = sweep_opts.seed;
      if (sw->count("--starts")) job.search.starts = sweep_opts.starts;
      if (sw->count("--axis")) job.search.axis_mode = axis_mode_from_string(sweep_opts.axis);
      if (sw->count("--symmetry") || sw->count("--no-symmetry")) job.search.symmetry_constraint = sweep_opts.symmetry;
      const JobOutput out = run_sweep(job);
      write_output(out, job.format, job.out, std::cout);
      print_summary(out, job.out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
