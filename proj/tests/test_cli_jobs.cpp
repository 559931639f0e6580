#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ecsbell/errors.hpp"
#include "ecsbell/jobs.hpp"
#include "ecsbell/measures.hpp"
#include "ecsbell/oracle_suites.hpp"
#include "ecsbell/qubit22.hpp"

using namespace ecsbell;

TEST_CASE("value lists") {
  CHECK(parse_value_list("2,3,5") == std::vector<double>{2.0, 3.0, 5.0});
  const auto g = parse_value_list("0:0.99:0.01");
  CHECK(g.size() == 100);
  CHECK(g.back() == doctest::Approx(0.99));
  CHECK(parse_value_list("0.1, 1:2:0.5").size() == 4);
  CHECK_THROWS_WITH_AS(parse_value_list("1,abc"), doctest::Contains("item 2"), ParseError);
  CHECK_THROWS_AS(parse_value_list("1:0:0.1"), ParseError);
  CHECK_THROWS_AS(parse_value_list("1:2"), ParseError);
}

TEST_CASE("sweep job config round trip") {
  SweepJob job;
  job.figure = "custom";
  job.family = StateFamily::c_plus;
  job.alpha = "0.1";
  job.r = "0:0.5:0.05";
  job.measure = Measure::cv_bw_restricted;
  job.search.axis_mode = AxisMode::imaginary;
  job.search.symmetry_constraint = false;
  job.search.starts = 12;
  job.search.rng_seed = 99;
  job.search.convergence_tol = 3e-10;
  job.warm_start = false;
  job.out = "out.json";
  job.format = OutputFormat::json;
  const std::string text = job.serialize();
  const SweepJob back = SweepJob::parse(text);
  CHECK(back.serialize() == text);
  CHECK(back.search.convergence_tol == job.search.convergence_tol);
  CHECK(back.family == StateFamily::c_plus);
  CHECK_FALSE(back.warm_start);
}

TEST_CASE("config parse errors name the line") {
  CHECK_THROWS_WITH_AS(SweepJob::parse("alpha = 1\nbogus = 3\n"), doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(SweepJob::parse("# comment\n\nstarts = many\n"), doctest::Contains("line 3"), ParseError);
  CHECK_THROWS_WITH_AS(SweepJob::parse("r = 0\nr = 1\n"), doctest::Contains("duplicate"), ParseError);
  CHECK_THROWS_WITH_AS(SweepJob::parse("measure = homodyne\n"), doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_WITH_AS(SweepJob::parse("just words\n"), doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_AS(SweepJob::parse("tol = 0\n"), ParseError);
}

TEST_CASE("sweep output is reproducible and self-describing") {
  SweepJob job;
  job.alpha = "1,2";
  job.r = "0.1";
  job.search.starts = 6;
  const std::string a = render(run_sweep(job), OutputFormat::csv);
  const std::string b = render(run_sweep(SweepJob::parse(job.serialize())), OutputFormat::csv);
  CHECK(a == b);
  CHECK(a.find("# seed = 7") != std::string::npos);
  CHECK(a.find(csv_header()) != std::string::npos);

  job.warm_start = false;
  const JobOutput cold = run_sweep(job);
  REQUIRE(cold.rows.size() == 2);
  CHECK(cold.rows[0].sweep_param == 1.0);
  const std::string js = render(cold, OutputFormat::json);
  const auto parsed = nlohmann::json::parse(js);
  CHECK(parsed["schema_version"] == kSchemaVersion);
  CHECK(parsed["config"]["warm_start"] == "false");
  CHECK(parsed["rows"].size() == 2);
}

TEST_CASE("figure 5 restricted to one amplitude is a single decreasing curve") {
  FigureOverrides ov;
  ov.alpha = "2";
  ov.r = "0:0.9:0.1";
  const JobOutput out = run_figure("fig5", ov);
  REQUIRE(out.rows.size() == 10);
  CHECK(std::abs(out.rows.front().value - 2.0 * std::sqrt(2.0)) < 1e-12);
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    CHECK(out.rows[i].curve == out.rows[0].curve);
    CHECK(out.rows[i].value <= out.rows[i - 1].value + 1e-12);
  }
  CHECK_THROWS_AS(run_figure("fig9", ov), ValidationError);
}

TEST_CASE("eval records") {
  EvalRequest req;
  req.search.starts = 16;
  const auto opt = evaluate(req);
  CHECK(opt["value"].get<double>() > 2.0);
  CHECK(opt["value"].get<double>() <= kCirelsonBound);
  CHECK(opt["request"]["starts"] == "16");

  req.settings = "0,0,0,0,0,0,0,0";
  CHECK(evaluate(req)["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-13));

  req.settings = "0,0,x";
  CHECK_THROWS_WITH_AS(evaluate(req), doctest::Contains("item 3"), ParseError);
  req.settings = "0,0";
  CHECK_THROWS_AS(evaluate(req), ValidationError);

  EvalRequest q;
  q.alpha = 2.0;
  q.r = 0.4;
  q.measure = Measure::qubit_ideal;
  const auto rec = evaluate(q);
  CHECK(std::abs(rec["value"].get<double>() - horodecki_bmax_closed_form(2.0, clock_from_r(0.4))) < 1e-10);
}

TEST_CASE("crossing detection") {
  const std::vector<double> rs{0.0, 0.1, 0.2, 0.3};
  const Crossing c = find_crossing(rs, std::vector<double>{2.8, 2.4, 1.6, 1.0});
  CHECK(c.bracketed);
  CHECK(c.r == doctest::Approx(0.15));
  const Crossing above = find_crossing(rs, std::vector<double>{2.8, 2.6, 2.4, 2.2});
  CHECK_FALSE(above.bracketed);
  CHECK(above.ever_violates);
  CHECK(above.r == 0.3);
  const Crossing below = find_crossing(rs, std::vector<double>{1.8, 1.6, 1.4, 1.2});
  CHECK_FALSE(below.ever_violates);
  // The last excursion above 2 wins.
  CHECK(find_crossing(rs, std::vector<double>{2.5, 1.5, 2.5, 1.5}).r == doctest::Approx(0.25));
}

TEST_CASE("oracle suites: trivial case and determinism") {
  const OracleReport trivial = run_oracle_suite(OracleSuite::decoherence, 1, 7);
  CHECK(trivial.passed());
  CHECK(trivial.max_deviation < 1e-14);

  const OracleReport a = run_oracle_suite(OracleSuite::parity, 100, 7);
  const OracleReport b = run_oracle_suite(OracleSuite::parity, 100, 7);
  const OracleReport c = run_oracle_suite(OracleSuite::parity, 100, 8);
  CHECK(a.passed());
  CHECK(c.passed());
  CHECK(a.max_deviation == b.max_deviation);
  CHECK(a.max_deviation < 1e-8);
  CHECK(oracle_suite_from_string("qubit") == OracleSuite::qubit);
  CHECK_THROWS_AS(oracle_suite_from_string("everything"), DomainError);
}

TEST_CASE("qubit measures are limited to the minus family") {
  CHECK_THROWS_AS(bell_objective(StateFamily::c_plus, Measure::qubit_displaced, 1.0, {}, AxisMode::full), DomainError);
  CHECK_THROWS_AS(optimized_bell(StateFamily::c_plus, Measure::qubit_ideal, 1.0, {}, {}), DomainError);
  CHECK(measure_from_string("cv-bw-restricted") == Measure::cv_bw_restricted);
  CHECK(to_string(Measure::qubit_displaced) == "qubit-displaced");
  CHECK(family_from_string("c-plus") == StateFamily::c_plus);
}
