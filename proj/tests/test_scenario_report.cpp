// Scenario file grammar, check execution with error capture, the three
// renderers, and reloading a stored report for re-rendering.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include <chernlab/report.hpp>

using namespace chernlab;
using Catch::Matchers::ContainsSubstring;

namespace {

std::vector<Scenario> parse_str(const std::string& text) {
  std::istringstream in(text);
  return parse_scenarios(in);
}

// a fabricated run exercising every verdict and both non-finite signs
RunReport handmade_run() {
  RunReport run;
  ScenarioResult s;
  s.scenario.name = "made, \"up\"";
  s.scenario.source = "cp1_fs";
  CheckOutcome o;
  o.check = "volume";
  o.wall_seconds = 0.25;
  InequalityReport r;
  r.name = "row_one";
  r.lhs = std::numeric_limits<double>::infinity();
  r.rhs = -std::numeric_limits<double>::infinity();
  r.margin = std::nan("");
  r.tolerance = 1e-8;
  r.verdict = Verdict::Holds;
  r.provenance = "a,b\"c";
  r.details["k"] = 2.5;
  o.reports.push_back(r);
  s.outcomes.push_back(o);
  run.scenarios.push_back(s);
  return run;
}

}  // namespace

TEST_CASE("scenario grammar covers every field") {
  const std::string text =
      "# leading comment\n"
      "[scenario]\n"
      "name = first\n"
      "source = torus_flat:n=1,scale=1\n"
      "target = torus_x_torus   ; trailing comment\n"
      "map = embed:factor=0,na=1,nb=1\n"
      "omega = flat\n"
      "eta = product\n"
      "eta0 = product\n"
      "checks = krf volume\n"
      "resolution = 24\n"
      "seed = 99\n"
      "tolerance = 1e-6\n"
      "loose = yes\n"
      "weight = cos:amp=0.5\n"
      "samples = 500\n"
      "points = 4\n"
      "declared_lambda_total = 6\n"
      "declared_ky_pairing = 0.5\n"
      "declared_ky_nef = true\n"
      "\n"
      "[scenario]\n"
      "source = cp1_fs\n"
      "checks = volume\n";
  std::vector<Scenario> list = parse_str(text);
  REQUIRE(list.size() == 2);
  const Scenario& a = list[0];
  CHECK(a.name == "first");
  CHECK(a.source == "torus_flat:n=1,scale=1");
  CHECK(a.target == "torus_x_torus");
  CHECK(a.map == "embed:factor=0,na=1,nb=1");
  CHECK(a.omega == "flat");
  CHECK(a.eta == "product");
  CHECK(a.eta0 == "product");
  REQUIRE(a.checks.size() == 2);
  CHECK(a.checks[0] == "krf");
  CHECK(a.checks[1] == "volume");
  CHECK(a.resolution == 24);
  CHECK(a.seed == 99);
  CHECK(a.tolerance == Catch::Approx(1e-6));
  CHECK(a.loose);
  CHECK(a.weight == "cos:amp=0.5");
  CHECK(a.samples == 500);
  CHECK(a.points == 4);
  CHECK(a.declared.at("declared_lambda_total") == Catch::Approx(6.0));
  CHECK(a.declared.at("declared_ky_pairing") == Catch::Approx(0.5));
  REQUIRE(a.declared_ky_nef.has_value());
  CHECK(*a.declared_ky_nef);
  CHECK(a.line == 2);

  const Scenario& b = list[1];
  CHECK(b.name == "scenario-2");
  CHECK(b.map == "identity");
  CHECK(b.target.empty());
  CHECK(b.tolerance == Catch::Approx(1e-8));
  CHECK(b.samples == 2000);
  CHECK(b.points == 12);
  CHECK(b.weight == "none");
  CHECK_FALSE(b.declared_ky_nef.has_value());
}

TEST_CASE("scenario grammar rejections carry line numbers") {
  CHECK_THROWS_WITH(parse_str("[flow]\n"),
                    ContainsSubstring("line 1") &&
                        ContainsSubstring("unknown section"));
  CHECK_THROWS_WITH(parse_str("source = cp1_fs\n"),
                    ContainsSubstring("outside any"));
  CHECK_THROWS_WITH(parse_str("[scenario]\nsource cp1_fs\n"),
                    ContainsSubstring("line 2") &&
                        ContainsSubstring("expected 'key = value'"));
  CHECK_THROWS_WITH(parse_str("[scenario]\nname =\n"),
                    ContainsSubstring("empty key or value"));
  CHECK_THROWS_WITH(parse_str("[scenario]\ncolour = red\n"),
                    ContainsSubstring("unknown key 'colour'"));
  CHECK_THROWS_WITH(
      parse_str("[scenario]\nsource = cp1_fs\nchecks = volume warp\n"),
      ContainsSubstring("line 3") && ContainsSubstring("unknown check 'warp'"));
  CHECK_THROWS_WITH(parse_str("[scenario]\nresolution = twelve\n"),
                    ContainsSubstring("bad number"));
  CHECK_THROWS_WITH(parse_str("[scenario]\nseed = 12abc\n"),
                    ContainsSubstring("trailing characters"));
  CHECK_THROWS_WITH(parse_str("[scenario]\nloose = maybe\n"),
                    ContainsSubstring("bad boolean"));
  CHECK_THROWS_WITH(parse_str("[scenario]\ntolerance = 0\n"),
                    ContainsSubstring("tolerance must be positive"));
  CHECK_THROWS_WITH(parse_str("[scenario]\ndeclared_mystery = 1\n"),
                    ContainsSubstring("unknown key 'declared_mystery'"));
  CHECK_THROWS_WITH(parse_str("[scenario]\nchecks = volume\n"),
                    ContainsSubstring("never set 'source'"));
  CHECK_THROWS_WITH(parse_str("[scenario]\nsource = cp1_fs\n"),
                    ContainsSubstring("empty check list"));
  CHECK_THROWS_WITH(parse_str("# only comments\n"),
                    ContainsSubstring("no [scenario] sections"));
  CHECK_THROWS_AS(parse_scenarios_file("/nonexistent/path.scn"), ConfigInvalid);
}

TEST_CASE("check registry names the implemented checks") {
  const std::set<std::string>& s = known_checks();
  CHECK(s.size() == 10);
  for (const char* name :
       {"main_inequality", "cpn_bound", "degeneracy_inequality", "chern_lu",
        "schwarz_integral", "ke_chain", "gauduchon", "volume", "berger",
        "krf"})
    CHECK(s.count(name) == 1);
}

TEST_CASE("weight specs parse to point functions") {
  CHECK(parse_weight("none") == nullptr);
  CHECK(parse_weight("") == nullptr);
  auto w = parse_weight("cos:amp=0.5");
  REQUIRE(w != nullptr);
  CHECK(w(make_point("cell", {Complex(1.0, 2.0)})) ==
        Catch::Approx(0.5 * std::cos(1.0)));
  CHECK_THROWS_AS(parse_weight("bell:amp=1"), ConfigInvalid);
}

TEST_CASE("scenario execution captures setup and check failures") {
  Scenario sc;
  sc.name = "broken";
  sc.source = "mystery_space";
  sc.checks = {"volume"};
  ScenarioResult r = run_scenario(sc);
  REQUIRE(r.outcomes.size() == 1);
  CHECK(r.outcomes[0].check == "setup");
  CHECK_FALSE(r.outcomes[0].error.empty());

  Scenario sc2;
  sc2.name = "half-broken";
  sc2.source = "torus_flat:n=1,scale=1";
  sc2.checks = {"volume", "cpn_bound"};
  ScenarioResult r2 = run_scenario(sc2);
  REQUIRE(r2.outcomes.size() == 2);
  CHECK(r2.outcomes[0].error.empty());
  CHECK_FALSE(r2.outcomes[1].error.empty());  // non-projective source
  RunReport run;
  run.scenarios.push_back(r2);
  CHECK_FALSE(report_ok(run));

  Scenario sc3 = sc2;
  sc3.checks = {"bogus"};
  ScenarioResult r3 = run_scenario(sc3);
  REQUIRE(r3.outcomes.size() == 1);
  CHECK_THAT(r3.outcomes[0].error, ContainsSubstring("unknown check"));
}

TEST_CASE("flat scenario passes and renders deterministically") {
  Scenario sc;
  sc.name = "flat";
  sc.source = "torus_flat:n=1,scale=1";
  sc.checks = {"volume", "gauduchon", "krf"};
  const RunReport run1 = run_scenarios({sc});
  const RunReport run2 = run_scenarios({sc});
  CHECK(report_ok(run1));

  // identical numbers modulo wall-clock times
  auto strip_times = [](const RunReport& r) {
    std::ostringstream os;
    render_jsonl(r, os);
    std::istringstream in(os.str());
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
      nlohmann::json j = nlohmann::json::parse(line);
      j.erase("wall_seconds");
      out += j.dump() + "\n";
    }
    return out;
  };
  CHECK(strip_times(run1) == strip_times(run2));

  std::ostringstream text;
  render_text(run1, text);
  CHECK_THAT(text.str(), ContainsSubstring("[scenario] flat"));
  CHECK_THAT(text.str(), ContainsSubstring("check volume: ok"));
  CHECK_THAT(text.str(), ContainsSubstring("check krf: ok"));
  CHECK_THAT(text.str(),
             ContainsSubstring("summary: 1 scenarios, 3 checks, 3 ok, 0 failed"));

  std::ostringstream bad_format;
  CHECK_THROWS_AS(render(run1, "yaml", bad_format), ConfigInvalid);
}

TEST_CASE("csv rows escape and align with the header") {
  const RunReport run = handmade_run();
  std::ostringstream os;
  render_csv(run, os);
  std::istringstream in(os.str());
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "scenario,check,report,verdict,boundary,lhs,rhs,margin,tolerance,"
        "provenance,details,error");
  std::string row;
  std::getline(in, row);
  CHECK_THAT(row, ContainsSubstring("\"made, \"\"up\"\"\""));
  CHECK_THAT(row, ContainsSubstring("\"a,b\"\"c\""));
  CHECK_THAT(row, ContainsSubstring("inf,-inf,nan"));
  CHECK_THAT(row, ContainsSubstring("k=2.5"));
}

TEST_CASE("stored reports reload for re-rendering") {
  const RunReport run = handmade_run();
  std::ostringstream os;
  render_jsonl(run, os);
  std::istringstream in(os.str());
  const RunReport back = load_jsonl(in);
  REQUIRE(back.scenarios.size() == 1);
  REQUIRE(back.scenarios[0].outcomes.size() == 1);
  const InequalityReport& r = back.scenarios[0].outcomes[0].reports.at(0);
  CHECK(std::isinf(r.lhs));
  CHECK(r.lhs > 0.0);
  CHECK(std::isinf(r.rhs));
  CHECK(r.rhs < 0.0);
  CHECK(std::isnan(r.margin));
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.details.at("k") == Catch::Approx(2.5));
  CHECK(back.scenarios[0].outcomes[0].wall_seconds == Catch::Approx(0.25));

  // a second render of the reloaded run reproduces the stream exactly
  std::ostringstream os2;
  render_jsonl(back, os2);
  CHECK(os.str() == os2.str());

  std::istringstream empty("");
  CHECK_THROWS_AS(load_jsonl(empty), ConfigInvalid);
  std::istringstream garbage("not json\n");
  CHECK_THROWS_WITH(load_jsonl(garbage), ContainsSubstring("line 1"));
  CHECK_THROWS_AS(load_jsonl_file("/nonexistent/report.jsonl"), ConfigInvalid);
}

TEST_CASE("report health only accepts holding or inapplicable verdicts") {
  RunReport run = handmade_run();
  CHECK(report_ok(run));
  run.scenarios[0].outcomes[0].reports[0].verdict = Verdict::NotApplicable;
  CHECK(report_ok(run));
  run.scenarios[0].outcomes[0].reports[0].verdict = Verdict::FailsWithinTolerance;
  CHECK_FALSE(report_ok(run));
  run.scenarios[0].outcomes[0].reports[0].verdict = Verdict::Fails;
  CHECK_FALSE(report_ok(run));
  run.scenarios[0].outcomes[0].reports[0].verdict = Verdict::Holds;
  run.scenarios[0].outcomes[0].error = "boom";
  CHECK_FALSE(report_ok(run));
}

TEST_CASE("built-in suite enumerates the headline scenarios") {
  const std::vector<Scenario> list = builtin_suite_scenarios();
  REQUIRE(list.size() == 13);
  const char* names[] = {"cp1-identity",    "cp1-power2",
                         "cp1-power5",      "cp2-identity",
                         "veronese",        "torus-identity",
                         "torus-isogeny",   "torus-bumpy",
                         "hopf-identity",   "cp1-conformal",
                         "product-embed-flow", "flow-declared-iib",
                         "flow-declared-iib-or-iiia"};
  for (std::size_t i = 0; i < list.size(); ++i) {
    CHECK(list[i].name == names[i]);
    CHECK_FALSE(list[i].source.empty());
    CHECK_FALSE(list[i].checks.empty());
    for (const std::string& c : list[i].checks)
      CHECK(known_checks().count(c) == 1);
  }
  CHECK(list[3].resolution == 50000);
  CHECK(list[7].omega == "bumpy");
  CHECK(list[7].eta == "bumpy");
  CHECK(list[11].declared.at("declared_lambda_total") == Catch::Approx(6.0));
  CHECK(list[11].declared.at("declared_ky_pairing") == 0.0);
  CHECK(list[12].declared.at("declared_ky_pairing") == Catch::Approx(0.5));
}
