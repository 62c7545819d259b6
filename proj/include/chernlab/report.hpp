#pragma once
// Scenario execution and report rendering.  A run is a list of scenarios;
// each scenario resolves its models once and then executes its checks, with
// per-check error capture so one bad check cannot abort the run.  Renderers:
// human text, flat CSV, and one JSON object per check (reloadable for
// re-rendering).  All numeric output is deterministic for a fixed scenario
// and seed; wall-clock times are carried separately from the numbers.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "krf.hpp"
#include "scenario.hpp"

namespace chernlab {

inline constexpr const char* kVersion = "0.1.0";

struct CheckOutcome {
  std::string check;
  std::vector<InequalityReport> reports;
  std::string error;  // non-empty = the check threw
  double wall_seconds = 0.0;
};

struct ScenarioResult {
  Scenario scenario;
  std::vector<CheckOutcome> outcomes;
};

struct RunReport {
  std::string version = kVersion;
  std::vector<ScenarioResult> scenarios;
};

inline bool verdict_ok(Verdict v) {
  return v == Verdict::Holds || v == Verdict::HoldsWithEquality ||
         v == Verdict::NotApplicable;
}

inline bool outcome_ok(const CheckOutcome& o) {
  if (!o.error.empty()) return false;
  for (const InequalityReport& r : o.reports)
    if (!verdict_ok(r.verdict)) return false;
  return true;
}

inline bool report_ok(const RunReport& r) {
  for (const ScenarioResult& s : r.scenarios)
    for (const CheckOutcome& o : s.outcomes)
      if (!outcome_ok(o)) return false;
  return true;
}

// weight spec: "none" or "cos:amp=<a>" for a * cos(Re z_1)
inline std::function<double(const ChartPoint&)> parse_weight(
    const std::string& spec) {
  if (spec.empty() || spec == "none") return nullptr;
  const ParsedName pn = parse_catalog_name(spec);
  if (pn.base == "cos") {
    const double amp = param_num(pn, "amp", 0.25);
    return [amp](const ChartPoint& p) {
      return amp * std::cos(p.z(0).real());
    };
  }
  throw ConfigInvalid("unknown weight spec '" + spec + "'");
}

// test function for the Gauduchon residual, chosen to descend to the model
inline ScalarField gauduchon_probe(const ManifoldModel& m) {
  ScalarField u;
  const ParsedName pn = parse_catalog_name(m.name);
  if (pn.base == "torus_flat") {
    const double cell = m.params.count("cell") ? m.params.at("cell") : 1.0;
    u.value = [cell](const ChartPoint& p) {
      const double x = p.z(0).real();
      const double y = p.z(0).imag();
      return std::sin(2.0 * kPi * x / cell) * std::cos(2.0 * kPi * y / cell);
    };
  } else if (pn.base == "hopf_std") {
    u.value = [](const ChartPoint& p) {
      return std::cos(kPi * std::log2(p.z.squaredNorm()));
    };
  } else if (pn.base == "torus_x_cp1" || pn.base == "torus_x_torus") {
    u.value = [](const ChartPoint& p) {
      const double x = p.z(0).real();
      const double y = p.z(0).imag();
      return std::sin(2.0 * kPi * x) * std::cos(2.0 * kPi * y);
    };
  } else {
    u.value = [](const ChartPoint& p) {
      return p.z(0).real() / (1.0 + p.z.squaredNorm());
    };
  }
  return u;
}

namespace run_detail {

struct Ctx {
  Scenario sc;
  std::shared_ptr<ManifoldModel> src;
  std::shared_ptr<ManifoldModel> tgt;
  const HermitianMetricField* omega = nullptr;
  const HermitianMetricField* eta = nullptr;
  HolomorphicMapModel map;
  VerifyOptions vo;
  std::function<double(const ChartPoint&)> weight;
};

inline InequalityReport bound_row(const std::string& name, double floor_value,
                                  double observed, double gate,
                                  const VerifyOptions& vo) {
  InequalityReport r;
  r.name = name;
  r.lhs = floor_value;
  r.rhs = observed;
  r.margin = observed - floor_value;
  r.tolerance = gate;
  r.verdict = verdict_for(r.margin, r.tolerance, vo.loose);
  return r;
}

inline std::vector<InequalityReport> check_volume(const Ctx& c) {
  double declared = 0.0;
  if (c.omega->declared_volume && *c.omega->declared_volume > 0.0)
    declared = *c.omega->declared_volume;
  else if (c.src->topo.total_volume)
    declared = *c.src->topo.total_volume;
  else
    throw ConfigInvalid("no declared volume for metric '" + c.omega->name +
                        "' on '" + c.src->name + "'");
  const IntegralEstimate v = integrate_top_est(
      *c.src, *c.omega, [](const ChartPoint&) { return 1.0; },
      c.vo.resolution);
  const QuadratureScheme q = build_scheme(*c.src, c.vo.resolution);
  const double gate =
      std::max({c.vo.min_tol * (1.0 + std::abs(declared)),
                10.0 * v.error_estimate, q.stated_rel_tol * std::abs(declared)});
  InequalityReport r;
  r.name = "volume_calibration";
  r.lhs = std::abs(v.value - declared);
  r.rhs = gate;
  r.margin = r.rhs - r.lhs;
  r.tolerance = c.vo.min_tol;
  r.verdict = verdict_for(r.margin, r.tolerance, c.vo.loose);
  r.details["computed"] = v.value;
  r.details["declared"] = declared;
  r.details["error_estimate"] = v.error_estimate;
  r.provenance = "model=" + c.src->name + " metric=" + c.omega->name;
  return {r};
}

inline std::vector<InequalityReport> check_gauduchon(const Ctx& c) {
  const ScalarField u = gauduchon_probe(*c.src);
  const QuadratureScheme fine = build_scheme(*c.src, c.vo.resolution);
  const QuadratureScheme coarse =
      build_scheme(*c.src, coarse_resolution(fine));
  const double res_fine = gauduchon_residual(fine, *c.omega, u);
  const double res_coarse = gauduchon_residual(coarse, *c.omega, u);
  const double mass = integrate_top(fine, *c.omega, [&](const ChartPoint& p) {
    const MatC g = eval_metric(*c.omega, p);
    return std::abs(
        metric_laplacian(hermitian_inverse(g), scalar_hessian(u, p, c.src->dim)));
  });
  InequalityReport r;
  r.name = "gauduchon_residual";
  r.lhs = std::abs(res_fine);
  r.rhs = std::max({c.vo.min_tol * (1.0 + mass),
                    10.0 * std::abs(res_fine - res_coarse), 1e-6 * mass});
  r.margin = r.rhs - r.lhs;
  r.tolerance = c.vo.min_tol;
  r.details["residual"] = res_fine;
  r.details["residual_coarse"] = res_coarse;
  r.details["laplacian_mass"] = mass;
  r.provenance = "model=" + c.src->name + " metric=" + c.omega->name;
  if (!c.omega->gauduchon_known) {
    r.verdict = Verdict::NotApplicable;
    return {r};
  }
  r.verdict = verdict_for(r.margin, r.tolerance, c.vo.loose);
  return {r};
}

inline std::vector<InequalityReport> check_chern_lu(const Ctx& c) {
  const double floor_value = -1e-4;
  const std::vector<double> eps_values = {1.0, 0.1, 0.01};
  Rng rng(c.sc.seed + 5);
  double min_resid = std::numeric_limits<double>::infinity();
  double max_resid = -std::numeric_limits<double>::infinity();
  const int points = std::max(1, c.sc.points);
  for (int i = 0; i < points; ++i) {
    const ChartPoint p = c.src->sample_point(rng);
    for (double eps : eps_values) {
      const ChernLuSample s =
          chern_lu_residual(c.map, *c.omega, *c.eta, p, eps, c.vo);
      min_resid = std::min(min_resid, s.residual);
      max_resid = std::max(max_resid, s.residual);
    }
  }
  InequalityReport r = bound_row("chern_lu_residual_floor", floor_value,
                                 min_resid, c.vo.min_tol, c.vo);
  r.details["min_residual"] = min_resid;
  r.details["max_residual"] = max_resid;
  r.details["points"] = points;
  r.details["eps_count"] = static_cast<double>(eps_values.size());
  r.provenance = "map=" + c.map.name;
  return {r};
}

inline std::vector<InequalityReport> check_berger(const Ctx& c) {
  Rng rng(c.sc.seed + 13);
  const ChartPoint p = c.src->sample_point(rng);
  const BergerResult b =
      berger_average(*c.omega, p, c.sc.samples, c.sc.seed + 17);
  InequalityReport r;
  r.name = "direction_average_identity";
  r.lhs = std::abs(b.average - b.reference);
  r.rhs = 3.0 * b.std_error + c.vo.min_tol * (1.0 + std::abs(b.reference));
  r.margin = r.rhs - r.lhs;
  r.tolerance = c.vo.min_tol;
  r.verdict = verdict_for(r.margin, r.tolerance, c.vo.loose);
  r.details["average"] = b.average;
  r.details["reference"] = b.reference;
  r.details["std_error"] = b.std_error;
  r.details["samples"] = b.samples;
  r.provenance = "model=" + c.src->name + " metric=" + c.omega->name;
  return {r};
}

inline std::vector<InequalityReport> check_krf(const Ctx& c) {
  const HermitianMetricField& eta0 = model_metric(*c.tgt, c.sc.eta0);
  FlowScenarioInput in;
  in.resolution = c.vo.resolution;
  in.seed = c.sc.seed;
  auto pick = [&](const char* key) -> std::optional<double> {
    auto it = c.sc.declared.find(key);
    if (it == c.sc.declared.end()) return std::nullopt;
    return it->second;
  };
  in.declared_lambda_total = pick("declared_lambda_total");
  in.declared_eta0_pairing = pick("declared_eta0_pairing");
  in.declared_ky_pairing = pick("declared_ky_pairing");
  in.declared_ky_nef = c.sc.declared_ky_nef;
  const FlowScenarioResult out =
      end_to_end_flow_scenario(c.map, *c.omega, eta0, in);
  InequalityReport r;
  r.name = "krf_classification";
  r.verdict = Verdict::Holds;
  r.tolerance = c.vo.min_tol;
  r.provenance = std::string(flow_type_name(out.verdict.classification)) +
                 " map=" + c.map.name + " eta0=" + eta0.name;
  r.details["lambda_total"] = out.data.lambda_total;
  r.details["eta0_pairing"] = out.data.eta0_pairing;
  r.details["ky_pairing"] = out.data.ky_pairing;
  r.details["scal_total"] = out.scal_total;
  r.details["mu_alpha"] = out.mu_alpha;
  r.details["nu_alpha"] = out.nu_alpha;
  r.details["limsup_t_times_bound"] = out.verdict.limsup_t_times_bound;
  for (const auto& kv : out.details) r.details[kv.first] = kv.second;
  return {r};
}

inline std::vector<InequalityReport> run_one(const Ctx& c,
                                             const std::string& check) {
  if (check == "main_inequality")
    return {verify_main_inequality(c.map, *c.omega, *c.eta, c.weight, c.vo)};
  if (check == "cpn_bound") return {verify_cpn_bound(c.map, *c.eta, c.vo)};
  if (check == "degeneracy_inequality")
    return {
        verify_degeneracy_inequality(c.map, *c.omega, *c.eta, c.weight, c.vo)};
  if (check == "schwarz_integral")
    return {verify_schwarz_integral(c.map, *c.omega, *c.eta, c.vo)};
  if (check == "ke_chain") return verify_equality_case_ke(*c.src, *c.omega, c.vo);
  if (check == "chern_lu") return check_chern_lu(c);
  if (check == "gauduchon") return check_gauduchon(c);
  if (check == "volume") return check_volume(c);
  if (check == "berger") return check_berger(c);
  if (check == "krf") return check_krf(c);
  throw ConfigInvalid("unknown check '" + check + "'");
}

}  // namespace run_detail

inline ScenarioResult run_scenario(const Scenario& sc) {
  ScenarioResult out;
  out.scenario = sc;
  run_detail::Ctx c;
  c.sc = sc;
  try {
    c.src = std::make_shared<ManifoldModel>(model_by_name(sc.source));
    c.tgt = (sc.target.empty() || sc.target == sc.source)
                ? c.src
                : std::make_shared<ManifoldModel>(model_by_name(sc.target));
    c.omega = &model_metric(*c.src, sc.omega);
    c.eta = &model_metric(*c.tgt, sc.eta);
    c.map = make_map(sc.map, c.src, c.tgt);
    c.vo.resolution = sc.resolution;
    c.vo.seed = sc.seed;
    c.vo.min_tol = sc.tolerance;
    c.vo.loose = sc.loose;
    c.vo.certify.seed = sc.seed;
    c.weight = parse_weight(sc.weight);
  } catch (const std::exception& e) {
    CheckOutcome o;
    o.check = "setup";
    o.error = e.what();
    out.outcomes.push_back(o);
    return out;
  }
  for (const std::string& check : sc.checks) {
    CheckOutcome o;
    o.check = check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o.reports = run_detail::run_one(c, check);
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    o.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    out.outcomes.push_back(o);
  }
  return out;
}

inline RunReport run_scenarios(const std::vector<Scenario>& list) {
  RunReport r;
  for (const Scenario& sc : list) r.scenarios.push_back(run_scenario(sc));
  return r;
}

inline RunReport run_scenario_file(const std::string& path) {
  return run_scenarios(parse_scenarios_file(path));
}

// ---------------------------------------------------------------------------
// rendering

inline std::string num_str(double v, int prec = 17) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

inline void render_text(const RunReport& run, std::ostream& os) {
  os << "curvature lab report, format " << run.version << "\n";
  int checks = 0;
  int ok = 0;
  for (const ScenarioResult& s : run.scenarios) {
    const Scenario& sc = s.scenario;
    os << "\n[scenario] " << sc.name << "\n";
    os << "  source=" << sc.source
       << " target=" << (sc.target.empty() ? sc.source : sc.target)
       << " map=" << sc.map << "\n";
    os << "  resolution=" << sc.resolution << " seed=" << sc.seed
       << " tolerance=" << num_str(sc.tolerance, 12) << "\n";
    for (const CheckOutcome& o : s.outcomes) {
      ++checks;
      const bool good = outcome_ok(o);
      ok += good ? 1 : 0;
      os << "  check " << o.check << ": " << (good ? "ok" : "FAILED") << "\n";
      if (!o.error.empty()) os << "    error: " << o.error << "\n";
      for (const InequalityReport& r : o.reports) {
        os << "    " << r.name << "  verdict=" << verdict_name(r.verdict)
           << (r.boundary ? " (boundary)" : "") << "\n";
        os << "      lhs=" << num_str(r.lhs, 12) << " rhs=" << num_str(r.rhs, 12)
           << " margin=" << num_str(r.margin, 12)
           << " tol=" << num_str(r.tolerance, 12) << "\n";
        if (!r.provenance.empty()) os << "      [" << r.provenance << "]\n";
        for (const auto& kv : r.details)
          os << "      " << kv.first << " = " << num_str(kv.second, 12) << "\n";
      }
      os << "  # time " << o.check << " " << std::fixed << std::setprecision(3)
         << o.wall_seconds << "s\n";
      os.unsetf(std::ios_base::floatfield);
    }
  }
  os << "\nsummary: " << run.scenarios.size() << " scenarios, " << checks
     << " checks, " << ok << " ok, " << (checks - ok) << " failed\n";
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += "\"";
  return out;
}

inline void render_csv(const RunReport& run, std::ostream& os) {
  os << "scenario,check,report,verdict,boundary,lhs,rhs,margin,tolerance,"
        "provenance,details,error\n";
  for (const ScenarioResult& s : run.scenarios) {
    for (const CheckOutcome& o : s.outcomes) {
      if (o.reports.empty()) {
        os << csv_escape(s.scenario.name) << "," << csv_escape(o.check)
           << ",,,,,,,,,," << csv_escape(o.error) << "\n";
        continue;
      }
      for (const InequalityReport& r : o.reports) {
        std::string details;
        for (const auto& kv : r.details) {
          if (!details.empty()) details += ";";
          details += kv.first + "=" + num_str(kv.second);
        }
        os << csv_escape(s.scenario.name) << "," << csv_escape(o.check) << ","
           << csv_escape(r.name) << "," << verdict_name(r.verdict) << ","
           << (r.boundary ? 1 : 0) << "," << num_str(r.lhs) << ","
           << num_str(r.rhs) << "," << num_str(r.margin) << ","
           << num_str(r.tolerance) << "," << csv_escape(r.provenance) << ","
           << csv_escape(details) << "," << csv_escape(o.error) << "\n";
      }
    }
  }
}

namespace run_detail {

inline nlohmann::json json_num(double v) {
  if (std::isfinite(v)) return v;
  return num_str(v);
}

inline double num_from(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

inline Verdict verdict_from(const std::string& s) {
  if (s == "Holds") return Verdict::Holds;
  if (s == "HoldsWithEquality") return Verdict::HoldsWithEquality;
  if (s == "FailsWithinTolerance") return Verdict::FailsWithinTolerance;
  if (s == "Fails") return Verdict::Fails;
  return Verdict::NotApplicable;
}

}  // namespace run_detail

inline void render_jsonl(const RunReport& run, std::ostream& os) {
  using nlohmann::json;
  for (const ScenarioResult& s : run.scenarios) {
    for (const CheckOutcome& o : s.outcomes) {
      json j;
      j["version"] = run.version;
      j["scenario"] = {{"name", s.scenario.name},
                       {"source", s.scenario.source},
                       {"target", s.scenario.target.empty() ? s.scenario.source
                                                            : s.scenario.target},
                       {"map", s.scenario.map},
                       {"resolution", s.scenario.resolution},
                       {"seed", s.scenario.seed},
                       {"tolerance", s.scenario.tolerance}};
      j["check"] = o.check;
      j["error"] = o.error;
      j["wall_seconds"] = o.wall_seconds;
      json reports = json::array();
      for (const InequalityReport& r : o.reports) {
        json jr;
        jr["name"] = r.name;
        jr["verdict"] = verdict_name(r.verdict);
        jr["boundary"] = r.boundary;
        jr["lhs"] = run_detail::json_num(r.lhs);
        jr["rhs"] = run_detail::json_num(r.rhs);
        jr["margin"] = run_detail::json_num(r.margin);
        jr["tolerance"] = run_detail::json_num(r.tolerance);
        jr["provenance"] = r.provenance;
        json det = json::object();
        for (const auto& kv : r.details)
          det[kv.first] = run_detail::json_num(kv.second);
        jr["details"] = det;
        reports.push_back(jr);
      }
      j["reports"] = reports;
      os << j.dump() << "\n";
    }
  }
}

inline RunReport load_jsonl(std::istream& in) {
  using nlohmann::json;
  RunReport run;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const std::exception& e) {
      throw ConfigInvalid("stored report line " + std::to_string(line_no) +
                          ": " + e.what());
    }
    const std::string sname = j.at("scenario").at("name").get<std::string>();
    if (run.scenarios.empty() ||
        run.scenarios.back().scenario.name != sname) {
      ScenarioResult s;
      s.scenario.name = sname;
      s.scenario.source = j["scenario"].value("source", std::string());
      s.scenario.target = j["scenario"].value("target", std::string());
      s.scenario.map = j["scenario"].value("map", std::string("identity"));
      s.scenario.resolution = j["scenario"].value("resolution", 0);
      s.scenario.seed = j["scenario"].value("seed", std::uint64_t(0));
      s.scenario.tolerance = j["scenario"].value("tolerance", 1e-8);
      s.scenario.checks.push_back(j.value("check", std::string()));
      run.scenarios.push_back(s);
    }
    CheckOutcome o;
    o.check = j.value("check", std::string());
    o.error = j.value("error", std::string());
    o.wall_seconds = j.value("wall_seconds", 0.0);
    for (const auto& jr : j.value("reports", json::array())) {
      InequalityReport r;
      r.name = jr.value("name", std::string());
      r.verdict = run_detail::verdict_from(jr.value("verdict", std::string()));
      r.boundary = jr.value("boundary", false);
      r.lhs = run_detail::num_from(jr.at("lhs"));
      r.rhs = run_detail::num_from(jr.at("rhs"));
      r.margin = run_detail::num_from(jr.at("margin"));
      r.tolerance = run_detail::num_from(jr.at("tolerance"));
      r.provenance = jr.value("provenance", std::string());
      if (jr.contains("details"))
        for (auto it = jr["details"].begin(); it != jr["details"].end(); ++it)
          r.details[it.key()] = run_detail::num_from(it.value());
      o.reports.push_back(r);
    }
    run.scenarios.back().outcomes.push_back(o);
  }
  if (run.scenarios.empty())
    throw ConfigInvalid("stored report is empty");
  return run;
}

inline RunReport load_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open stored report '" + path + "'");
  return load_jsonl(in);
}

inline void render(const RunReport& run, const std::string& format,
                   std::ostream& os) {
  if (format == "text") {
    render_text(run, os);
  } else if (format == "csv") {
    render_csv(run, os);
  } else if (format == "json-lines") {
    render_jsonl(run, os);
  } else {
    throw ConfigInvalid("unknown format '" + format + "'");
  }
}

// ---------------------------------------------------------------------------
// built-in suite covering the catalog's headline numbers

inline std::vector<Scenario> builtin_suite_scenarios() {
  std::vector<Scenario> out;
  auto mk = [&out](const std::string& name, const std::string& source,
                   const std::string& map,
                   std::initializer_list<const char*> checks) -> Scenario& {
    Scenario s;
    s.name = name;
    s.source = source;
    s.map = map;
    for (const char* c : checks) s.checks.push_back(c);
    out.push_back(s);
    return out.back();
  };
  mk("cp1-identity", "cp1_fs", "identity",
     {"volume", "gauduchon", "main_inequality", "cpn_bound", "chern_lu",
      "ke_chain", "berger"});
  mk("cp1-power2", "cp1_fs", "power:d=2",
     {"main_inequality", "cpn_bound", "chern_lu", "degeneracy_inequality"});
  mk("cp1-power5", "cp1_fs", "power:d=5", {"cpn_bound"});
  {
    Scenario& s = mk("cp2-identity", "cpn_fs:n=2", "identity",
                     {"volume", "cpn_bound", "ke_chain", "main_inequality",
                      "berger"});
    s.resolution = 50000;
  }
  {
    Scenario& s = mk("veronese", "cp1_fs", "veronese",
                     {"main_inequality", "cpn_bound", "chern_lu"});
    s.target = "cpn_fs:n=2";
  }
  mk("torus-identity", "torus_flat:n=1,scale=1", "identity",
     {"volume", "gauduchon", "main_inequality", "schwarz_integral", "ke_chain",
      "krf"});
  {
    Scenario& s = mk("torus-isogeny", "torus_flat:n=1,scale=1", "isogeny:k=2",
                     {"volume", "main_inequality", "degeneracy_inequality"});
    s.target = "torus_flat:n=1,scale=0.5";
  }
  {
    Scenario& s = mk("torus-bumpy", "torus_flat:n=1,scale=1", "identity",
                     {"gauduchon", "main_inequality"});
    s.omega = "bumpy";
    s.eta = "bumpy";
  }
  mk("hopf-identity", "hopf_std", "identity",
     {"volume", "gauduchon", "schwarz_integral", "main_inequality"});
  mk("cp1-conformal", "cp1_fs_conformal:seed=7,eps=0.01", "identity",
     {"gauduchon", "main_inequality"});
  {
    Scenario& s = mk("product-embed-flow", "torus_flat:n=1,scale=1",
                     "embed:factor=0,na=1,nb=1", {"krf"});
    s.target = "torus_x_torus";
  }
  {
    Scenario& s = mk("flow-declared-iib", "torus_flat:n=1,scale=1",
                     "embed:factor=0,na=1,nb=1", {"krf"});
    s.target = "torus_x_torus";
    s.declared["declared_lambda_total"] = 6.0;
    s.declared["declared_ky_pairing"] = 0.0;
    s.declared_ky_nef = true;
  }
  {
    Scenario& s = mk("flow-declared-iib-or-iiia", "torus_flat:n=1,scale=1",
                     "embed:factor=0,na=1,nb=1", {"krf"});
    s.target = "torus_x_torus";
    s.declared["declared_lambda_total"] = 6.0;
    s.declared["declared_ky_pairing"] = 0.5;
    s.declared_ky_nef = true;
  }
  return out;
}

inline RunReport run_builtin_suite(int resolution = 0, std::uint64_t seed = 0,
                                 double tolerance = 0.0) {
  std::vector<Scenario> list = builtin_suite_scenarios();
  for (Scenario& s : list) {
    if (resolution > 0) s.resolution = resolution;
    if (seed != 0) s.seed = seed;
    if (tolerance > 0.0) s.tolerance = tolerance;
  }
  return run_scenarios(list);
}

}  // namespace chernlab
