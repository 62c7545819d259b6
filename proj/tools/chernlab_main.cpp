// Command-line front end.  Subcommands:
//   curvature  pointwise curvature and functional values on a catalog model
//   verify     run the checks requested by a scenario file
//   suite      run the built-in scenario list
//   krf        run the flow-classification checks of a scenario file
//   report     re-render a stored json-lines run
// Exit status for verify/suite/krf is 0 exactly when every check verdict is
// Holds, HoldsWithEquality, or NotApplicable and no check errored.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <chernlab/chernlab.hpp>

namespace {

struct CommonOpts {
  int resolution = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::string out;
  std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--resolution", o.resolution,
                  "override quadrature resolution (0 = model default)");
  cmd->add_option("--seed", o.seed, "override scenario seeds (0 = keep)");
  cmd->add_option("--tolerance", o.tolerance,
                  "override tolerance floor (0 = keep)");
  cmd->add_option("--out", o.out,
                  "write the report here instead of stdout; relative paths "
                  "land in $CHERNLAB_OUT_DIR when it is set");
  cmd->add_option("--format", o.format, "text, csv, or json-lines")
      ->check(CLI::IsMember({"text", "csv", "json-lines"}));
}

std::string resolve_out(const std::string& out) {
  if (out.empty() || out.front() == '/') return out;
  const char* dir = std::getenv("CHERNLAB_OUT_DIR");
  if (!dir || !*dir) return out;
  return std::string(dir) + "/" + out;
}

void emit(const chernlab::RunReport& run, const CommonOpts& o) {
  const std::string path = resolve_out(o.out);
  if (path.empty()) {
    chernlab::render(run, o.format, std::cout);
    return;
  }
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(path);
  if (!f) throw chernlab::ConfigInvalid("cannot open output file '" + path + "'");
  chernlab::render(run, o.format, f);
  std::cerr << "report written to " << path << "\n";
}

void apply_overrides(std::vector<chernlab::Scenario>& list,
                     const CommonOpts& o) {
  for (chernlab::Scenario& s : list) {
    if (o.resolution > 0) s.resolution = o.resolution;
    if (o.seed != 0) s.seed = o.seed;
    if (o.tolerance > 0.0) s.tolerance = o.tolerance;
  }
}

double parse_coord(const std::string& text) {
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used])))
    ++used;
  if (used != text.size()) throw std::invalid_argument(text);
  return v;
}

chernlab::VecC parse_point(const std::string& text) {
  std::vector<chernlab::Complex> vals;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ';')) {
    const auto comma = part.find(',');
    try {
      if (comma == std::string::npos) {
        vals.emplace_back(parse_coord(part), 0.0);
      } else {
        vals.emplace_back(parse_coord(part.substr(0, comma)),
                          parse_coord(part.substr(comma + 1)));
      }
    } catch (const std::exception&) {
      throw chernlab::ConfigInvalid("bad point component '" + part + "'");
    }
  }
  if (vals.empty()) throw chernlab::ConfigInvalid("empty point");
  chernlab::VecC z(static_cast<int>(vals.size()));
  for (int i = 0; i < z.size(); ++i) z(i) = vals[static_cast<std::size_t>(i)];
  return z;
}

int run_curvature(const std::string& model_name, const std::string& metric_name,
                  const std::string& point_text, const std::string& chart,
                  std::uint64_t seed, const CommonOpts& o) {
  using namespace chernlab;
  const ManifoldModel model = model_by_name(model_name);
  const HermitianMetricField& metric = model_metric(model, metric_name);
  ChartPoint p;
  if (point_text.empty()) {
    Rng rng(seed ? seed : 2024);
    p = model.sample_point(rng);
  } else {
    p.chart = chart.empty() ? model.atlas.front().id : chart;
    p.z = parse_point(point_text);
    if (p.z.size() != model.dim)
      throw DimensionMismatch("point has " + std::to_string(p.z.size()) +
                              " components, model needs " +
                              std::to_string(model.dim));
  }
  const CurvaturePack c = chern_curvature(metric, p);
  const EigenResult lam = lambda_first_eigenvalue(c);
  SupOptions opts;
  const KappaValue k = kappa(c, metric.kahler_known, opts);
  const double kdef = kahler_defect(metric, p);
  std::ostringstream os;
  if (o.format == "json-lines") {
    nlohmann::json j;
    j["model"] = model.name;
    j["metric"] = metric.name;
    j["chart"] = p.chart;
    nlohmann::json zj = nlohmann::json::array();
    for (int i = 0; i < p.z.size(); ++i)
      zj.push_back({p.z(i).real(), p.z(i).imag()});
    j["point"] = zj;
    j["scalar"] = c.scalar;
    j["scalar_alt"] = c.scalar_alt;
    j["lambda_min"] = lam.lambda_min;
    j["sup_h"] = k.h_sup;
    j["kappa"] = k.value;
    j["kappa_branch"] =
        k.branch == KappaBranch::KahlerRho ? "kahler" : "bisectional";
    j["symmetry_defect"] = c.sym_defect;
    j["kahler_defect"] = kdef;
    j["det_g"] = std::abs(c.g.determinant());
    os << j.dump() << "\n";
  } else {
    os << "model = " << model.name << "\n";
    os << "metric = " << metric.name << "\n";
    os << "chart = " << p.chart << "\n";
    os << "point =";
    for (int i = 0; i < p.z.size(); ++i)
      os << " (" << num_str(p.z(i).real(), 12) << ", "
         << num_str(p.z(i).imag(), 12) << ")";
    os << "\n";
    os << "scalar = " << num_str(c.scalar, 12) << "\n";
    os << "scalar_alt = " << num_str(c.scalar_alt, 12) << "\n";
    os << "lambda_min = " << num_str(lam.lambda_min, 12) << "\n";
    os << "sup_h = " << num_str(k.h_sup, 12) << "\n";
    os << "kappa = " << num_str(k.value, 12) << " ("
       << (k.branch == KappaBranch::KahlerRho ? "kahler" : "bisectional")
       << ")\n";
    os << "symmetry_defect = " << num_str(c.sym_defect, 12) << "\n";
    os << "kahler_defect = " << num_str(kdef, 12) << "\n";
  }
  const std::string path = resolve_out(o.out);
  if (path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(path);
    if (!f)
      throw chernlab::ConfigInvalid("cannot open output file '" + path + "'");
    f << os.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for Hermitian curvature inequalities"};
  app.require_subcommand(1);

  CommonOpts curv_opts;
  std::string curv_model = "cp1_fs";
  std::string curv_metric;
  std::string curv_point;
  std::string curv_chart;
  std::uint64_t curv_seed = 0;
  CLI::App* curv = app.add_subcommand("curvature", "pointwise queries");
  curv->add_option("--model", curv_model, "catalog model name");
  curv->add_option("--metric", curv_metric, "metric name (default metric if empty)");
  curv->add_option("--point", curv_point, "semicolon-separated re,im pairs");
  curv->add_option("--chart", curv_chart, "chart id for --point");
  add_common(curv, curv_opts);
  curv->add_option("--sample-seed", curv_seed,
                   "seed for the random point when --point is absent");

  CommonOpts verify_opts;
  std::string verify_file;
  CLI::App* verify = app.add_subcommand("verify", "run a scenario file");
  verify->add_option("file", verify_file, "scenario file")->required();
  add_common(verify, verify_opts);

  CommonOpts suite_opts;
  CLI::App* suite = app.add_subcommand("suite", "run the built-in scenarios");
  add_common(suite, suite_opts);

  CommonOpts krf_opts;
  std::string krf_file;
  CLI::App* krf = app.add_subcommand("krf", "flow classification scenarios");
  krf->add_option("file", krf_file, "scenario file")->required();
  add_common(krf, krf_opts);

  CommonOpts report_opts;
  std::string report_file;
  CLI::App* report = app.add_subcommand("report", "re-render a stored run");
  report->add_option("file", report_file, "stored json-lines report")
      ->required();
  add_common(report, report_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (curv->parsed())
      return run_curvature(curv_model, curv_metric, curv_point, curv_chart,
                           curv_seed, curv_opts);
    if (verify->parsed()) {
      std::vector<chernlab::Scenario> list =
          chernlab::parse_scenarios_file(verify_file);
      apply_overrides(list, verify_opts);
      const chernlab::RunReport run = chernlab::run_scenarios(list);
      emit(run, verify_opts);
      return chernlab::report_ok(run) ? 0 : 1;
    }
    if (suite->parsed()) {
      const chernlab::RunReport run = chernlab::run_builtin_suite(
          suite_opts.resolution, suite_opts.seed, suite_opts.tolerance);
      emit(run, suite_opts);
      return chernlab::report_ok(run) ? 0 : 1;
    }
    if (krf->parsed()) {
      std::vector<chernlab::Scenario> list =
          chernlab::parse_scenarios_file(krf_file);
      for (chernlab::Scenario& s : list) {
        std::vector<std::string> kept;
        for (const std::string& c : s.checks)
          if (c == "krf") kept.push_back(c);
        s.checks = kept.empty() ? std::vector<std::string>{"krf"} : kept;
      }
      apply_overrides(list, krf_opts);
      const chernlab::RunReport run = chernlab::run_scenarios(list);
      emit(run, krf_opts);
      return chernlab::report_ok(run) ? 0 : 1;
    }
    if (report->parsed()) {
      const chernlab::RunReport run = chernlab::load_jsonl_file(report_file);
      emit(run, report_opts);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
