#pragma once
// Flat key-value scenario files.  Grammar:
//
//   # comment                 (';' also starts a comment)
//   [scenario]                begins a new record
//   key = value               inside a record
//
// Keys: name, source, target, map, omega, eta, eta0, checks, resolution,
// seed, tolerance, loose, weight, samples, points, and the declared_* class
// metadata for flow scenarios.  'checks' is a whitespace-separated list.
// Unknown keys, values that fail to parse, and empty check lists are
// rejected with the offending line number.

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace chernlab {

struct Scenario {
  std::string name;
  std::string source;
  std::string target;          // empty = same as source
  std::string map = "identity";
  std::string omega;           // metric name on source, empty = default
  std::string eta;             // metric name on target, empty = default
  std::string eta0;            // reference class metric for flow checks
  std::vector<std::string> checks;
  int resolution = 0;
  std::uint64_t seed = 2024;
  double tolerance = 1e-8;
  bool loose = false;
  std::string weight = "none";
  int samples = 2000;          // direction-average sample count
  int points = 12;             // pointwise-residual sample count
  std::map<std::string, double> declared;  // declared_* numeric fields
  std::optional<bool> declared_ky_nef;
  int line = 0;                // where the record started, for diagnostics
};

inline const std::set<std::string>& known_checks() {
  static const std::set<std::string> s = {
      "main_inequality", "cpn_bound",  "degeneracy_inequality",
      "chern_lu",        "schwarz_integral", "ke_chain",
      "gauduchon",       "volume",     "berger",
      "krf"};
  return s;
}

namespace cfg {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::string where(int line) { return "line " + std::to_string(line); }

inline double num_value(const std::string& key, const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size())
      throw ConfigInvalid(where(line) + ": key '" + key +
                          "': trailing characters in '" + v + "'");
    return x;
  } catch (const ConfigInvalid&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigInvalid(where(line) + ": key '" + key + "': bad number '" + v +
                        "'");
  }
}

inline bool bool_value(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigInvalid(where(line) + ": key '" + key + "': bad boolean '" + v +
                      "'");
}

inline void finish_record(Scenario& s, std::vector<Scenario>& out, int count) {
  if (s.name.empty()) s.name = "scenario-" + std::to_string(count);
  if (s.source.empty())
    throw ConfigInvalid(where(s.line) + ": scenario '" + s.name +
                        "' never set 'source'");
  if (s.checks.empty())
    throw ConfigInvalid(where(s.line) + ": scenario '" + s.name +
                        "' has an empty check list");
  out.push_back(s);
}

}  // namespace cfg

inline std::vector<Scenario> parse_scenarios(std::istream& in) {
  std::vector<Scenario> out;
  Scenario cur;
  bool open = false;
  int line_no = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = cfg::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line != "[scenario]")
        throw ConfigInvalid(cfg::where(line_no) + ": unknown section '" + line +
                            "'");
      if (open) cfg::finish_record(cur, out, static_cast<int>(out.size()) + 1);
      cur = Scenario{};
      cur.line = line_no;
      open = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigInvalid(cfg::where(line_no) + ": expected 'key = value', got '" +
                          line + "'");
    if (!open)
      throw ConfigInvalid(cfg::where(line_no) +
                          ": key outside any [scenario] section");
    const std::string key = cfg::trim(line.substr(0, eq));
    const std::string val = cfg::trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigInvalid(cfg::where(line_no) + ": empty key or value");
    if (key == "name") {
      cur.name = val;
    } else if (key == "source") {
      cur.source = val;
    } else if (key == "target") {
      cur.target = val;
    } else if (key == "map") {
      cur.map = val;
    } else if (key == "omega") {
      cur.omega = val;
    } else if (key == "eta") {
      cur.eta = val;
    } else if (key == "eta0") {
      cur.eta0 = val;
    } else if (key == "weight") {
      cur.weight = val;
    } else if (key == "checks") {
      std::istringstream cs(val);
      std::string c;
      while (cs >> c) {
        if (!known_checks().count(c))
          throw ConfigInvalid(cfg::where(line_no) + ": unknown check '" + c +
                              "'");
        cur.checks.push_back(c);
      }
    } else if (key == "resolution") {
      cur.resolution = static_cast<int>(cfg::num_value(key, val, line_no));
    } else if (key == "seed") {
      cur.seed = static_cast<std::uint64_t>(cfg::num_value(key, val, line_no));
    } else if (key == "tolerance") {
      cur.tolerance = cfg::num_value(key, val, line_no);
      if (!(cur.tolerance > 0.0))
        throw ConfigInvalid(cfg::where(line_no) + ": tolerance must be positive");
    } else if (key == "loose") {
      cur.loose = cfg::bool_value(key, val, line_no);
    } else if (key == "samples") {
      cur.samples = static_cast<int>(cfg::num_value(key, val, line_no));
    } else if (key == "points") {
      cur.points = static_cast<int>(cfg::num_value(key, val, line_no));
    } else if (key == "declared_ky_nef") {
      cur.declared_ky_nef = cfg::bool_value(key, val, line_no);
    } else if (key.rfind("declared_", 0) == 0) {
      static const std::set<std::string> ok = {
          "declared_lambda_total", "declared_eta0_pairing",
          "declared_ky_pairing"};
      if (!ok.count(key))
        throw ConfigInvalid(cfg::where(line_no) + ": unknown key '" + key + "'");
      cur.declared[key] = cfg::num_value(key, val, line_no);
    } else {
      throw ConfigInvalid(cfg::where(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (open) cfg::finish_record(cur, out, static_cast<int>(out.size()) + 1);
  if (out.empty()) throw ConfigInvalid("no [scenario] sections found");
  return out;
}

inline std::vector<Scenario> parse_scenarios_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open scenario file '" + path + "'");
  try {
    return parse_scenarios(in);
  } catch (const ConfigInvalid& e) {
    throw ConfigInvalid(path + ": " + e.what());
  }
}

}  // namespace chernlab
