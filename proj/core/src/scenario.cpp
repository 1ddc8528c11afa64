#include "prequant/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prequant/errors.hpp"

namespace prequant {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kKeys{"model",   "checks",  "tolerances",   "step",
                                  "samples", "seed",    "offsets",      "hamiltonians",
                                  "expected_hypothesis_failures"};

std::vector<std::string> string_list(const json& j, const std::string& key) {
  if (!j.is_array()) throw ParseError("'" + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError("'" + key + "' must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ParseError("'" + key + "' must be a number");
  return j.get<double>();
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json scenario_json(const Scenario& s) {
  json j;
  j["model"] = s.model;
  j["checks"] = s.checks;
  json tol = json::object();
  for (const auto& [k, v] : s.tolerances) tol[k] = v;
  j["tolerances"] = tol;
  j["step"] = s.step;
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  j["offsets"] = s.offsets;
  j["hamiltonians"] = s.hamiltonians;
  j["expected_hypothesis_failures"] = s.expected_hypothesis_failures;
  return j;
}

} // namespace

void Scenario::validate() const {
  try {
    validate_model_id(model);
  } catch (const InputError& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  for (const auto& c : checks) {
    if (!is_check_name(c)) throw ParseError("checks: unknown check '" + c + "'");
    if (!check_applies(c, model)) throw ParseError("checks: '" + c + "' is defined only for s2 models");
  }
  for (const auto& [name, tol] : tolerances) {
    if (!is_check_name(name)) throw ParseError("tolerances: unknown check '" + name + "'");
    if (!(tol > 0.0)) throw ParseError("tolerances: '" + name + "' must be positive");
  }
  if (!(step > 0.0 && step <= 0.1)) throw ParseError("step: must be in (0, 0.1]");
  if (samples < 1) throw ParseError("samples: must be >= 1");
  for (double c : offsets)
    if (!std::isfinite(c)) throw ParseError("offsets: entries must be finite");
  for (const auto& e : expected_hypothesis_failures)
    if (!is_check_name(e)) throw ParseError("expected_hypothesis_failures: unknown check '" + e + "'");
}

Scenario parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scenario: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("scenario must be an object");
  for (const auto& [key, _] : j.items())
    if (!kKeys.count(key)) throw ParseError("unknown key '" + key + "'");
  if (!j.contains("model") || !j["model"].is_string()) throw ParseError("model: required string");

  Scenario s;
  s.model = j["model"].get<std::string>();
  s.checks = j.contains("checks") ? string_list(j["checks"], "checks") : default_suite();
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw ParseError("tolerances: must be an object");
    for (const auto& [k, v] : j["tolerances"].items()) s.tolerances[k] = number(v, "tolerances." + k);
  }
  if (j.contains("step")) s.step = number(j["step"], "step");
  if (j.contains("samples")) {
    if (!j["samples"].is_number_integer()) throw ParseError("samples: must be an integer");
    s.samples = j["samples"].get<int>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParseError("seed: must be a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("offsets")) {
    if (!j["offsets"].is_array()) throw ParseError("offsets: must be an array of numbers");
    s.offsets.clear();
    for (const auto& e : j["offsets"]) s.offsets.push_back(number(e, "offsets"));
  }
  if (j.contains("hamiltonians")) s.hamiltonians = string_list(j["hamiltonians"], "hamiltonians");
  if (j.contains("expected_hypothesis_failures"))
    s.expected_hypothesis_failures = string_list(j["expected_hypothesis_failures"], "expected_hypothesis_failures");
  s.validate();
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string scenario_to_text(const Scenario& s) { return scenario_json(s).dump(2) + "\n"; }

std::vector<CheckReport> run_scenario(const Scenario& s) {
  s.validate();
  std::vector<CheckReport> reports;
  if (s.checks.empty()) return reports;
  const ModelInstance model = make_model(s.model);
  CheckOptions opts;
  opts.samples = s.samples;
  opts.seed = s.seed;
  opts.flow.step = s.step;
  opts.offsets = s.offsets;
  opts.hamiltonians = s.hamiltonians;
  for (const auto& name : s.checks) {
    const auto it = s.tolerances.find(name);
    opts.tolerance = it == s.tolerances.end() ? std::nullopt : std::optional<double>(it->second);
    reports.push_back(run_check(name, model, opts));
  }
  return reports;
}

std::string report_to_text(const Scenario& s, const std::vector<CheckReport>& reports) {
  json doc;
  doc["scenario"] = scenario_json(s);
  json list = json::array();
  for (const auto& r : reports) {
    json e;
    e["name"] = r.name;
    e["status"] = to_string(r.status);
    e["max_defect"] = number_or_null(r.max_defect);
    e["tolerance"] = r.tolerance;
    e["samples"] = r.samples;
    e["seed"] = r.seed;
    e["wall_time"] = r.wall_time;
    e["notes"] = r.notes;
    list.push_back(std::move(e));
  }
  doc["reports"] = std::move(list);
  return doc.dump(2) + "\n";
}

void emit_report(const Scenario& s, const std::vector<CheckReport>& reports, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write report '" + path.string() + "'");
  out << report_to_text(s, reports);
  if (!out) throw Error("failed writing report '" + path.string() + "'");
}

int exit_status(const Scenario& s, const std::vector<CheckReport>& reports) {
  const auto& expected = s.expected_hypothesis_failures;
  for (const auto& r : reports) {
    if (r.status == CheckStatus::pass) continue;
    if (r.status == CheckStatus::hypothesis_failure &&
        std::find(expected.begin(), expected.end(), r.name) != expected.end())
      continue;
    return 1;
  }
  return 0;
}

} // namespace prequant
