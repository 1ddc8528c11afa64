#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "prequant/verify.hpp"

namespace prequant {

/// Declarative description of one verification run.
struct Scenario {
  std::string model;
  std::vector<std::string> checks;         ///< defaults to default_suite() when the file omits it
  std::map<std::string, double> tolerances;
  double step = 1e-3;
  int samples = 32;
  std::uint64_t seed = 0;
  std::vector<double> offsets{0.25, 0.5, 0.8};
  std::vector<std::string> hamiltonians;   ///< extra lemma2 fields
  std::vector<std::string> expected_hypothesis_failures;

  bool operator==(const Scenario&) const = default;

  /// Throws ParseError naming the offending key.
  void validate() const;
};

Scenario parse_scenario(const std::filesystem::path& path);
Scenario parse_scenario_text(const std::string& text);
/// Canonical text form; parse_scenario_text(scenario_to_text(s)) == s.
std::string scenario_to_text(const Scenario& s);

/// Builds the model once and runs the checks in order.
std::vector<CheckReport> run_scenario(const Scenario& s);

/// Report document {scenario, reports}. Byte-identical for identical inputs.
std::string report_to_text(const Scenario& s, const std::vector<CheckReport>& reports);
/// Writes report_to_text; throws Error on I/O failure.
void emit_report(const Scenario& s, const std::vector<CheckReport>& reports, const std::filesystem::path& path);

/// 0 when every report passes (hypothesis failures only when listed as expected), 1 otherwise.
int exit_status(const Scenario& s, const std::vector<CheckReport>& reports);

} // namespace prequant
