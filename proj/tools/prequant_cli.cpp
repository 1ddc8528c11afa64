#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "prequant/errors.hpp"
#include "prequant/scenario.hpp"
#include "prequant/verify.hpp"

namespace {

constexpr int kOperationalError = 2;

void print_summary(const std::vector<prequant::CheckReport>& reports) {
  for (const auto& r : reports)
    std::fprintf(stderr, "%-18s %-18s max_defect=%.3e tol=%.1e (%.2fs)\n", r.name.c_str(),
                 prequant::to_string(r.status).c_str(), r.max_defect, r.tolerance, r.wall_time);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prequantum circle bundles: lift construction and numerical checks"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string report_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> step;
  std::optional<int> samples;
  bool print_config = false;
  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("file", scenario_path, "Scenario file")->required();
  run->add_option("--report", report_path, "Write the report here instead of stdout");
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--step", step, "Override the integrator step");
  run->add_option("--samples", samples, "Override the sample count")->check(CLI::PositiveNumber);
  run->add_flag("--print-config", print_config, "Print the resolved scenario and exit");

  auto* models = app.add_subcommand("list-models", "List model identifier forms");
  auto* checks = app.add_subcommand("list-checks", "List check names and default tolerances");

  int level = 1;
  int demo_samples = 8;
  std::uint64_t demo_seed = 0;
  auto* demo = app.add_subcommand("demo", "Demonstrations");
  demo->require_subcommand(1);
  auto* so3 = demo->add_subcommand("so3", "Closure defect of the rotation-equivariant lift on s2:<n>");
  so3->add_option("--level", level, "Bundle level n")->required()->check(CLI::PositiveNumber);
  so3->add_option("--samples", demo_samples, "Sample count")->check(CLI::PositiveNumber);
  so3->add_option("--seed", demo_seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kOperationalError;
  }

  try {
    if (models->parsed()) {
      for (const auto& form : prequant::model_id_forms()) std::cout << form << "\n";
      return 0;
    }
    if (checks->parsed()) {
      for (const auto& name : prequant::check_names())
        std::printf("%-18s %.0e%s\n", name.c_str(), prequant::default_tolerance(name),
                    name == "so3-demo" ? "  (s2 models, on request)" : "");
      return 0;
    }
    if (so3->parsed()) {
      prequant::Scenario s;
      s.model = "s2:" + std::to_string(level);
      s.checks = {"so3-demo"};
      s.samples = demo_samples;
      s.seed = demo_seed;
      const auto reports = prequant::run_scenario(s);
      std::cout << reports.front().notes << "\n";
      print_summary(reports);
      return prequant::exit_status(s, reports);
    }

    prequant::Scenario s = prequant::parse_scenario(scenario_path);
    if (seed) s.seed = *seed;
    if (step) s.step = *step;
    if (samples) s.samples = *samples;
    s.validate();
    if (print_config) {
      std::cout << prequant::scenario_to_text(s);
      return 0;
    }
    const auto reports = prequant::run_scenario(s);
    if (report_path.empty()) {
      std::cout << prequant::report_to_text(s, reports);
    } else {
      prequant::emit_report(s, reports, report_path);
    }
    print_summary(reports);
    return prequant::exit_status(s, reports);
  } catch (const prequant::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOperationalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOperationalError;
  }
}
