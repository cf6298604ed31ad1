// terrasim: command-line driver for the territory simulator.
//
//   terrasim run --scenario <path> --out <dir> [--days N] [--snapshot-every K] [--heatmaps]
//   terrasim print-defaults
//   terrasim check --scenario <path>
//
// Exit codes: 0 success, 2 validation or stability failure, 3 I/O failure.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "terrasim/engine.hpp"
#include "terrasim/error.hpp"
#include "terrasim/scenario.hpp"
#include "terrasim/stability.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

int check(const std::string& path) {
  const terrasim::Scenario s = terrasim::load_scenario_file(path);
  const terrasim::Grid grid(s.grid.radius, s.grid.nx);
  const int wealth_steps = terrasim::wealth_substeps(s, grid);
  const auto report = terrasim::enforce_stability(s.params, s.schedule, grid,
                                                  s.run.substeps_per_day, wealth_steps);
  std::cout << "scenario ok: " << grid.size() << " cells, " << s.run.days << " days, "
            << s.run.substeps_per_day << " commute / " << wealth_steps
            << " wealth substeps per day\n"
            << report.summary();
  return report.ok() ? kExitOk : kExitInvalid;
}

int run(const std::string& path, const std::string& out, std::optional<int> days,
        std::optional<int> snapshot_every, bool heatmaps) {
  terrasim::Scenario s = terrasim::load_scenario_file(path);
  if (days) s.run.days = *days;
  if (snapshot_every) s.output.snapshot_every = *snapshot_every;
  if (heatmaps) s.output.heatmaps = true;
  s.validate();

  terrasim::DirectorySink sink(out, s.run.days, s.output.snapshot_every, s.output.heatmaps);
  const auto t0 = std::chrono::steady_clock::now();
  const terrasim::SimResult result = terrasim::run_simulation(s, {&sink});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (result.first_negative_wealth_day) {
    std::cerr << "warning: wealth density became negative on day "
              << *result.first_negative_wealth_day << "\n";
  }
  const auto& last = result.series.back();
  std::printf("ran %d days in %.2f s; final mass_E = %.6g, mass_W = %.6g, mean_i = %.6g\n",
              s.run.days, secs, last.mass_e, last.mass_w, last.mean_i);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Territory simulator: daily commuting, job growth, efficiency and wealth diffusion"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::optional<int> days;
  std::optional<int> snapshot_every;
  bool heatmaps = false;

  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write outputs");
  run_cmd->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory")->required();
  run_cmd->add_option("--days", days, "Override the number of simulated days");
  run_cmd->add_option("--snapshot-every", snapshot_every, "Field snapshot cadence in days");
  run_cmd->add_flag("--heatmaps", heatmaps, "Also write PGM heatmaps");

  auto* defaults_cmd = app.add_subcommand("print-defaults", "Print the default scenario as JSON");

  std::string check_path;
  auto* check_cmd = app.add_subcommand("check", "Validate a scenario and report stability");
  check_cmd->add_option("--scenario", check_path, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*defaults_cmd) {
      std::cout << terrasim::scenario_to_json(terrasim::default_scenario()).dump(2) << "\n";
      return kExitOk;
    }
    if (*check_cmd) return check(check_path);
    if (*run_cmd) return run(scenario_path, out_dir, days, snapshot_every, heatmaps);
  } catch (const terrasim::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const terrasim::ValidationError& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const terrasim::StabilityError& e) {
    std::cerr << "unstable configuration:\n" << e.what();
    return kExitInvalid;
  }
  return kExitOk;
}
