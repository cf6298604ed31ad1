#include "terrasim/engine.hpp"

#include <cstdio>
#include <string>
#include <utility>

#include "terrasim/economy.hpp"
#include "terrasim/error.hpp"
#include "terrasim/population.hpp"
#include "terrasim/stability.hpp"
#include "terrasim/wealth.hpp"

namespace terrasim {

std::string snapshot_name(const char* field, int day) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%05d", field, day);
  return buf;
}

DirectorySink::DirectorySink(std::filesystem::path root, int days, int snapshot_every,
                             bool heatmaps)
    : root_(std::move(root)),
      last_day_(days - 1),
      snapshot_every_(snapshot_every),
      heatmaps_(heatmaps) {}

void DirectorySink::snapshot(const Grid& grid, const char* name, int day, const Field& field) {
  const std::string stem = snapshot_name(name, day);
  write_file(root_ / "fields" / (stem + ".csv"), write_field_csv(grid, field));
  if (heatmaps_) {
    const auto bytes = write_heatmap_pgm(grid, field);
    write_file(root_ / "frames" / (stem + ".pgm"),
               std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  }
}

void DirectorySink::on_day(const Grid& grid, const DayDiagnostics& diag, const SimState& state) {
  if (snapshot_every_ <= 0) return;
  if (diag.day % snapshot_every_ != 0 && diag.day != last_day_) return;
  snapshot(grid, "P_mid", diag.day, diag.population_midday);
  snapshot(grid, "E", diag.day, state.jobs);
  snapshot(grid, "Ei", diag.day, hadamard(state.jobs, state.efficiency));
  snapshot(grid, "W", diag.day, state.wealth);
}

void DirectorySink::on_finish(const Grid& /*grid*/, const std::vector<SeriesRow>& series) {
  write_file(root_ / "series.csv", write_series_csv(series));
}

SimResult run_simulation(const Scenario& scenario, std::vector<OutputSink*> sinks) {
  scenario.validate();
  const Grid grid(scenario.grid.radius, scenario.grid.nx);
  const Params& params = scenario.params;
  const int substeps = scenario.run.substeps_per_day;
  const int w_substeps = wealth_substeps(scenario, grid);

  const StabilityReport report =
      enforce_stability(params, scenario.schedule, grid, substeps, w_substeps);
  if (!report.ok()) throw StabilityError(report.summary());

  const InitialFields init = build_initial_fields(scenario, grid);
  const double wealth_dt = 1.0 / w_substeps;
  const double area = grid.total_area();

  SimResult result;
  SimState& state = result.state;
  state.population = init.population;
  state.jobs = init.jobs;
  state.efficiency = init.efficiency;
  WealthState<double> wealth(grid, init.wealth);
  state.wealth = wealth.field();

  for (int day = 0; day < scenario.run.days; ++day) {
    DaySamples<double> samples = run_population_day(state.population, state.jobs, init.population,
                                                    scenario.schedule, params, grid, substeps);

    // E and i are constant within the day, so their midday values are the
    // start-of-day values.
    PopulationChange<double> change = split_population_change(samples.midday, samples.start);
    const double phi = energy_consumption(grid, change.incr, change.decr);
    Field omega = wealth_rate(samples.midday, state.jobs, state.efficiency, params.beta0);

    state.jobs = grow_jobs(state.jobs, omega, params.beta1);
    state.efficiency = evolve_efficiency(state.efficiency, omega, params.beta1, params.beta2);

    const double injected_before = wealth.injected();
    const double inflow_before = wealth.inflow();
    const Field w_before = wealth.field();
    wealth.advance(grid, omega, phi, params, wealth_dt, w_substeps);
    state.wealth = wealth.field();
    const double residual =
        wealth_budget(grid, w_before, state.wealth, wealth.injected() - injected_before,
                      wealth.inflow() - inflow_before);

    state.population = std::move(samples.end);
    state.day = day + 1;

    if (!result.first_negative_wealth_day && state.wealth.min() < 0) {
      result.first_negative_wealth_day = day;
    }

    SeriesRow row;
    row.day = day;
    row.phi = phi;
    row.mass_p_mid = integrate(grid, samples.midday);
    row.mass_e = integrate(grid, state.jobs);
    row.mass_w = integrate(grid, state.wealth);
    row.mean_i = integrate(grid, state.efficiency) / area;
    row.mass_omega = integrate(grid, omega);
    result.series.push_back(row);
    result.budget_residuals.push_back(residual);

    if (!sinks.empty()) {
      DayDiagnostics diag{day,
                          phi,
                          std::move(omega),
                          std::move(change.incr),
                          std::move(change.decr),
                          std::move(samples.start),
                          std::move(samples.midday),
                          residual,
                          row};
      for (OutputSink* sink : sinks) sink->on_day(grid, diag, state);
    }
  }

  for (OutputSink* sink : sinks) sink->on_finish(grid, result.series);
  return result;
}

}  // namespace terrasim
