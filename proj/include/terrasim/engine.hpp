#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "terrasim/field.hpp"
#include "terrasim/grid.hpp"
#include "terrasim/output.hpp"
#include "terrasim/scenario.hpp"

namespace terrasim {

/// Fields between days: P at the end of the last simulated day, E, i and W
/// after that day's slow update.
struct SimState {
  int day{0};  ///< number of completed days
  Field population;
  Field jobs;
  Field efficiency;
  Field wealth;
};

/// Everything computed for day n, handed to sinks after the day completes.
struct DayDiagnostics {
  int day{0};
  double phi{0};
  Field omega;
  Field incr;
  Field decr;
  Field population_morning;
  Field population_midday;
  double budget_residual{0};  ///< wealth ledger residual for this day
  SeriesRow row;
};

class OutputSink {
 public:
  virtual ~OutputSink() = default;
  virtual void on_day(const Grid& grid, const DayDiagnostics& diag, const SimState& state) = 0;
  virtual void on_finish(const Grid& /*grid*/, const std::vector<SeriesRow>& /*series*/) {}
};

/// Writes series.csv, fields/<name>_<day>.csv and optionally
/// frames/<name>_<day>.pgm under a directory. Snapshots are taken on days
/// divisible by snapshot_every and on the final day.
class DirectorySink : public OutputSink {
 public:
  DirectorySink(std::filesystem::path root, int days, int snapshot_every, bool heatmaps);

  void on_day(const Grid& grid, const DayDiagnostics& diag, const SimState& state) override;
  void on_finish(const Grid& grid, const std::vector<SeriesRow>& series) override;

 private:
  void snapshot(const Grid& grid, const char* name, int day, const Field& field);

  std::filesystem::path root_;
  int last_day_;
  int snapshot_every_;
  bool heatmaps_;
};

struct SimResult {
  SimState state;
  std::vector<SeriesRow> series;
  std::vector<double> budget_residuals;
  /// First day whose end-of-day W has a negative cell, if any.
  std::optional<int> first_negative_wealth_day;
};

/**
 * Runs the day loop:
 *   1. commute P through the day with E frozen,
 *   2. population change split, energy phi and wealth rate omega at midday,
 *   3. job-station growth and exact logistic efficiency step over the day,
 *   4. wealth diffusion in substeps with the day's constant sources.
 *
 * Throws StabilityError before day 0 if the explicit bounds fail.
 */
SimResult run_simulation(const Scenario& scenario, std::vector<OutputSink*> sinks = {});

/// Name used in snapshot files: e.g. snapshot_name("W", 7) == "W_00007".
std::string snapshot_name(const char* field, int day);

}  // namespace terrasim
