#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "terrasim/error.hpp"
#include "terrasim/field.hpp"
#include "terrasim/grid.hpp"
#include "terrasim/params.hpp"

namespace terrasim {

/// Malformed scenario document. Carries the 1-based line and column of the
/// offending byte when the failure is syntactic.
class ScenarioParseError : public ValidationError {
 public:
  ScenarioParseError(const std::string& what, std::size_t line, std::size_t column)
      : ValidationError(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

using Bump = GaussianBump<double>;

struct GridSpec {
  double radius{1.0};
  int nx{64};
};

struct InitialConditions {
  std::vector<Bump> population;  ///< P0
  std::vector<Bump> jobs;        ///< E0
  /// i0 is either a constant or, when bumps are given, a Gaussian mixture.
  double efficiency_constant{0.6};
  std::optional<std::vector<Bump>> efficiency_bumps;
  double wealth{1.0};  ///< W0
};

struct RunSpec {
  int days{50};
  int substeps_per_day{200};  ///< commute steps per day
  /// Wealth diffusion steps per day; 0 picks the smallest count, at least
  /// substeps_per_day, that satisfies the explicit diffusion bound.
  int wealth_substeps_per_day{0};
};

struct OutputSpec {
  int snapshot_every{1};  ///< 0 disables field snapshots
  bool heatmaps{false};
};

struct Scenario {
  GridSpec grid;
  Params params;
  Schedule schedule;
  InitialConditions initial;
  RunSpec run;
  OutputSpec output;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;
};

/// Reference scenario: dispersed homes, a central job concentration.
Scenario default_scenario();

/// Parses a JSON scenario document. Missing keys take their defaults,
/// unknown keys are rejected, and the result is validated.
Scenario load_scenario(std::string_view text);
Scenario load_scenario_file(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& scenario);

struct InitialFields {
  Field population;
  Field jobs;
  Field efficiency;
  Field wealth;
};

/// Wealth steps per day after resolving the automatic choice.
int wealth_substeps(const Scenario& scenario, const Grid& grid);

InitialFields build_initial_fields(const Scenario& scenario, const Grid& grid);

}  // namespace terrasim
