#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "terrasim/grid.hpp"
#include "terrasim/params.hpp"

namespace terrasim {

struct StabilityReport {
  double dt{0};                ///< commute step
  double wealth_dt{0};         ///< wealth diffusion step
  double diffusion_number{0};  ///< nu * wealth_dt / h^2, must be <= 0.25
  double commute_weight{0};    ///< dt * (lambda_m + lambda_e), must be <= 1
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }

  std::string summary() const {
    std::ostringstream os;
    os << "commute dt = " << dt << ", wealth dt = " << wealth_dt << "\n"
       << "diffusion number nu*dt/h^2 = " << diffusion_number << " (limit 0.25)\n"
       << "commute weight dt*(lambda_m+lambda_e) = " << commute_weight << " (limit 1)\n";
    for (const auto& v : violations) os << "violation: " << v << "\n";
    os << (ok() ? "stable" : "UNSTABLE") << "\n";
    return os.str();
  }
};

inline constexpr double kMaxDiffusionNumber = 0.25;
inline constexpr double kMaxCommuteWeight = 1.0;

/// Smallest number of equal wealth steps per day, at least `minimum`, that
/// keeps nu * dt / h^2 within the explicit diffusion bound.
template <typename Scalar>
int min_wealth_substeps(const ModelParams<Scalar>& params, const DiskGrid<Scalar>& grid,
                        int minimum) {
  const double h = static_cast<double>(grid.h());
  const double needed = static_cast<double>(params.nu) / (kMaxDiffusionNumber * h * h);
  int n = std::max(minimum, static_cast<int>(std::ceil(needed)));
  // Guard against ceil landing one ulp short of the bound.
  while (static_cast<double>(params.nu) * (1.0 / n) / (h * h) > kMaxDiffusionNumber) ++n;
  return n;
}

/// Checks the explicit-scheme bounds for a day split into substeps_per_day
/// commute steps and wealth_substeps diffusion steps (0 means the same count
/// as the commute). Never throws; the engine refuses to run a failing report.
template <typename Scalar>
StabilityReport enforce_stability(const ModelParams<Scalar>& params,
                                  const CommuteSchedule<Scalar>& schedule,
                                  const DiskGrid<Scalar>& grid, int substeps_per_day,
                                  int wealth_substeps = 0) {
  StabilityReport report;
  if (wealth_substeps == 0) wealth_substeps = substeps_per_day;
  if (substeps_per_day <= 0 || wealth_substeps <= 0) {
    report.violations.push_back("substeps per day must be positive");
    return report;
  }
  const double dt = 1.0 / substeps_per_day;
  const double h = static_cast<double>(grid.h());
  report.dt = dt;
  report.wealth_dt = 1.0 / wealth_substeps;
  report.diffusion_number = static_cast<double>(params.nu) * report.wealth_dt / (h * h);
  report.commute_weight = dt * static_cast<double>(schedule.lambda_m + schedule.lambda_e);

  if (report.diffusion_number > kMaxDiffusionNumber) {
    std::ostringstream os;
    os << "diffusion bound: nu*dt/h^2 = " << report.diffusion_number << " > 0.25 (nu = "
       << params.nu << ", dt = " << report.wealth_dt << ", h = " << h << ")";
    report.violations.push_back(os.str());
  }
  if (report.commute_weight > kMaxCommuteWeight) {
    std::ostringstream os;
    os << "commute bound: dt*(lambda_m+lambda_e) = " << report.commute_weight
       << " > 1 (lambda_m = " << schedule.lambda_m << ", lambda_e = " << schedule.lambda_e
       << ", dt = " << dt << ")";
    report.violations.push_back(os.str());
  }
  return report;
}

}  // namespace terrasim
