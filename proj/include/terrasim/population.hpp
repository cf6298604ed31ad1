#pragma once

#include <cmath>
#include <utility>

#include "terrasim/field.hpp"
#include "terrasim/grid.hpp"
#include "terrasim/params.hpp"

namespace terrasim {

template <typename Scalar>
struct PulseRates {
  Scalar morning;
  Scalar evening;
};

/// Rectangular pulse values (t_m, t_e) at time t >= 0.
template <typename Scalar>
PulseRates<Scalar> pulse(const CommuteSchedule<Scalar>& s, Scalar t) {
  const Scalar phase = t - std::floor(t);
  auto in = [phase](Scalar a, Scalar b) { return a <= phase && phase < b; };
  return {in(s.morning_start, s.morning_end) ? s.lambda_m : Scalar(0),
          in(s.evening_start, s.evening_end) ? s.lambda_e : Scalar(0)};
}

/// A_E = [int P0 / (int P0 + alpha int E)] (P0 + alpha E).
/// Shares the grid quadrature, so int A_E == int P0 up to rounding.
template <typename Scalar>
ScalarField<Scalar> employment_attractor(const ScalarField<Scalar>& p0,
                                         const ScalarField<Scalar>& jobs, Scalar alpha,
                                         const DiskGrid<Scalar>& grid) {
  require_on(grid, p0);
  require_on(grid, jobs);
  const Scalar mass_p0 = integrate(grid, p0);
  const Scalar mass_jobs = integrate(grid, jobs);
  const Scalar denom = mass_p0 + alpha * mass_jobs;
  if (!(denom > Scalar(0))) {
    throw ValidationError("employment attractor undefined: int P0 + alpha int E is zero");
  }
  return ScalarField<Scalar>(grid.key(),
                             (mass_p0 / denom) * (p0.values() + alpha * jobs.values()));
}

/// A_P = P0: the population returns home.
template <typename Scalar>
ScalarField<Scalar> home_attractor(const ScalarField<Scalar>& p0) {
  return p0;
}

/// One explicit Euler step of dP/dt = tm (A_E - P) + te (A_P - P).
/// With dt (tm + te) <= 1 the update is a convex combination of P, A_E, A_P.
template <typename Scalar>
ScalarField<Scalar> commute_substep(const ScalarField<Scalar>& p,
                                    const ScalarField<Scalar>& employment,
                                    const ScalarField<Scalar>& home, Scalar tm, Scalar te,
                                    Scalar dt) {
  p.require_same(employment);
  p.require_same(home);
  const Scalar wm = dt * tm;
  const Scalar we = dt * te;
  if (wm < Scalar(0) || we < Scalar(0) || wm + we > Scalar(1)) {
    throw StabilityError("commute substep violates dt*(tm+te) <= 1");
  }
  if (wm == Scalar(0) && we == Scalar(0)) return p;
  return ScalarField<Scalar>(
      p.key(), (Scalar(1) - wm - we) * p.values() + wm * employment.values() + we * home.values());
}

template <typename Scalar>
struct DaySamples {
  ScalarField<Scalar> start;
  ScalarField<Scalar> midday;
  ScalarField<Scalar> end;
};

/// Integrates one day of commuting with dt = 1/substeps. The employment
/// attractor is built once from the job-station density at the start of the
/// day; job stations only change between days.
template <typename Scalar>
DaySamples<Scalar> run_population_day(const ScalarField<Scalar>& p_start,
                                      const ScalarField<Scalar>& jobs,
                                      const ScalarField<Scalar>& p0,
                                      const CommuteSchedule<Scalar>& schedule,
                                      const ModelParams<Scalar>& params,
                                      const DiskGrid<Scalar>& grid, int substeps) {
  if (substeps < 2 || substeps % 2 != 0) {
    throw ValidationError("substeps per day must be even and >= 2");
  }
  require_on(grid, p_start);
  const ScalarField<Scalar> employment = employment_attractor(p0, jobs, params.alpha, grid);
  const ScalarField<Scalar> home = home_attractor(p0);
  const Scalar dt = Scalar(1) / Scalar(substeps);

  DaySamples<Scalar> out{p_start, {}, {}};
  ScalarField<Scalar> p = p_start;
  for (int s = 0; s < substeps; ++s) {
    // Pulses are sampled at substep midpoints so window edges never fall on
    // a sample point.
    const auto rates = pulse(schedule, (Scalar(s) + Scalar(0.5)) * dt);
    p = commute_substep(p, employment, home, rates.morning, rates.evening, dt);
    if (s + 1 == substeps / 2) out.midday = p;
  }
  out.end = std::move(p);
  return out;
}

}  // namespace terrasim
