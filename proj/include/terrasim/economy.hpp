#pragma once

#include <cmath>
#include <utility>

#include "terrasim/field.hpp"
#include "terrasim/grid.hpp"

namespace terrasim {

template <typename Scalar>
struct PopulationChange {
  ScalarField<Scalar> incr;  ///< max(P_mid - P_morning, 0)
  ScalarField<Scalar> decr;  ///< max(P_morning - P_mid, 0)
};

template <typename Scalar>
PopulationChange<Scalar> split_population_change(const ScalarField<Scalar>& p_mid,
                                                 const ScalarField<Scalar>& p_morning) {
  p_mid.require_same(p_morning);
  const auto diff = (p_mid.values() - p_morning.values()).eval();
  return {ScalarField<Scalar>(p_mid.key(), diff.cwiseMax(Scalar(0))),
          ScalarField<Scalar>(p_mid.key(), (-diff).cwiseMax(Scalar(0)))};
}

/// Daily energy consumption: distance-weighted pairing of population gain
/// against population loss between morning and midday.
template <typename Scalar>
Scalar energy_consumption(const DiskGrid<Scalar>& grid, const ScalarField<Scalar>& incr,
                          const ScalarField<Scalar>& decr) {
  return distance_weighted_double_integral(grid, incr, decr);
}

/// omega = beta0 * P * E * i, sampled at midday.
template <typename Scalar>
ScalarField<Scalar> wealth_rate(const ScalarField<Scalar>& p_mid, const ScalarField<Scalar>& e_mid,
                                const ScalarField<Scalar>& i_mid, Scalar beta0) {
  p_mid.require_same(e_mid);
  p_mid.require_same(i_mid);
  return ScalarField<Scalar>(
      p_mid.key(),
      beta0 * p_mid.values().cwiseProduct(e_mid.values()).cwiseProduct(i_mid.values()));
}

/// dE/dt = beta1 * omega over a day with constant omega.
template <typename Scalar>
ScalarField<Scalar> grow_jobs(const ScalarField<Scalar>& jobs, const ScalarField<Scalar>& omega,
                              Scalar beta1, Scalar days = Scalar(1)) {
  jobs.require_same(omega);
  return ScalarField<Scalar>(jobs.key(), jobs.values() + (beta1 * days) * omega.values());
}

/// Exact solution after time `days` of di/dt = r i (1 - i) with constant r:
/// i' = i / (i + (1 - i) e^{-r t}).
template <typename Scalar>
Scalar logistic_step(Scalar i, Scalar rate, Scalar days = Scalar(1)) {
  if (i == Scalar(0) || i == Scalar(1)) return i;
  const Scalar rt = rate * days;
  // Branch on the sign so the exponential never overflows.
  if (rt >= Scalar(0)) {
    return i / (i + (Scalar(1) - i) * std::exp(-rt));
  }
  const Scalar g = std::exp(rt);
  return i * g / (i * g + (Scalar(1) - i));
}

/// di/dt = i (1 - i) (beta2 omega - beta1 omega), advanced one day exactly.
template <typename Scalar>
ScalarField<Scalar> evolve_efficiency(const ScalarField<Scalar>& efficiency,
                                      const ScalarField<Scalar>& omega, Scalar beta1,
                                      Scalar beta2, Scalar days = Scalar(1)) {
  efficiency.require_same(omega);
  if (efficiency.size() > 0 && (efficiency.min() < Scalar(0) || efficiency.max() > Scalar(1))) {
    throw ValidationError("efficiency must lie in [0, 1]");
  }
  ScalarField<Scalar> out = efficiency;
  for (Index k = 0; k < out.size(); ++k) {
    out[k] = logistic_step(efficiency[k], (beta2 - beta1) * omega[k], days);
  }
  return out;
}

}  // namespace terrasim
