#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "terrasim/error.hpp"
#include "terrasim/field.hpp"
#include "terrasim/grid.hpp"
#include "terrasim/params.hpp"
#include "terrasim/stability.hpp"

namespace terrasim {

/**
 * Discrete Laplacian with prescribed Neumann inflow, scaled by nu:
 *   nu * [ sum_{interior nb} (W_nb - W_k) / h^2 + faces_k * flux / h ].
 *
 * Interior face fluxes are antisymmetric between the two cells sharing the
 * face, so the only net mass source is the boundary inflow.
 */
template <typename Scalar>
ScalarField<Scalar> neumann_laplacian(const DiskGrid<Scalar>& grid, const ScalarField<Scalar>& w,
                                      Scalar nu, Scalar flux) {
  require_on(grid, w);
  const Scalar h = grid.h();
  const Scalar inv_h2 = Scalar(1) / (h * h);
  const Scalar face_inflow = flux / h;
  ScalarField<Scalar> out(grid);
  for (Index k = 0; k < grid.size(); ++k) {
    const auto& nb = grid.neighbors(k);
    int exposed = 0;
    auto face = [&](Index n) {
      if (n == DiskGrid<Scalar>::kNoNeighbor) {
        ++exposed;
        return Scalar(0);
      }
      return w[n] - w[k];
    };
    // (east + west) + (north + south): the grouping is invariant under the
    // lattice reflections, so symmetric data stays bitwise symmetric.
    const Scalar x_pair = face(nb[DiskGrid<Scalar>::kEast]) + face(nb[DiskGrid<Scalar>::kWest]);
    const Scalar y_pair = face(nb[DiskGrid<Scalar>::kNorth]) + face(nb[DiskGrid<Scalar>::kSouth]);
    out[k] = nu * ((x_pair + y_pair) * inv_h2 + Scalar(exposed) * face_inflow);
  }
  return out;
}

/// Explicit step of dW/dt - nu Lap W = beta3 omega - kappa phi with
/// dW/dmu = flux_w on the staircase boundary.
template <typename Scalar>
ScalarField<Scalar> diffusion_substep(const ScalarField<Scalar>& w, const ScalarField<Scalar>& omega,
                                      Scalar phi, const ModelParams<Scalar>& params,
                                      const DiskGrid<Scalar>& grid, Scalar dt) {
  require_on(grid, w);
  require_on(grid, omega);
  const Scalar h = grid.h();
  if (params.nu * dt / (h * h) > Scalar(kMaxDiffusionNumber)) {
    throw StabilityError("wealth diffusion step violates nu*dt/h^2 <= 0.25");
  }
  const ScalarField<Scalar> lap = neumann_laplacian(grid, w, params.nu, params.flux_w);
  const Scalar sink = params.kappa * phi;
  return ScalarField<Scalar>(
      w.key(),
      w.values() + dt * ((lap.values() + params.beta3 * omega.values()).array() - sink).matrix());
}

/// Mass added in one substep by the volume sources and by the boundary.
template <typename Scalar>
struct WealthIncrement {
  Scalar injected{0};  ///< dt * int (beta3 omega - kappa phi)
  Scalar inflow{0};    ///< dt * nu * flux_w * boundary length
};

template <typename Scalar>
WealthIncrement<Scalar> substep_increment(const DiskGrid<Scalar>& grid,
                                          const ScalarField<Scalar>& omega, Scalar phi,
                                          const ModelParams<Scalar>& params, Scalar dt) {
  return {dt * (params.beta3 * integrate(grid, omega) - params.kappa * phi * grid.total_area()),
          dt * params.nu * params.flux_w * grid.boundary_length()};
}

/// Mass change not explained by the ledger.
template <typename Scalar>
Scalar wealth_budget(const DiskGrid<Scalar>& grid, const ScalarField<Scalar>& before,
                     const ScalarField<Scalar>& after, Scalar injected, Scalar inflow) {
  return integrate(grid, after) - integrate(grid, before) - injected - inflow;
}

/// Budget contract: |residual| <= 1e-10 * max(1, int W_after).
template <typename Scalar>
bool budget_within_tolerance(Scalar residual, Scalar mass_after) {
  return std::abs(residual) <= Scalar(1e-10) * std::max(Scalar(1), std::abs(mass_after));
}

/// W together with a running ledger of everything injected since the start.
template <typename Scalar>
class WealthState {
 public:
  WealthState(const DiskGrid<Scalar>& grid, ScalarField<Scalar> w)
      : w_(std::move(w)), initial_mass_(integrate(grid, w_)) {}

  const ScalarField<Scalar>& field() const { return w_; }
  Scalar initial_mass() const { return initial_mass_; }
  Scalar injected() const { return injected_; }
  Scalar inflow() const { return inflow_; }

  /// Advances `substeps` explicit steps of size dt with constant sources.
  void advance(const DiskGrid<Scalar>& grid, const ScalarField<Scalar>& omega, Scalar phi,
               const ModelParams<Scalar>& params, Scalar dt, int substeps) {
    const WealthIncrement<Scalar> inc = substep_increment(grid, omega, phi, params, dt);
    for (int s = 0; s < substeps; ++s) {
      w_ = diffusion_substep(w_, omega, phi, params, grid, dt);
      injected_ += inc.injected;
      inflow_ += inc.inflow;
    }
  }

  /// Residual of the cumulative budget since construction.
  Scalar residual(const DiskGrid<Scalar>& grid) const {
    return integrate(grid, w_) - initial_mass_ - injected_ - inflow_;
  }

 private:
  ScalarField<Scalar> w_;
  Scalar initial_mass_;
  Scalar injected_{0};
  Scalar inflow_{0};
};

}  // namespace terrasim
