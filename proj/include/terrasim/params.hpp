#pragma once

#include <cmath>
#include <string>

#include "terrasim/error.hpp"

namespace terrasim {

/// Model coefficients. Defaults form the reference scenario.
template <typename Scalar = double>
struct ModelParams {
  Scalar alpha{5};      ///< job-station weight in the employment attractor, > 1
  Scalar beta0{0.01};   ///< wealth production rate, small in front of 1
  Scalar beta1{0.3};    ///< share of wealth spent on job-station growth
  Scalar beta2{0.4};    ///< share spent on efficiency improvement
  Scalar beta3{0.3};    ///< share diffusing to people
  Scalar nu{0.1};       ///< wealth diffusion coefficient
  Scalar kappa{0.05};   ///< wealth consumed per unit energy
  Scalar flux_w{0.01};  ///< Neumann inflow of wealth through the border

  void validate() const {
    auto finite = [](Scalar v) { return std::isfinite(static_cast<double>(v)); };
    if (!finite(alpha) || !(alpha > Scalar(1))) throw ValidationError("alpha must be > 1");
    if (!finite(beta0) || !(beta0 >= Scalar(0)) || !(beta0 < Scalar(1))) {
      throw ValidationError("beta0 must lie in [0, 1)");
    }
    if (!(beta1 > Scalar(0)) || !(beta2 > Scalar(0)) || !(beta3 > Scalar(0))) {
      throw ValidationError("beta1, beta2, beta3 must be > 0");
    }
    if (!(std::abs(static_cast<double>(beta1 + beta2 + beta3) - 1.0) <= 1e-12)) {
      throw ValidationError("beta1+beta2+beta3 must equal 1");
    }
    if (!finite(nu) || !(nu > Scalar(0))) throw ValidationError("nu must be > 0");
    if (!finite(kappa) || !(kappa >= Scalar(0))) throw ValidationError("kappa must be >= 0");
    if (!finite(flux_w) || !(flux_w >= Scalar(0))) throw ValidationError("flux_w must be >= 0");
  }
};

/// Rectangular morning/evening commute pulses, periodic with period 1.
/// Windows are half-open [start, end) within [0, 1); an empty window
/// (start == end) never fires.
template <typename Scalar = double>
struct CommuteSchedule {
  Scalar morning_start{0};
  Scalar morning_end{0.2};
  Scalar evening_start{0.5};
  Scalar evening_end{0.7};
  Scalar lambda_m{25};
  Scalar lambda_e{25};

  void validate() const {
    auto window_ok = [](Scalar a, Scalar b) {
      return a >= Scalar(0) && b <= Scalar(1) && a <= b;
    };
    if (!window_ok(morning_start, morning_end)) {
      throw ValidationError("morning window must satisfy 0 <= start <= end <= 1");
    }
    if (!window_ok(evening_start, evening_end)) {
      throw ValidationError("evening window must satisfy 0 <= start <= end <= 1");
    }
    const bool morning_empty = morning_start == morning_end;
    const bool evening_empty = evening_start == evening_end;
    if (!morning_empty && !evening_empty && morning_start < evening_end &&
        evening_start < morning_end) {
      throw ValidationError("morning and evening windows must be disjoint");
    }
    if (!(lambda_m > Scalar(0)) || !(lambda_e > Scalar(0))) {
      throw ValidationError("pulse amplitudes lambda_m, lambda_e must be > 0");
    }
  }
};

using Params = ModelParams<double>;
using Schedule = CommuteSchedule<double>;

}  // namespace terrasim
