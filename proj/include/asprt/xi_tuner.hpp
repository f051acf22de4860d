#pragma once

#include "asprt/expfam.hpp"

namespace asprt {

struct TunerConfig {
  double rho = 2.0 / 3.0;  // drift exponent
  int grid_points = 101;   // uniform first pass on [0, 1]
  double refine_tol = 1e-4;
  void validate() const;
};

// nu(xi) = |mu_tilde_1| sigma_tilde_0^rho / (|mu_tilde_0| sigma_tilde_1^rho),
// the ratio of standardized drifts under the two hypotheses.
double drift_ratio(const StatisticModel& model, const HypothesisPair& pair,
                   double xi, double rho,
                   HyperplaneMode mode = HyperplaneMode::difference);

// argmin over [0, 1] of (nu(xi) - 1)^2: grid pass, then golden-section
// refinement of the bracketing interval. Deterministic for a fixed config.
double tune_xi(const StatisticModel& model, const HypothesisPair& pair,
               const TunerConfig& config = {},
               HyperplaneMode mode = HyperplaneMode::difference);

}  // namespace asprt
