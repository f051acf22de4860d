#pragma once

#include "asprt/common.hpp"

#include <string>

namespace asprt {

enum class ScenarioKind { sampling, superheterodyne, homodyne_array };

const char* to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

// Parameterized builder for the analog front-end covariance R_y(theta).
// theta is the linear-scale SNR of the source seen by the receiver.
struct CovarianceScenario {
  ScenarioKind kind = ScenarioKind::sampling;
  int K0 = 1;          // samples per block at the source bandwidth rate
  double kappa = 1.0;  // temporal oversampling: receiver bandwidth / source bandwidth
  int M_A = 1;         // antennas (homodyne array only)
  double phi_deg = 0.0;  // arrival angle in degrees (homodyne array only)
  double scale = 1.0;  // uniform gain on R_y; one-bit statistics are invariant to it

  // Observation time is held fixed across kappa sweeps: K = round(kappa * K0).
  int K() const;
  int M() const { return kind == ScenarioKind::homodyne_array ? 2 * M_A : 1; }
  int dim() const { return M() * K(); }
  void validate() const;
};

// Source covariance of a band-limited process: [S]_ij = sinc(|i-j| / kappa),
// with the normalized sinc(x) = sin(pi x) / (pi x).
Mat sinc_covariance(int K, double kappa);

// Intermediate-frequency mixing pattern [W]_ij = cos(pi/2 * (i - j)); entries
// are exactly -1, 0, or +1.
Mat mixing_matrix(int K);

// Half-wavelength ULA steering for the in-phase/quadrature stack: 2*M_A x 2,
// rows [cos psi_m, sin psi_m] over [-sin psi_m, cos psi_m], psi_m =
// (m-1) * pi * sin(phi). Satisfies A^T A = M_A * I_2.
Mat steering_matrix(int M_A, double phi_deg);

struct SpaceTimeCovariance {
  Mat matrix;
  int M = 1;
  int K = 1;
};

// Direct sampling: R_y = (theta/kappa) * S(kappa) + I.
SpaceTimeCovariance sampling_covariance(double theta, int K, double kappa);

// Superheterodyne front-end: R_y = (theta/kappa) * (S(kappa) .* 2W) + I.
// Requires kappa >= 2 (the intermediate frequency must clear the band).
SpaceTimeCovariance superheterodyne_covariance(double theta, int K, double kappa);

// Pattern-injection seam for structural tests.
SpaceTimeCovariance superheterodyne_covariance_with_pattern(double theta, int K,
                                                            double kappa,
                                                            const Mat& pattern);

// Homodyne array: R_y = (theta * A A^T + I) kron S(kappa), size MK x MK.
SpaceTimeCovariance homodyne_covariance(double theta, int M_A, int K,
                                        double kappa, double phi_deg);

SpaceTimeCovariance build_covariance(const CovarianceScenario& scenario, double theta);

// dR_y/dtheta; constant in theta for every scenario kind.
Mat covariance_derivative(const CovarianceScenario& scenario);

}  // namespace asprt
