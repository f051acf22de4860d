#pragma once

#include <utility>

#include "asprt/expfam.hpp"
#include "asprt/scenario.hpp"

namespace asprt {

// Unquantized front-end model: statistic vec(y y^T), mean vec(R_y(theta)),
// covariance 2 (R_y kron R_y). The mean is affine in theta, so the jacobian
// is a theta-independent constant.
class GaussianQuadraticModel : public StatisticModel {
 public:
  explicit GaussianQuadraticModel(CovarianceScenario scenario);

  int sample_dim() const override { return n_; }
  int stat_dim() const override { return n_ * n_; }

  Vec statistic(const Vec& sample) const override;
  Vec stat_mean(double theta) const override;
  Mat stat_covariance(double theta) const override;
  Vec stat_mean_jacobian(double theta) const override;

  const CovarianceScenario& scenario() const { return scenario_; }

 private:
  CovarianceScenario scenario_;
  int n_ = 0;
  Vec jacobian_;
};

// 0.5 y^T (R0^-1 - R1^-1) y + 0.5 log(det R0 / det R1)
double gaussian_exact_llr(const Vec& y, const Mat& r0, const Mat& r1);

// Expected exact LLR per block under each hypothesis: (mu_0, mu_1) with
// mu_0 <= 0 <= mu_1, equality only at r0 == r1.
std::pair<double, double> gaussian_llr_means(const Mat& r0, const Mat& r1);

struct ApproxErrors {
  double eps0_tilde = 0.0;  // (|mu_tilde_i| - |mu_i|) / |mu_i|
  double eps1_tilde = 0.0;
  double eps0_hat = 0.0;    // endpoint-Fisher divergence vs |mu_i|
  double eps1_hat = 0.0;
};

ApproxErrors approximation_errors(const GaussianQuadraticModel& model,
                                  const HypothesisPair& pair, double xi);

}  // namespace asprt
