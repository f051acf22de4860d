#pragma once

#include <array>
#include <utility>
#include <vector>

#include "asprt/expfam.hpp"
#include "asprt/scenario.hpp"

namespace asprt {

// Elementwise one-bit quantizer; the boundary maps up (0 -> +1).
Vec hard_limit(const Vec& y);

// Products z_i z_j for i < j in lexicographic order, length n(n-1)/2.
Vec pair_statistics(const Vec& z);

// P(all components >= 0) for a zero-mean Gaussian with correlation matrix r.
// Dimensions 2 and 3 use the arcsine closed forms; dimension 4 integrates a
// correlation path anchored at the trivariate form.
double orthant_probability(const Mat& r);

// E[z_i z_j z_k z_l] for the hard-limited zero-mean Gaussian with covariance
// r_y. Repeated indices cancel in pairs; four distinct survivors are handled
// through quadrivariate orthant probabilities.
double sign_product_moment(const Mat& r_y, int i, int j, int k, int l);

// Mean of pair_statistics under N(0, r_y): entries (2/pi) asin(rho_ij).
Vec binary_pair_means(const Mat& r_y);

// Covariance of pair_statistics under N(0, r_y). threads = 0 picks the
// hardware concurrency. The result is identical for any thread count.
Mat binary_pair_covariance(const Mat& r_y, int threads = 0);

// One-bit front-end model over the scenario's pairwise sign products.
class BinaryPairwiseModel : public StatisticModel {
 public:
  explicit BinaryPairwiseModel(CovarianceScenario scenario, int threads = 0);

  int sample_dim() const override { return n_; }
  int stat_dim() const override { return n_ * (n_ - 1) / 2; }

  Vec statistic(const Vec& sample) const override;
  Vec stat_mean(double theta) const override;
  Mat stat_covariance(double theta) const override;

  const CovarianceScenario& scenario() const { return scenario_; }
  const std::vector<std::pair<int, int>>& pair_index() const { return pairs_; }
  int threads() const { return threads_; }

 private:
  CovarianceScenario scenario_;
  int n_ = 0;
  int threads_ = 0;
  std::vector<std::pair<int, int>> pairs_;
};

std::pair<Vec, Mat> binary_suffstat_moments(const BinaryPairwiseModel& model,
                                            double theta);

}  // namespace asprt
