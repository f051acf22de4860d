#pragma once

#include <functional>
#include <map>

#include "asprt/common.hpp"

namespace asprt {

// Sufficient-statistic view of an observation model with a scalar parameter
// theta (linear-scale SNR in all shipped models).
class StatisticModel {
 public:
  virtual ~StatisticModel() = default;

  virtual int sample_dim() const = 0;
  virtual int stat_dim() const = 0;

  virtual Vec statistic(const Vec& sample) const = 0;
  virtual Vec stat_mean(double theta) const = 0;
  virtual Mat stat_covariance(double theta) const = 0;

  // d(stat_mean)/d(theta); the default falls back to central differences.
  virtual Vec stat_mean_jacobian(double theta) const;
};

struct HypothesisPair {
  double theta0 = 0.0;  // linear scale
  double theta1 = 0.0;

  // theta0 != theta1 is an interface-level invariant; the operations below
  // tolerate equal endpoints and degrade to all-zero outputs.
  void validate() const;
};

// theta_tilde(xi) = xi*theta0 + (1-xi)*theta1.
// Orientation: xi = 1 selects theta0 and xi = 0 selects theta1, the reverse
// of the usual convex-combination reading.
double linearization_point(const HypothesisPair& pair, double xi);

enum class HyperplaneMode {
  difference,  // covariance(t)^-1 (mean(theta1) - mean(theta0))
  derivative,  // covariance(t)^-1 jacobian(t) (theta1 - theta0)
};

Vec llr_hyperplane(const StatisticModel& model, const HypothesisPair& pair,
                   double xi, HyperplaneMode mode);

struct AllrMoments {
  double mu_tilde_0 = 0.0;
  double mu_tilde_1 = 0.0;
  double sigma2_tilde_0 = 0.0;
  double sigma2_tilde_1 = 0.0;
};

AllrMoments allr_moments(const StatisticModel& model, const HypothesisPair& pair,
                         double xi, HyperplaneMode mode);
// Same moments for a caller-supplied hyperplane vector.
AllrMoments allr_moments(const StatisticModel& model, const HypothesisPair& pair,
                         double xi, const Vec& b);

// Frozen affine test design: increment = b . (stat - mu_ref).
struct AllrPlan {
  Vec b;
  Vec mu_ref;  // stat mean at the linearization point
  double xi = 0.5;
  double mu_tilde_0 = 0.0;
  double mu_tilde_1 = 0.0;
  double sigma2_tilde_0 = 0.0;
  double sigma2_tilde_1 = 0.0;
};

AllrPlan make_allr_plan(const StatisticModel& model, const HypothesisPair& pair,
                        double xi,
                        HyperplaneMode mode = HyperplaneMode::difference);

double allr_evaluate(const AllrPlan& plan, const Vec& stat);

// jacobian(theta)^T covariance(theta)^-1 jacobian(theta), scalar parameter.
double fisher_information(const StatisticModel& model, double theta);

struct KlPair {
  double d01 = 0.0;  // estimate of E_theta0[log p_theta0/p_theta1]
  double d10 = 0.0;  // estimate of E_theta1[log p_theta1/p_theta0]
};

// Signed values on purpose: negatives diagnose a bad linearization point.
struct KlEstimates {
  KlPair difference;  // (-mu_tilde_0, mu_tilde_1), difference hyperplane
  KlPair derivative;  // same with the derivative hyperplane
  KlPair fisher;      // local expansion at theta_tilde(xi)
  KlPair literature;  // half quadratic forms at the endpoints
};

KlEstimates kl_estimates(const StatisticModel& model, const HypothesisPair& pair,
                         double xi);

double finite_difference_step(double at);

// Central-difference derivative of f at xi*u0 + (1-xi)*u1.
Vec finite_difference_jacobian(const std::function<Vec(double)>& f, double u0,
                               double u1, double xi);

namespace detail {

// Caches the xi-independent endpoint statistics so a tuner can sweep xi
// paying only for the covariance at each new linearization point.
class MomentWorkspace {
 public:
  MomentWorkspace(const StatisticModel& model, const HypothesisPair& pair);

  const AllrMoments& moments(double xi, HyperplaneMode mode);
  const HypothesisPair& pair() const { return pair_; }

 private:
  const StatisticModel& model_;
  HypothesisPair pair_;
  Vec mean0_, mean1_;
  Mat cov0_, cov1_;
  std::map<std::pair<double, int>, AllrMoments> cache_;
};

}  // namespace detail
}  // namespace asprt
