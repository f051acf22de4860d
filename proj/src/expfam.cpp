#include "asprt/expfam.hpp"

#include <cmath>
#include <utility>

namespace asprt {

Vec StatisticModel::stat_mean_jacobian(double theta) const {
  return finite_difference_jacobian(
      [this](double t) { return stat_mean(t); }, theta, theta, 0.5);
}

void HypothesisPair::validate() const {
  if (!std::isfinite(theta0) || !std::isfinite(theta1))
    throw ValidationError("hypothesis parameters must be finite");
  if (theta0 < 0.0 || theta1 < 0.0)
    throw ValidationError("linear-scale SNR must be >= 0");
  if (theta0 == theta1)
    throw ValidationError("hypotheses must differ (theta0 == theta1)");
}

double linearization_point(const HypothesisPair& pair, double xi) {
  if (!(xi >= 0.0 && xi <= 1.0))
    throw ValidationError("linearization coefficient must lie in [0, 1]");
  return xi * pair.theta0 + (1.0 - xi) * pair.theta1;
}

Vec llr_hyperplane(const StatisticModel& model, const HypothesisPair& pair,
                   double xi, HyperplaneMode mode) {
  const double theta_t = linearization_point(pair, xi);
  SpdSolver cov(model.stat_covariance(theta_t));
  if (mode == HyperplaneMode::difference) {
    Vec diff = model.stat_mean(pair.theta1) - model.stat_mean(pair.theta0);
    return cov.solve(diff);
  }
  Vec scaled = model.stat_mean_jacobian(theta_t) * (pair.theta1 - pair.theta0);
  return cov.solve(scaled);
}

AllrMoments allr_moments(const StatisticModel& model, const HypothesisPair& pair,
                         double xi, const Vec& b) {
  const Vec mu_t = model.stat_mean(linearization_point(pair, xi));
  AllrMoments m;
  m.mu_tilde_0 = b.dot(model.stat_mean(pair.theta0) - mu_t);
  m.mu_tilde_1 = b.dot(model.stat_mean(pair.theta1) - mu_t);
  m.sigma2_tilde_0 = b.dot(model.stat_covariance(pair.theta0) * b);
  m.sigma2_tilde_1 = b.dot(model.stat_covariance(pair.theta1) * b);
  return m;
}

AllrMoments allr_moments(const StatisticModel& model, const HypothesisPair& pair,
                         double xi, HyperplaneMode mode) {
  return allr_moments(model, pair, xi, llr_hyperplane(model, pair, xi, mode));
}

AllrPlan make_allr_plan(const StatisticModel& model, const HypothesisPair& pair,
                        double xi, HyperplaneMode mode) {
  AllrPlan plan;
  plan.xi = xi;
  plan.b = llr_hyperplane(model, pair, xi, mode);
  plan.mu_ref = model.stat_mean(linearization_point(pair, xi));
  const AllrMoments m = allr_moments(model, pair, xi, plan.b);
  plan.mu_tilde_0 = m.mu_tilde_0;
  plan.mu_tilde_1 = m.mu_tilde_1;
  plan.sigma2_tilde_0 = m.sigma2_tilde_0;
  plan.sigma2_tilde_1 = m.sigma2_tilde_1;
  return plan;
}

double allr_evaluate(const AllrPlan& plan, const Vec& stat) {
  if (stat.size() != plan.b.size())
    throw ValidationError("statistic length does not match the test design");
  return plan.b.dot(stat - plan.mu_ref);
}

double fisher_information(const StatisticModel& model, double theta) {
  const Vec j = model.stat_mean_jacobian(theta);
  SpdSolver cov(model.stat_covariance(theta));
  return j.dot(cov.solve(j));
}

KlEstimates kl_estimates(const StatisticModel& model, const HypothesisPair& pair,
                         double xi) {
  KlEstimates out;
  {
    const AllrMoments m = allr_moments(model, pair, xi, HyperplaneMode::difference);
    out.difference = {-m.mu_tilde_0, m.mu_tilde_1};
  }
  {
    const AllrMoments m = allr_moments(model, pair, xi, HyperplaneMode::derivative);
    out.derivative = {-m.mu_tilde_0, m.mu_tilde_1};
  }
  const double delta = pair.theta1 - pair.theta0;
  const double d2 = delta * delta;
  if (d2 == 0.0) {
    out.fisher = {0.0, 0.0};
    out.literature = {0.0, 0.0};
    return out;
  }
  const double f_t =
      fisher_information(model, linearization_point(pair, xi));
  out.fisher = {(1.0 - xi) * d2 * f_t, xi * d2 * f_t};
  out.literature = {0.5 * d2 * fisher_information(model, pair.theta0),
                    0.5 * d2 * fisher_information(model, pair.theta1)};
  return out;
}

double finite_difference_step(double at) {
  return std::max(1e-6, 1e-6 * std::abs(at));
}

Vec finite_difference_jacobian(const std::function<Vec(double)>& f, double u0,
                               double u1, double xi) {
  const double at = xi * u0 + (1.0 - xi) * u1;
  const double h = finite_difference_step(at);
  const Vec hi = f(at + h);
  const Vec lo = f(at - h);
  if (!hi.allFinite() || !lo.allFinite())
    throw ValidationError("non-finite values near the differencing point");
  return (hi - lo) / (2.0 * h);
}

namespace detail {

MomentWorkspace::MomentWorkspace(const StatisticModel& model,
                                 const HypothesisPair& pair)
    : model_(model),
      pair_(pair),
      mean0_(model.stat_mean(pair.theta0)),
      mean1_(model.stat_mean(pair.theta1)),
      cov0_(model.stat_covariance(pair.theta0)),
      cov1_(model.stat_covariance(pair.theta1)) {}

const AllrMoments& MomentWorkspace::moments(double xi, HyperplaneMode mode) {
  const auto key = std::make_pair(xi, static_cast<int>(mode));
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  const double theta_t = linearization_point(pair_, xi);
  SpdSolver cov(model_.stat_covariance(theta_t));
  Vec b;
  if (mode == HyperplaneMode::difference) {
    Vec diff = mean1_ - mean0_;
    b = cov.solve(diff);
  } else {
    Vec scaled =
        model_.stat_mean_jacobian(theta_t) * (pair_.theta1 - pair_.theta0);
    b = cov.solve(scaled);
  }
  const Vec mu_t = model_.stat_mean(theta_t);
  AllrMoments m;
  m.mu_tilde_0 = b.dot(mean0_ - mu_t);
  m.mu_tilde_1 = b.dot(mean1_ - mu_t);
  m.sigma2_tilde_0 = b.dot(cov0_ * b);
  m.sigma2_tilde_1 = b.dot(cov1_ * b);
  return cache_.emplace(key, m).first->second;
}

}  // namespace detail
}  // namespace asprt
