#include "asprt/gaussian.hpp"

#include <cmath>

namespace asprt {

namespace {

Vec vectorize(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

}  // namespace

GaussianQuadraticModel::GaussianQuadraticModel(CovarianceScenario scenario)
    : scenario_(std::move(scenario)) {
  scenario_.validate();
  n_ = scenario_.dim();
  jacobian_ = vectorize(covariance_derivative(scenario_));
}

Vec GaussianQuadraticModel::statistic(const Vec& sample) const {
  if (sample.size() != n_)
    throw ValidationError("sample length does not match the scenario");
  return vectorize(Mat(sample * sample.transpose()));
}

Vec GaussianQuadraticModel::stat_mean(double theta) const {
  return vectorize(build_covariance(scenario_, theta).matrix);
}

Mat GaussianQuadraticModel::stat_covariance(double theta) const {
  const Mat r = build_covariance(scenario_, theta).matrix;
  return 2.0 * kron(r, r);
}

Vec GaussianQuadraticModel::stat_mean_jacobian(double) const {
  return jacobian_;
}

double gaussian_exact_llr(const Vec& y, const Mat& r0, const Mat& r1) {
  if (r0.rows() != r1.rows() || r0.cols() != r1.cols())
    throw ValidationError("covariance sizes differ");
  if (y.size() != r0.rows())
    throw ValidationError("sample length does not match the covariances");
  SpdSolver s0(r0), s1(r1);
  return 0.5 * (y.dot(s0.solve(y)) - y.dot(s1.solve(y))) +
         0.5 * (s0.log_det() - s1.log_det());
}

std::pair<double, double> gaussian_llr_means(const Mat& r0, const Mat& r1) {
  if (r0.rows() != r1.rows() || r0.cols() != r1.cols())
    throw ValidationError("covariance sizes differ");
  SpdSolver s0(r0), s1(r1);
  const double n = static_cast<double>(r0.rows());
  const double half_log_ratio = 0.5 * (s0.log_det() - s1.log_det());
  const double mu0 = half_log_ratio + 0.5 * (n - s1.solve(r0).trace());
  const double mu1 = half_log_ratio + 0.5 * (s0.solve(r1).trace() - n);
  return {mu0, mu1};
}

ApproxErrors approximation_errors(const GaussianQuadraticModel& model,
                                  const HypothesisPair& pair, double xi) {
  const Mat r0 = build_covariance(model.scenario(), pair.theta0).matrix;
  const Mat r1 = build_covariance(model.scenario(), pair.theta1).matrix;
  const auto [mu0, mu1] = gaussian_llr_means(r0, r1);
  if (mu0 == 0.0 || mu1 == 0.0)
    throw DegenerateDesignError("exact LLR means vanish; relative errors undefined");

  const AllrMoments m = allr_moments(model, pair, xi, HyperplaneMode::difference);
  const double delta = pair.theta1 - pair.theta0;
  const double d01_hat =
      0.5 * delta * delta * fisher_information(model, pair.theta0);
  const double d10_hat =
      0.5 * delta * delta * fisher_information(model, pair.theta1);

  ApproxErrors e;
  e.eps0_tilde = (std::abs(m.mu_tilde_0) - std::abs(mu0)) / std::abs(mu0);
  e.eps1_tilde = (std::abs(m.mu_tilde_1) - std::abs(mu1)) / std::abs(mu1);
  e.eps0_hat = (d01_hat - std::abs(mu0)) / std::abs(mu0);
  e.eps1_hat = (d10_hat - std::abs(mu1)) / std::abs(mu1);
  return e;
}

}  // namespace asprt
