#include <doctest.h>

#include <cmath>
#include <random>

#include "asprt/gaussian.hpp"

using namespace asprt;

namespace {

CovarianceScenario scalar_scenario() {
  CovarianceScenario sc;
  sc.kind = ScenarioKind::sampling;
  sc.K0 = 1;
  sc.kappa = 1.0;
  return sc;
}

CovarianceScenario sampling_scenario(int k0, double kappa) {
  CovarianceScenario sc;
  sc.kind = ScenarioKind::sampling;
  sc.K0 = k0;
  sc.kappa = kappa;
  return sc;
}

Mat scalar_mat(double v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}

}  // namespace

TEST_SUITE("gaussian") {

TEST_CASE("exact LLR of a variance pair at the origin") {
  Vec y(1);
  y << 0.0;
  CHECK(gaussian_exact_llr(y, scalar_mat(1.0), scalar_mat(2.0)) ==
        doctest::Approx(-0.34657).epsilon(1e-4));
  // Quadratic statistic: even in the observation.
  Vec y2(1);
  y2 << 1.3;
  CHECK(gaussian_exact_llr(y2, scalar_mat(1.0), scalar_mat(2.0)) ==
        doctest::Approx(gaussian_exact_llr(-y2, scalar_mat(1.0),
                                           scalar_mat(2.0))));
  Vec wrong(2);
  wrong.setZero();
  CHECK_THROWS_AS(gaussian_exact_llr(wrong, scalar_mat(1.0), scalar_mat(2.0)),
                  ValidationError);
}

TEST_CASE("exact LLR means of a variance pair") {
  const auto [mu0, mu1] = gaussian_llr_means(scalar_mat(1.0), scalar_mat(2.0));
  CHECK(mu0 == doctest::Approx(-0.09657).epsilon(1e-4));
  CHECK(mu1 == doctest::Approx(0.15343).epsilon(1e-4));
  CHECK(mu0 < 0.0);
  CHECK(mu1 > 0.0);
}

TEST_CASE("model statistic is the vectorized outer product") {
  const GaussianQuadraticModel model(sampling_scenario(2, 1.0));
  Vec y(2);
  y << 1.0, 2.0;
  const Vec s = model.statistic(y);
  REQUIRE(s.size() == 4);
  CHECK(s(0) == 1.0);
  CHECK(s(1) == 2.0);  // column-major: (1,0) entry
  CHECK(s(2) == 2.0);
  CHECK(s(3) == 4.0);

  Vec wrong(3);
  wrong.setZero();
  CHECK_THROWS_AS(model.statistic(wrong), ValidationError);
}

TEST_CASE("model moments follow the covariance builder") {
  const auto sc = sampling_scenario(3, 2.0);
  const GaussianQuadraticModel model(sc);
  const double theta = 0.8;
  const Mat r = build_covariance(sc, theta).matrix;
  const int n = sc.dim();  // K = round(kappa * K0) = 6
  const Vec mean = model.stat_mean(theta);
  REQUIRE(mean.size() == n * n);
  for (int c = 0, idx = 0; c < n; ++c)
    for (int rw = 0; rw < n; ++rw, ++idx) CHECK(mean(idx) == r(rw, c));

  const Mat cov = model.stat_covariance(theta);
  const Mat expected = 2.0 * kron(r, r);
  CHECK((cov - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("analytic jacobian agrees with finite differences") {
  for (auto sc : {sampling_scenario(2, 2.0), sampling_scenario(4, 1.0)}) {
    const GaussianQuadraticModel model(sc);
    const double theta = 0.6;
    const Vec analytic = model.stat_mean_jacobian(theta);
    const Vec fd = finite_difference_jacobian(
        [&](double t) { return model.stat_mean(t); }, theta, theta, 0.5);
    CHECK((analytic - fd).cwiseAbs().maxCoeff() <
          1e-5 * std::max(1.0, analytic.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("scalar scenario reproduces the worked example end to end") {
  const GaussianQuadraticModel model(scalar_scenario());
  const HypothesisPair pair{0.0, 1.0};
  // Linear-drift estimate vs the exact per-block mean.
  const KlEstimates kl = kl_estimates(model, pair, 0.5);
  CHECK(kl.difference.d10 == doctest::Approx(0.11111).epsilon(1e-4));
  const auto [mu0, mu1] =
      gaussian_llr_means(build_covariance(model.scenario(), 0.0).matrix,
                         build_covariance(model.scenario(), 1.0).matrix);
  CHECK(mu1 == doctest::Approx(0.15343).epsilon(1e-4));
  CHECK(mu0 == doctest::Approx(-0.09657).epsilon(1e-4));

  const ApproxErrors err = approximation_errors(model, pair, 0.5);
  CHECK(err.eps0_tilde == doctest::Approx(0.150533).epsilon(1e-4));
  CHECK(err.eps1_tilde == doctest::Approx(-0.275802).epsilon(1e-4));
  CHECK(err.eps0_hat == doctest::Approx(1.588699).epsilon(1e-4));
  CHECK(err.eps1_hat == doctest::Approx(-0.592637).epsilon(1e-4));
}

TEST_CASE("drift estimate converges to the exact mean as the gap closes") {
  const GaussianQuadraticModel model(scalar_scenario());
  double prev_gap = std::numeric_limits<double>::infinity();
  for (double delta : {0.1, 0.01, 0.001}) {
    const HypothesisPair pair{1.0, 1.0 + delta};
    const double d10 = kl_estimates(model, pair, 0.5).difference.d10;
    const auto [mu0, mu1] =
        gaussian_llr_means(build_covariance(model.scenario(), pair.theta0).matrix,
                           build_covariance(model.scenario(), pair.theta1).matrix);
    const double gap = std::abs(d10 / mu1 - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-3);
}

TEST_CASE("narrower hypothesis gaps linearize better") {
  const auto sc = sampling_scenario(5, 2.0);
  const GaussianQuadraticModel model(sc);
  const double theta_bar = -9.0;
  const auto errs_at = [&](double delta_db) {
    const HypothesisPair pair{db_to_linear(theta_bar - delta_db),
                              db_to_linear(theta_bar + delta_db)};
    const ApproxErrors e = approximation_errors(model, pair, 0.5);
    return std::max(std::abs(e.eps0_tilde), std::abs(e.eps1_tilde));
  };
  CHECK(errs_at(0.15) < errs_at(1.5));
}

TEST_CASE("Monte Carlo mean of the exact LLR matches the analytic value") {
  const auto sc = sampling_scenario(3, 1.5);
  const Mat r0 = build_covariance(sc, 0.2).matrix;
  const Mat r1 = build_covariance(sc, 0.7).matrix;
  const auto [mu0, mu1] = gaussian_llr_means(r0, r1);

  const Eigen::LLT<Mat> llt(r1);
  REQUIRE(llt.info() == Eigen::Success);
  const Mat chol_l = llt.matrixL();
  std::mt19937_64 rng(20260819);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const int n = static_cast<int>(r1.rows());
  const int trials = 200000;
  double sum = 0.0, sum_sq = 0.0;
  Vec g(n);
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < n; ++i) g(i) = gauss(rng);
    const double val = gaussian_exact_llr(chol_l * g, r0, r1);
    sum += val;
    sum_sq += val * val;
  }
  const double mean = sum / trials;
  const double var = (sum_sq - sum * sum / trials) / (trials - 1);
  const double se = std::sqrt(var / trials);
  CHECK(std::abs(mean - mu1) < 4.0 * se);
}

}  // TEST_SUITE
