#include "asprt/scenario.hpp"

#include <cmath>

namespace asprt {

namespace {

constexpr double kPi = 3.14159265358979323846;

double normalized_sinc(double x) {
  if (x == 0.0) return 1.0;
  // Exact zeros at the remaining integers; sin(pi*k) would leave ~1e-16
  // residue and degenerate designs rely on these entries vanishing.
  if (x == std::floor(x)) return 0.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

}  // namespace

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::sampling: return "sampling";
    case ScenarioKind::superheterodyne: return "superheterodyne";
    case ScenarioKind::homodyne_array: return "homodyne_array";
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
  if (name == "sampling") return ScenarioKind::sampling;
  if (name == "superheterodyne") return ScenarioKind::superheterodyne;
  if (name == "homodyne_array") return ScenarioKind::homodyne_array;
  throw ConfigError("unknown scenario kind '" + name + "'");
}

int CovarianceScenario::K() const {
  return static_cast<int>(std::lround(kappa * K0));
}

void CovarianceScenario::validate() const {
  if (K0 < 1) throw ScenarioError("K0 must be a positive integer");
  if (!(kappa >= 1.0)) throw ScenarioError("kappa must be >= 1");
  if (kind == ScenarioKind::superheterodyne && !(kappa >= 2.0))
    throw ScenarioError("superheterodyne front-end requires kappa >= 2");
  if (kind == ScenarioKind::homodyne_array) {
    if (M_A < 1) throw ScenarioError("homodyne array needs M_A >= 1");
    if (!(phi_deg > -90.0 && phi_deg < 90.0))
      throw ScenarioError("arrival angle must lie in (-90, 90) degrees");
  }
  if (!(scale > 0.0)) throw ScenarioError("covariance scale must be positive");
  if (K() < 1) throw ScenarioError("kappa * K0 rounds to zero samples");
}

Mat sinc_covariance(int K, double kappa) {
  if (K < 1) throw ScenarioError("sinc covariance needs K >= 1");
  if (!(kappa >= 1.0)) throw ScenarioError("kappa must be >= 1");
  Mat s(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) s(i, j) = normalized_sinc(std::abs(i - j) / kappa);
  return s;
}

Mat mixing_matrix(int K) {
  if (K < 1) throw ScenarioError("mixing matrix needs K >= 1");
  // cos(pi/2 * d) cycles through 1, 0, -1, 0; keep the entries exact.
  constexpr double cycle[4] = {1.0, 0.0, -1.0, 0.0};
  Mat w(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) w(i, j) = cycle[((i - j) % 4 + 4) % 4];
  return w;
}

Mat steering_matrix(int M_A, double phi_deg) {
  if (M_A < 1) throw ScenarioError("steering matrix needs M_A >= 1");
  const double phi = phi_deg * kPi / 180.0;
  Mat a(2 * M_A, 2);
  for (int m = 0; m < M_A; ++m) {
    const double psi = m * kPi * std::sin(phi);
    a(m, 0) = std::cos(psi);
    a(m, 1) = std::sin(psi);
    a(M_A + m, 0) = -std::sin(psi);
    a(M_A + m, 1) = std::cos(psi);
  }
  return a;
}

SpaceTimeCovariance sampling_covariance(double theta, int K, double kappa) {
  if (!(theta >= 0.0)) throw ScenarioError("theta must be >= 0 (linear scale)");
  Mat r = (theta / kappa) * sinc_covariance(K, kappa);
  r.diagonal().array() += 1.0;
  return {std::move(r), 1, K};
}

SpaceTimeCovariance superheterodyne_covariance_with_pattern(double theta, int K,
                                                            double kappa,
                                                            const Mat& pattern) {
  if (!(theta >= 0.0)) throw ScenarioError("theta must be >= 0 (linear scale)");
  Mat r = (theta / kappa) *
          sinc_covariance(K, kappa).cwiseProduct(2.0 * pattern);
  r.diagonal().array() += 1.0;
  return {std::move(r), 1, K};
}

SpaceTimeCovariance superheterodyne_covariance(double theta, int K, double kappa) {
  if (!(kappa >= 2.0))
    throw ScenarioError("superheterodyne front-end requires kappa >= 2");
  return superheterodyne_covariance_with_pattern(theta, K, kappa, mixing_matrix(K));
}

SpaceTimeCovariance homodyne_covariance(double theta, int M_A, int K,
                                        double kappa, double phi_deg) {
  if (!(theta >= 0.0)) throw ScenarioError("theta must be >= 0 (linear scale)");
  const Mat a = steering_matrix(M_A, phi_deg);
  Mat spatial = theta * (a * a.transpose());
  spatial.diagonal().array() += 1.0;
  return {kron(spatial, sinc_covariance(K, kappa)), 2 * M_A, K};
}

SpaceTimeCovariance build_covariance(const CovarianceScenario& scenario, double theta) {
  scenario.validate();
  SpaceTimeCovariance cov;
  switch (scenario.kind) {
    case ScenarioKind::sampling:
      cov = sampling_covariance(theta, scenario.K(), scenario.kappa);
      break;
    case ScenarioKind::superheterodyne:
      cov = superheterodyne_covariance(theta, scenario.K(), scenario.kappa);
      break;
    case ScenarioKind::homodyne_array:
      cov = homodyne_covariance(theta, scenario.M_A, scenario.K(), scenario.kappa,
                                scenario.phi_deg);
      break;
  }
  if (scenario.scale != 1.0) cov.matrix *= scenario.scale;
  return cov;
}

Mat covariance_derivative(const CovarianceScenario& scenario) {
  scenario.validate();
  Mat d;
  switch (scenario.kind) {
    case ScenarioKind::sampling:
      d = sinc_covariance(scenario.K(), scenario.kappa) / scenario.kappa;
      break;
    case ScenarioKind::superheterodyne:
      d = sinc_covariance(scenario.K(), scenario.kappa)
              .cwiseProduct(2.0 * mixing_matrix(scenario.K())) /
          scenario.kappa;
      break;
    case ScenarioKind::homodyne_array: {
      const Mat a = steering_matrix(scenario.M_A, scenario.phi_deg);
      d = kron(a * a.transpose(), sinc_covariance(scenario.K(), scenario.kappa));
      break;
    }
  }
  if (scenario.scale != 1.0) d *= scenario.scale;
  return d;
}

}  // namespace asprt
