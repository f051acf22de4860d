#include "asprt/sequential.hpp"

#include <cmath>

namespace asprt {

TestConfig wald_design(double alpha0, double alpha1) {
  if (!(alpha0 > 0.0 && alpha0 < 0.5) || !(alpha1 > 0.0 && alpha1 < 0.5))
    throw ValidationError("error-rate targets must lie in (0, 0.5)");
  TestConfig config;
  config.alpha0 = alpha0;
  config.alpha1 = alpha1;
  config.L0 = std::log(alpha1 / (1.0 - alpha0));
  config.L1 = std::log((1.0 - alpha1) / alpha0);
  config.N0 = (1.0 - alpha0) * config.L0 + alpha0 * config.L1;
  config.N1 = alpha1 * config.L0 + (1.0 - alpha1) * config.L1;
  return config;
}

std::pair<double, double> predict_asn(const TestConfig& config, double mu0,
                                      double mu1) {
  if (!(config.L0 < 0.0 && config.L1 > 0.0))
    throw ValidationError("test thresholds are not initialized");
  if (!(mu0 < 0.0 && mu1 > 0.0))
    throw DegenerateDesignError(
        "per-block means must straddle zero (mu0 < 0 < mu1)");
  return {config.N0 / mu0, config.N1 / mu1};
}

std::int64_t default_truncation(double predicted_asn) {
  if (!(predicted_asn > 0.0) || !std::isfinite(predicted_asn))
    throw ValidationError("predicted ASN must be a positive finite value");
  return std::llround(50.0 * std::max(predicted_asn, 100.0));
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::H0: return "H0";
    case Decision::H1: return "H1";
    case Decision::truncated: return "truncated";
  }
  return "?";
}

TrialOutcome sprt_run(const TestConfig& config,
                      const std::function<double(std::int64_t)>& next_increment) {
  if (!(config.L0 < 0.0 && config.L1 > 0.0))
    throw ValidationError("test thresholds are not initialized");
  if (config.max_samples < 1)
    throw ValidationError("max_samples must be set before running");
  double sum = 0.0;
  for (std::int64_t n = 1; n <= config.max_samples; ++n) {
    sum += next_increment(n - 1);
    if (sum >= config.L1) return {Decision::H1, n};
    if (sum <= config.L0) return {Decision::H0, n};
  }
  return {Decision::truncated, config.max_samples};
}

EfficiencyReport efficiency_metrics(
    std::pair<double, double> mu_tilde, std::pair<double, double> mu_exact,
    const CovarianceScenario& scenario, int bits,
    std::optional<int> bench_antennas,
    std::optional<std::pair<double, double>> mu_exact_bench,
    const TestConfig& test) {
  scenario.validate();
  if (bits < 1) throw ValidationError("bit depth must be >= 1");
  if (mu_exact.first == 0.0 || mu_exact.second == 0.0)
    throw DegenerateDesignError("ideal per-block means vanish");
  if (bench_antennas.has_value() != mu_exact_bench.has_value())
    throw ValidationError(
        "benchmark antennas and benchmark means must come together");
  if (bench_antennas && scenario.kind != ScenarioKind::homodyne_array)
    throw ValidationError("antenna benchmarks apply to the homodyne array only");

  EfficiencyReport report;
  report.chi0 = mu_tilde.first / mu_exact.first;
  report.chi1 = mu_tilde.second / mu_exact.second;
  if (bench_antennas) {
    if (mu_exact_bench->first == 0.0 || mu_exact_bench->second == 0.0)
      throw DegenerateDesignError("benchmark per-block means vanish");
    report.chi0_bench = mu_tilde.first / mu_exact_bench->first;
    report.chi1_bench = mu_tilde.second / mu_exact_bench->second;
  }

  const double levels = std::pow(2.0, bits) - 1.0;
  report.sc = static_cast<double>(scenario.dim()) * levels;
  // A bits-deep front end is priced at the ideal stopping time; the one-bit
  // system (bits = 1) runs on its own ALLR drifts.
  const auto asn = (bits == 1 && mu_tilde.first < 0.0 && mu_tilde.second > 0.0)
                       ? predict_asn(test, mu_tilde.first, mu_tilde.second)
                       : predict_asn(test, mu_exact.first, mu_exact.second);
  report.asc0 = report.sc * asn.first;
  report.asc1 = report.sc * asn.second;

  const double kappa = scenario.kappa;
  report.threshold = scenario.kind == ScenarioKind::superheterodyne
                         ? kappa / (2.0 * levels)
                         : kappa / levels;
  if (bench_antennas) {
    report.threshold_bench = (static_cast<double>(scenario.M_A) /
                              static_cast<double>(*bench_antennas)) *
                             kappa / levels;
  }
  return report;
}

}  // namespace asprt
