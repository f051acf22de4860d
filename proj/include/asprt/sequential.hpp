#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "asprt/common.hpp"
#include "asprt/scenario.hpp"

namespace asprt {

struct TestConfig {
  double alpha0 = 1e-3;  // P(decide H1 | H0) target
  double alpha1 = 1e-3;  // P(decide H0 | H1) target
  double L0 = 0.0;       // lower stopping threshold, < 0
  double L1 = 0.0;       // upper stopping threshold, > 0
  double N0 = 0.0;       // ASN numerator under H0, < 0
  double N1 = 0.0;       // ASN numerator under H1, > 0
  std::int64_t max_samples = 0;  // safety cap; 0 defers to default_truncation
};

TestConfig wald_design(double alpha0, double alpha1);

// (N0/mu0, N1/mu1); requires mu0 < 0 < mu1.
std::pair<double, double> predict_asn(const TestConfig& config, double mu0,
                                      double mu1);

// 50 * max(predicted ASN, 100): generous enough that truncation marks a
// broken design rather than an unlucky trial.
std::int64_t default_truncation(double predicted_asn);

enum class Decision { H0, H1, truncated };
const char* to_string(Decision d);

struct TrialOutcome {
  Decision decision = Decision::truncated;
  std::int64_t n_d = 0;  // blocks consumed when the test stopped
};

// Feeds increments from next_increment(block_index) into the cumulative sum
// until a threshold is crossed or max_samples blocks are spent.
TrialOutcome sprt_run(const TestConfig& config,
                      const std::function<double(std::int64_t)>& next_increment);

struct EfficiencyReport {
  double chi0 = 0.0;  // mu_tilde_0 / mu_0, one-bit vs same-scenario ideal
  double chi1 = 0.0;
  std::optional<double> chi0_bench;  // vs an m-antenna ideal benchmark
  std::optional<double> chi1_bench;
  double sc = 0.0;    // comparator count MK(2^bits - 1)
  double asc0 = 0.0;  // sc * ASN: one-bit drifts at bits = 1, ideal otherwise
  double asc1 = 0.0;
  double threshold = 0.0;  // chi^(bits): the one-bit system wins above this
  std::optional<double> threshold_bench;  // chi^(bits, m)
};

// mu_tilde: one-bit ALLR means at the tuned linearization (mu0 < 0 < mu1).
// mu_exact: exact LLR means of the unquantized receiver, same scenario.
// bench_antennas/mu_exact_bench: optional m-antenna ideal reference
// (homodyne array only).
EfficiencyReport efficiency_metrics(
    std::pair<double, double> mu_tilde, std::pair<double, double> mu_exact,
    const CovarianceScenario& scenario, int bits,
    std::optional<int> bench_antennas = std::nullopt,
    std::optional<std::pair<double, double>> mu_exact_bench = std::nullopt,
    const TestConfig& test = wald_design(1e-3, 1e-3));

}  // namespace asprt
