#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "asprt/config.hpp"
#include "asprt/expfam.hpp"

namespace asprt {

struct AccuracyRow {
  double sweep_value = 0.0;
  double eps0_half = 0.0;  // ALLR relative errors at xi = 1/2
  double eps1_half = 0.0;
  double eps0_star = 0.0;  // and at the tuned xi
  double eps1_star = 0.0;
  double eps0_hat = 0.0;   // endpoint-Fisher divergence errors
  double eps1_hat = 0.0;
  double xi_star = 0.0;
};

// Sweeps theta1_db (fixed theta0) or theta_bar_db (fixed delta). Sweep points
// with a degenerate pair (theta1 <= theta0) are skipped, not errors.
std::vector<AccuracyRow> run_accuracy(const ExperimentConfig& cfg, int threads);

struct EfficiencyRow {
  double sweep_value = 0.0;
  double chi0 = 0.0;  // one-bit vs same-scenario ideal; 0 when untunable
  double chi1 = 0.0;
  std::optional<double> chi0_bench;
  std::optional<double> chi1_bench;
  std::vector<double> thresholds;        // chi^(b), one per configured b
  std::vector<double> thresholds_bench;  // chi^(b, m) when benchmarked
  double xi_star = 0.0;                  // NaN when tuning is impossible
};

// Sweeps kappa (sampling/superheterodyne) or M_A (homodyne array).
std::vector<EfficiencyRow> run_efficiency(const ExperimentConfig& cfg,
                                          int threads);

struct PredictResult {
  Frontend frontend = Frontend::one_bit;
  double xi_star = 0.0;
  AllrMoments moments;     // ALLR moments at xi_star
  KlEstimates kl;
  double exact_mu0 = 0.0;  // exact per-block LLR means
  double exact_mu1 = 0.0;
  TestConfig test;         // thresholds plus the resolved truncation cap
  double asn0 = 0.0;       // predicted under H0 / H1 for the chosen front end
  double asn1 = 0.0;
};

PredictResult run_predict(const ExperimentConfig& cfg, int threads);

struct SimulateResult {
  TestConfig test;
  CampaignSummary h0;  // truth H0, seeded with master_seed
  CampaignSummary h1;  // truth H1, seeded with master_seed + 1
};

SimulateResult run_simulate(const ExperimentConfig& cfg, int threads);

std::filesystem::path write_accuracy_csv(const std::filesystem::path& dir,
                                         const ExperimentConfig& cfg,
                                         const std::vector<AccuracyRow>& rows);
std::filesystem::path write_efficiency_csv(const std::filesystem::path& dir,
                                           const ExperimentConfig& cfg,
                                           const std::vector<EfficiencyRow>& rows);
std::filesystem::path write_predict_json(const std::filesystem::path& dir,
                                         const ExperimentConfig& cfg,
                                         const PredictResult& result);
// Emits the summary JSON plus one binned histogram CSV per hypothesis;
// returns the paths written (JSON first).
std::vector<std::filesystem::path> write_simulate_outputs(
    const std::filesystem::path& dir, const ExperimentConfig& cfg,
    const SimulateResult& result);

}  // namespace asprt
