#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asprt/montecarlo.hpp"

namespace asprt {

// Declarative experiment description, deserialized from a key = value file.
// The hypothesis block accepts either a (theta_bar_db, delta_db) pair or
// explicit endpoints, never a mixture.
struct ExperimentConfig {
  CovarianceScenario scenario;

  std::optional<double> theta_bar_db;
  std::optional<double> delta_db;
  std::optional<double> theta0_db;
  std::optional<double> theta1_db;

  std::optional<std::string> sweep_variable;
  double sweep_lo = 0.0;
  double sweep_hi = 0.0;
  int sweep_steps = 0;

  double alpha0 = 1e-3;
  double alpha1 = 1e-3;
  TunerConfig tuner;
  std::int64_t trials = 0;
  std::uint64_t master_seed = 0;
  std::int64_t max_samples = 0;  // 0: derive from the predicted ASN
  Frontend frontend = Frontend::one_bit;

  std::vector<int> bits = {2, 4};       // threshold columns chi^(b)
  std::optional<int> bench_antennas;    // benchmark columns chi_{i,m}

  std::string output_prefix = "experiment";

  double resolved_theta0_db() const;
  double resolved_theta1_db() const;
  HypothesisPair hypothesis() const;  // linear scale, validated
};

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& source_name);
ExperimentConfig load_config(const std::string& path);

}  // namespace asprt
