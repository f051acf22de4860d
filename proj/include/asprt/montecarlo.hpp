#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "asprt/philox.hpp"
#include "asprt/scenario.hpp"
#include "asprt/sequential.hpp"
#include "asprt/xi_tuner.hpp"

namespace asprt {

enum class Truth { H0, H1 };
enum class Frontend { one_bit, infinite_bit };

const char* to_string(Truth t);
const char* to_string(Frontend f);
Truth truth_from_string(const std::string& name);
Frontend frontend_from_string(const std::string& name);

struct CampaignConfig {
  CovarianceScenario scenario;
  double theta0_db = 0.0;
  double theta1_db = 0.0;
  Truth truth = Truth::H0;
  std::int64_t trials = 0;
  std::uint64_t master_seed = 0;
  TestConfig test;  // max_samples = 0 defers to default_truncation
  Frontend frontend = Frontend::one_bit;
  TunerConfig tuner;  // used by the one-bit front end only
};

struct CampaignSummary {
  std::int64_t trials = 0;
  std::int64_t decided = 0;
  std::int64_t wrong = 0;  // decisions against the configured truth
  std::int64_t truncated_count = 0;
  double empirical_alpha = 0.0;  // wrong / trials
  double asn_empirical = 0.0;    // mean stopping time over decided trials
  double asn_se = 0.0;           // sample standard error of that mean
  double asn_predicted = 0.0;    // Wald prediction under the truth
  std::optional<double> xi_star;  // set by the one-bit front end
  std::map<std::int64_t, std::int64_t> histogram;  // n_D -> count, all trials

  bool operator==(const CampaignSummary&) const = default;
};

// Cholesky factor computed once; each sample costs one triangular multiply.
class GaussianSampler {
 public:
  explicit GaussianSampler(const Mat& r);
  Vec sample(NormalStream& stream) const;
  int dim() const { return static_cast<int>(chol_l_.rows()); }

 private:
  Mat chol_l_;
};

Vec gaussian_sample(const Mat& r, std::uint64_t master_seed, std::uint64_t trial);

// Runs config.trials independent sequential tests. Per-trial streams are
// derived from (master_seed, trial index), and aggregation is a fixed-order
// reduction, so the summary is identical for every worker count.
CampaignSummary run_campaign(const CampaignConfig& config, int workers = 0);

}  // namespace asprt
