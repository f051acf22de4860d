#include "asprt/montecarlo.hpp"

#include <cmath>
#include <memory>
#include <vector>

#include "asprt/binary.hpp"
#include "asprt/gaussian.hpp"

namespace asprt {

const char* to_string(Truth t) { return t == Truth::H0 ? "H0" : "H1"; }

const char* to_string(Frontend f) {
  return f == Frontend::one_bit ? "one_bit" : "infinite_bit";
}

Truth truth_from_string(const std::string& name) {
  if (name == "H0" || name == "h0") return Truth::H0;
  if (name == "H1" || name == "h1") return Truth::H1;
  throw ConfigError("unknown truth '" + name + "' (expected H0 or H1)");
}

Frontend frontend_from_string(const std::string& name) {
  if (name == "one_bit") return Frontend::one_bit;
  if (name == "infinite_bit") return Frontend::infinite_bit;
  throw ConfigError("unknown frontend '" + name +
                    "' (expected one_bit or infinite_bit)");
}

GaussianSampler::GaussianSampler(const Mat& r) {
  if (r.rows() != r.cols())
    throw ValidationError("sampling covariance must be square");
  Eigen::LLT<Mat> llt(r);
  if (llt.info() != Eigen::Success)
    throw ConditioningError("sampling covariance is not positive definite");
  chol_l_ = llt.matrixL();
}

Vec GaussianSampler::sample(NormalStream& stream) const {
  Vec g(chol_l_.rows());
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = stream.next();
  return chol_l_ * g;
}

Vec gaussian_sample(const Mat& r, std::uint64_t master_seed,
                    std::uint64_t trial) {
  GaussianSampler sampler(r);
  NormalStream stream(master_seed, trial);
  return sampler.sample(stream);
}

namespace {

struct TrialRecord {
  Decision decision = Decision::truncated;
  std::int64_t n_d = 0;
};

}  // namespace

CampaignSummary run_campaign(const CampaignConfig& config, int workers) {
  config.scenario.validate();
  if (config.trials < 1) throw ValidationError("campaign needs trials >= 1");
  HypothesisPair pair{db_to_linear(config.theta0_db),
                      db_to_linear(config.theta1_db)};
  pair.validate();

  CampaignSummary summary;
  summary.trials = config.trials;

  TestConfig test = config.test;
  if (!(test.L0 < 0.0 && test.L1 > 0.0))
    test = wald_design(test.alpha0, test.alpha1);

  const double theta_truth =
      config.truth == Truth::H0 ? pair.theta0 : pair.theta1;
  const Mat r_truth = build_covariance(config.scenario, theta_truth).matrix;

  // Frozen per-block statistic: an ALLR plan for the one-bit front end, the
  // exact LLR pieces for the unquantized one.
  AllrPlan plan;
  std::vector<std::pair<int, int>> pairs_index;
  std::unique_ptr<SpdSolver> solver0, solver1;
  double half_log_ratio = 0.0;
  if (config.frontend == Frontend::one_bit) {
    BinaryPairwiseModel model(config.scenario, workers);
    const double xi_star = tune_xi(model, pair, config.tuner);
    plan = make_allr_plan(model, pair, xi_star);
    pairs_index = model.pair_index();
    summary.xi_star = xi_star;
    const auto asn =
        predict_asn(test, plan.mu_tilde_0, plan.mu_tilde_1);
    summary.asn_predicted =
        config.truth == Truth::H0 ? asn.first : asn.second;
  } else {
    const Mat r0 = build_covariance(config.scenario, pair.theta0).matrix;
    const Mat r1 = build_covariance(config.scenario, pair.theta1).matrix;
    solver0 = std::make_unique<SpdSolver>(r0);
    solver1 = std::make_unique<SpdSolver>(r1);
    half_log_ratio = 0.5 * (solver0->log_det() - solver1->log_det());
    const auto mu = gaussian_llr_means(r0, r1);
    const auto asn = predict_asn(test, mu.first, mu.second);
    summary.asn_predicted =
        config.truth == Truth::H0 ? asn.first : asn.second;
  }
  if (test.max_samples == 0)
    test.max_samples = default_truncation(summary.asn_predicted);

  const GaussianSampler sampler(r_truth);
  const int n = sampler.dim();
  // b . (stat - mu_ref) with the constant folded out of the block loop.
  const double plan_offset =
      config.frontend == Frontend::one_bit ? -plan.b.dot(plan.mu_ref) : 0.0;

  std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
  parallel_for(
      config.trials,
      [&](std::int64_t t) {
        NormalStream stream(config.master_seed,
                            static_cast<std::uint64_t>(t));
        Vec y(n);
        TrialOutcome outcome;
        if (config.frontend == Frontend::one_bit) {
          outcome = sprt_run(test, [&](std::int64_t) {
            y = sampler.sample(stream);
            double inc = plan_offset;
            for (std::size_t p = 0; p < pairs_index.size(); ++p) {
              const double zi = y(pairs_index[p].first) >= 0.0 ? 1.0 : -1.0;
              const double zj = y(pairs_index[p].second) >= 0.0 ? 1.0 : -1.0;
              inc += plan.b(static_cast<Eigen::Index>(p)) * zi * zj;
            }
            return inc;
          });
        } else {
          outcome = sprt_run(test, [&](std::int64_t) {
            y = sampler.sample(stream);
            return 0.5 * (y.dot(solver0->solve(y)) - y.dot(solver1->solve(y))) +
                   half_log_ratio;
          });
        }
        records[static_cast<std::size_t>(t)] = {outcome.decision, outcome.n_d};
      },
      workers);

  // Fixed-order reduction: identical totals for any worker count.
  const Decision wrong_decision =
      config.truth == Truth::H0 ? Decision::H1 : Decision::H0;
  std::int64_t n_sum = 0;
  for (const auto& rec : records) {
    summary.histogram[rec.n_d] += 1;
    if (rec.decision == Decision::truncated) {
      summary.truncated_count += 1;
      continue;
    }
    summary.decided += 1;
    n_sum += rec.n_d;
    if (rec.decision == wrong_decision) summary.wrong += 1;
  }
  summary.empirical_alpha =
      static_cast<double>(summary.wrong) / static_cast<double>(summary.trials);
  if (summary.decided > 0) {
    summary.asn_empirical =
        static_cast<double>(n_sum) / static_cast<double>(summary.decided);
    if (summary.decided > 1) {
      double ss = 0.0;
      for (const auto& rec : records) {
        if (rec.decision == Decision::truncated) continue;
        const double d = static_cast<double>(rec.n_d) - summary.asn_empirical;
        ss += d * d;
      }
      const double var = ss / static_cast<double>(summary.decided - 1);
      summary.asn_se =
          std::sqrt(var / static_cast<double>(summary.decided));
    }
  }
  return summary;
}

}  // namespace asprt
