#include "asprt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include <json.hpp>

#include "asprt/binary.hpp"
#include "asprt/gaussian.hpp"

namespace asprt {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << fmt(row[i]);
    out << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

Json scenario_json(const CovarianceScenario& sc) {
  Json j;
  j["kind"] = to_string(sc.kind);
  j["K0"] = sc.K0;
  j["kappa"] = sc.kappa;
  j["K"] = sc.K();
  j["M"] = sc.M();
  if (sc.kind == ScenarioKind::homodyne_array) {
    j["M_A"] = sc.M_A;
    j["phi_deg"] = sc.phi_deg;
  }
  if (sc.scale != 1.0) j["scale"] = sc.scale;
  return j;
}

Json test_json(const TestConfig& test) {
  Json j;
  j["alpha0"] = test.alpha0;
  j["alpha1"] = test.alpha1;
  j["L0"] = test.L0;
  j["L1"] = test.L1;
  j["N0"] = test.N0;
  j["N1"] = test.N1;
  j["max_samples"] = test.max_samples;
  return j;
}

Json campaign_json(const CampaignSummary& s, double design_alpha) {
  Json j;
  j["analytic"] = {{"alpha", design_alpha}, {"asn", s.asn_predicted}};
  Json emp;
  emp["alpha"] = s.empirical_alpha;
  emp["asn"] = s.asn_empirical;
  emp["asn_se"] = s.asn_se;
  emp["trials"] = s.trials;
  emp["decided"] = s.decided;
  emp["wrong"] = s.wrong;
  emp["truncated"] = s.truncated_count;
  j["empirical"] = emp;
  if (s.xi_star) j["xi_star"] = *s.xi_star;
  return j;
}

const std::string& sweep_variable(const ExperimentConfig& cfg) {
  if (!cfg.sweep_variable || cfg.sweep_variable->empty())
    throw ConfigError("this command needs a sweep block (sweep.variable)");
  return *cfg.sweep_variable;
}

std::vector<double> sweep_values(const ExperimentConfig& cfg) {
  if (cfg.sweep_steps < 1) throw ConfigError("sweep.steps must be >= 1");
  return linspace(cfg.sweep_lo, cfg.sweep_hi, cfg.sweep_steps);
}

void write_histogram_csv(const std::filesystem::path& path,
                         const std::map<std::int64_t, std::int64_t>& hist,
                         std::int64_t trials) {
  std::vector<std::vector<double>> rows;
  if (!hist.empty()) {
    const std::int64_t lo = hist.begin()->first;
    const std::int64_t hi = hist.rbegin()->first;
    const std::int64_t width = std::max<std::int64_t>(
        1, std::llround(static_cast<double>(hi - lo) / 200.0));
    std::map<std::int64_t, std::int64_t> binned;
    for (const auto& [n_d, count] : hist) binned[(n_d - lo) / width] += count;
    for (const auto& [bin, count] : binned) {
      const double bin_lo = static_cast<double>(lo + bin * width);
      const double bin_hi = static_cast<double>(lo + (bin + 1) * width - 1);
      rows.push_back({bin_lo, bin_hi, static_cast<double>(count),
                      static_cast<double>(count) / static_cast<double>(trials)});
    }
  }
  write_csv(path, {"n_lo", "n_hi", "count", "fraction"}, rows);
}

}  // namespace

std::vector<AccuracyRow> run_accuracy(const ExperimentConfig& cfg, int threads) {
  cfg.scenario.validate();
  cfg.tuner.validate();
  const std::string& var = sweep_variable(cfg);
  if (var != "theta1_db" && var != "theta_bar_db")
    throw ConfigError("accuracy sweeps 'theta1_db' or 'theta_bar_db'");
  if (var == "theta1_db" && !cfg.theta0_db)
    throw ConfigError("a theta1_db sweep needs hypothesis.theta0_db");
  if (var == "theta_bar_db" && !cfg.delta_db)
    throw ConfigError("a theta_bar_db sweep needs hypothesis.delta_db");
  const auto values = sweep_values(cfg);

  const GaussianQuadraticModel model(cfg.scenario);
  std::vector<std::optional<AccuracyRow>> slots(values.size());
  parallel_for(
      static_cast<std::int64_t>(values.size()),
      [&](std::int64_t i) {
        const double v = values[static_cast<std::size_t>(i)];
        const double t0_db = var == "theta1_db" ? *cfg.theta0_db : v - *cfg.delta_db;
        const double t1_db = var == "theta1_db" ? v : v + *cfg.delta_db;
        const HypothesisPair pair{db_to_linear(t0_db), db_to_linear(t1_db)};
        if (!(pair.theta1 > pair.theta0)) return;  // degenerate sweep point
        const double xi_star = tune_xi(model, pair, cfg.tuner);
        const ApproxErrors at_half = approximation_errors(model, pair, 0.5);
        const ApproxErrors at_star = approximation_errors(model, pair, xi_star);
        slots[static_cast<std::size_t>(i)] =
            AccuracyRow{v,
                        at_half.eps0_tilde,
                        at_half.eps1_tilde,
                        at_star.eps0_tilde,
                        at_star.eps1_tilde,
                        at_star.eps0_hat,
                        at_star.eps1_hat,
                        xi_star};
      },
      threads);

  std::vector<AccuracyRow> rows;
  rows.reserve(values.size());
  for (const auto& slot : slots)
    if (slot) rows.push_back(*slot);
  if (rows.empty())
    throw ValidationError("the sweep contains no admissible hypothesis pairs");
  return rows;
}

std::vector<EfficiencyRow> run_efficiency(const ExperimentConfig& cfg,
                                          int threads) {
  cfg.scenario.validate();
  cfg.tuner.validate();
  const std::string& var = sweep_variable(cfg);
  if (var != "kappa" && var != "M_A")
    throw ConfigError("efficiency sweeps 'kappa' or 'M_A'");
  if (var == "M_A" && cfg.scenario.kind != ScenarioKind::homodyne_array)
    throw ConfigError("an M_A sweep needs the homodyne_array scenario");
  if (cfg.bench_antennas && cfg.scenario.kind != ScenarioKind::homodyne_array)
    throw ConfigError("antenna benchmarks apply to the homodyne array only");
  const auto values = sweep_values(cfg);
  const HypothesisPair pair = cfg.hypothesis();
  const TestConfig test = wald_design(cfg.alpha0, cfg.alpha1);

  std::vector<EfficiencyRow> rows;
  rows.reserve(values.size());
  for (const double v : values) {
    CovarianceScenario sc = cfg.scenario;
    if (var == "kappa") {
      sc.kappa = v;
    } else {
      sc.M_A = static_cast<int>(std::lround(v));
    }
    sc.validate();

    const Mat r0 = build_covariance(sc, pair.theta0).matrix;
    const Mat r1 = build_covariance(sc, pair.theta1).matrix;
    const auto mu_exact = gaussian_llr_means(r0, r1);

    std::optional<std::pair<double, double>> mu_bench;
    if (cfg.bench_antennas) {
      CovarianceScenario bench = sc;
      bench.M_A = *cfg.bench_antennas;
      bench.validate();
      mu_bench = gaussian_llr_means(build_covariance(bench, pair.theta0).matrix,
                                    build_covariance(bench, pair.theta1).matrix);
    }

    EfficiencyRow row;
    row.sweep_value = v;
    std::pair<double, double> mu_tilde{0.0, 0.0};
    row.xi_star = std::numeric_limits<double>::quiet_NaN();
    const BinaryPairwiseModel model(sc, threads);
    try {
      row.xi_star = tune_xi(model, pair, cfg.tuner);
      const AllrMoments m =
          allr_moments(model, pair, row.xi_star, HyperplaneMode::difference);
      mu_tilde = {m.mu_tilde_0, m.mu_tilde_1};
    } catch (const TuningError&) {
      // Front ends that erase all pair correlation (e.g. no oversampling)
      // admit no test design; report zero efficiency for the sweep point.
    }

    for (const int b : cfg.bits) {
      const EfficiencyReport report = efficiency_metrics(
          mu_tilde, mu_exact, sc, b, cfg.bench_antennas, mu_bench, test);
      if (row.thresholds.empty()) {
        row.chi0 = report.chi0;
        row.chi1 = report.chi1;
        row.chi0_bench = report.chi0_bench;
        row.chi1_bench = report.chi1_bench;
      }
      row.thresholds.push_back(report.threshold);
      if (report.threshold_bench)
        row.thresholds_bench.push_back(*report.threshold_bench);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PredictResult run_predict(const ExperimentConfig& cfg, int threads) {
  cfg.scenario.validate();
  cfg.tuner.validate();
  const HypothesisPair pair = cfg.hypothesis();

  PredictResult result;
  result.frontend = cfg.frontend;
  result.test = wald_design(cfg.alpha0, cfg.alpha1);

  const auto mu_exact =
      gaussian_llr_means(build_covariance(cfg.scenario, pair.theta0).matrix,
                         build_covariance(cfg.scenario, pair.theta1).matrix);
  result.exact_mu0 = mu_exact.first;
  result.exact_mu1 = mu_exact.second;

  if (cfg.frontend == Frontend::one_bit) {
    const BinaryPairwiseModel model(cfg.scenario, threads);
    result.xi_star = tune_xi(model, pair, cfg.tuner);
    result.moments = allr_moments(model, pair, result.xi_star,
                                  HyperplaneMode::difference);
    result.kl = kl_estimates(model, pair, result.xi_star);
    const auto asn = predict_asn(result.test, result.moments.mu_tilde_0,
                                 result.moments.mu_tilde_1);
    result.asn0 = asn.first;
    result.asn1 = asn.second;
  } else {
    const GaussianQuadraticModel model(cfg.scenario);
    result.xi_star = tune_xi(model, pair, cfg.tuner);
    result.moments = allr_moments(model, pair, result.xi_star,
                                  HyperplaneMode::difference);
    result.kl = kl_estimates(model, pair, result.xi_star);
    const auto asn = predict_asn(result.test, mu_exact.first, mu_exact.second);
    result.asn0 = asn.first;
    result.asn1 = asn.second;
  }
  result.test.max_samples =
      cfg.max_samples > 0
          ? cfg.max_samples
          : default_truncation(std::max(result.asn0, result.asn1));
  return result;
}

SimulateResult run_simulate(const ExperimentConfig& cfg, int threads) {
  if (cfg.trials < 100)
    throw ValidationError("simulate needs at least 100 trials per hypothesis");
  SimulateResult result;
  result.test = wald_design(cfg.alpha0, cfg.alpha1);
  result.test.max_samples = cfg.max_samples;

  CampaignConfig campaign;
  campaign.scenario = cfg.scenario;
  campaign.theta0_db = cfg.resolved_theta0_db();
  campaign.theta1_db = cfg.resolved_theta1_db();
  campaign.trials = cfg.trials;
  campaign.test = result.test;
  campaign.frontend = cfg.frontend;
  campaign.tuner = cfg.tuner;

  campaign.truth = Truth::H0;
  campaign.master_seed = cfg.master_seed;
  result.h0 = run_campaign(campaign, threads);

  campaign.truth = Truth::H1;
  campaign.master_seed = cfg.master_seed + 1;
  result.h1 = run_campaign(campaign, threads);
  return result;
}

std::filesystem::path write_accuracy_csv(const std::filesystem::path& dir,
                                         const ExperimentConfig& cfg,
                                         const std::vector<AccuracyRow>& rows) {
  const auto path = dir / (cfg.output_prefix + "_accuracy.csv");
  std::vector<std::vector<double>> table;
  table.reserve(rows.size());
  for (const auto& r : rows)
    table.push_back({r.sweep_value, r.eps0_half, r.eps1_half, r.eps0_star,
                     r.eps1_star, r.eps0_hat, r.eps1_hat, r.xi_star});
  write_csv(path,
            {sweep_variable(cfg), "eps0_tilde_half", "eps1_tilde_half",
             "eps0_tilde_star", "eps1_tilde_star", "eps0_hat", "eps1_hat",
             "xi_star"},
            table);
  return path;
}

std::filesystem::path write_efficiency_csv(
    const std::filesystem::path& dir, const ExperimentConfig& cfg,
    const std::vector<EfficiencyRow>& rows) {
  const auto path = dir / (cfg.output_prefix + "_efficiency.csv");
  const bool benched = cfg.bench_antennas.has_value();
  const std::string bench_tag =
      benched ? "_m" + std::to_string(*cfg.bench_antennas) : "";

  std::vector<std::string> header{sweep_variable(cfg), "chi0", "chi1"};
  if (benched) {
    header.push_back("chi0" + bench_tag);
    header.push_back("chi1" + bench_tag);
  }
  for (const int b : cfg.bits)
    header.push_back("threshold_b" + std::to_string(b));
  if (benched)
    for (const int b : cfg.bits)
      header.push_back("threshold_b" + std::to_string(b) + bench_tag);
  header.push_back("xi_star");

  std::vector<std::vector<double>> table;
  table.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<double> row{r.sweep_value, r.chi0, r.chi1};
    if (benched) {
      row.push_back(r.chi0_bench.value_or(0.0));
      row.push_back(r.chi1_bench.value_or(0.0));
    }
    for (const double t : r.thresholds) row.push_back(t);
    if (benched)
      for (const double t : r.thresholds_bench) row.push_back(t);
    row.push_back(r.xi_star);
    table.push_back(std::move(row));
  }
  write_csv(path, header, table);
  return path;
}

std::filesystem::path write_predict_json(const std::filesystem::path& dir,
                                         const ExperimentConfig& cfg,
                                         const PredictResult& result) {
  const auto path = dir / (cfg.output_prefix + "_predict.json");
  Json j;
  j["command"] = "predict";
  j["scenario"] = scenario_json(cfg.scenario);
  j["hypothesis"] = {{"theta0_db", cfg.resolved_theta0_db()},
                     {"theta1_db", cfg.resolved_theta1_db()}};
  j["frontend"] = to_string(result.frontend);
  j["test"] = test_json(result.test);
  j["xi_star"] = result.xi_star;
  j["allr"] = {{"mu_tilde_0", result.moments.mu_tilde_0},
               {"mu_tilde_1", result.moments.mu_tilde_1},
               {"sigma2_tilde_0", result.moments.sigma2_tilde_0},
               {"sigma2_tilde_1", result.moments.sigma2_tilde_1}};
  j["exact"] = {{"mu0", result.exact_mu0}, {"mu1", result.exact_mu1}};
  j["kl"] = {
      {"difference",
       {{"d01", result.kl.difference.d01}, {"d10", result.kl.difference.d10}}},
      {"derivative",
       {{"d01", result.kl.derivative.d01}, {"d10", result.kl.derivative.d10}}},
      {"fisher", {{"d01", result.kl.fisher.d01}, {"d10", result.kl.fisher.d10}}},
      {"literature",
       {{"d01", result.kl.literature.d01}, {"d10", result.kl.literature.d10}}}};
  j["asn"] = {{"h0", result.asn0}, {"h1", result.asn1}};
  write_json_file(path, j);
  return path;
}

std::vector<std::filesystem::path> write_simulate_outputs(
    const std::filesystem::path& dir, const ExperimentConfig& cfg,
    const SimulateResult& result) {
  const auto json_path = dir / (cfg.output_prefix + "_simulate.json");
  const auto h0_path = dir / (cfg.output_prefix + "_h0_hist.csv");
  const auto h1_path = dir / (cfg.output_prefix + "_h1_hist.csv");

  Json j;
  j["command"] = "simulate";
  j["scenario"] = scenario_json(cfg.scenario);
  j["hypothesis"] = {{"theta0_db", cfg.resolved_theta0_db()},
                     {"theta1_db", cfg.resolved_theta1_db()}};
  j["frontend"] = to_string(cfg.frontend);
  j["test"] = test_json(result.test);
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["h0"] = campaign_json(result.h0, cfg.alpha0);
  j["h1"] = campaign_json(result.h1, cfg.alpha1);
  j["histograms"] = {{"h0", h0_path.filename().string()},
                     {"h1", h1_path.filename().string()}};
  write_json_file(json_path, j);

  write_histogram_csv(h0_path, result.h0.histogram, result.h0.trials);
  write_histogram_csv(h1_path, result.h1.histogram, result.h1.trials);
  return {json_path, h0_path, h1_path};
}

}  // namespace asprt
