#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asprt/binary.hpp"
#include "asprt/experiments.hpp"
#include "asprt/gaussian.hpp"
#include "asprt/montecarlo.hpp"
#include "asprt/xi_tuner.hpp"

namespace py = pybind11;
using namespace asprt;

namespace {

// Exceptions cross the boundary with their category attached so Python
// callers can branch the same way the CLI does.
void translate_errors() {
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = e.category() + ": " + e.what();
      PyErr_SetString(PyExc_ValueError, msg.c_str());
    }
  });
}

}  // namespace

PYBIND11_MODULE(pyasprt, m) {
  m.doc() = "Sequential detection with coarsely quantized receivers";
  translate_errors();

  py::enum_<ScenarioKind>(m, "ScenarioKind")
      .value("sampling", ScenarioKind::sampling)
      .value("superheterodyne", ScenarioKind::superheterodyne)
      .value("homodyne_array", ScenarioKind::homodyne_array);
  py::enum_<Frontend>(m, "Frontend")
      .value("one_bit", Frontend::one_bit)
      .value("infinite_bit", Frontend::infinite_bit);
  py::enum_<Truth>(m, "Truth").value("H0", Truth::H0).value("H1", Truth::H1);
  py::enum_<HyperplaneMode>(m, "HyperplaneMode")
      .value("difference", HyperplaneMode::difference)
      .value("derivative", HyperplaneMode::derivative);
  py::enum_<Decision>(m, "Decision")
      .value("H0", Decision::H0)
      .value("H1", Decision::H1)
      .value("truncated", Decision::truncated);

  py::class_<CovarianceScenario>(m, "CovarianceScenario")
      .def(py::init<>())
      .def_readwrite("kind", &CovarianceScenario::kind)
      .def_readwrite("K0", &CovarianceScenario::K0)
      .def_readwrite("kappa", &CovarianceScenario::kappa)
      .def_readwrite("M_A", &CovarianceScenario::M_A)
      .def_readwrite("phi_deg", &CovarianceScenario::phi_deg)
      .def_readwrite("scale", &CovarianceScenario::scale)
      .def("K", &CovarianceScenario::K)
      .def("M", &CovarianceScenario::M)
      .def("dim", &CovarianceScenario::dim)
      .def("validate", &CovarianceScenario::validate);

  m.def("db_to_linear", &db_to_linear, py::arg("db"));
  m.def("linear_to_db", &linear_to_db, py::arg("lin"));
  m.def("sinc_covariance", &sinc_covariance, py::arg("K"), py::arg("kappa"));
  m.def("mixing_matrix", &mixing_matrix, py::arg("K"));
  m.def("steering_matrix", &steering_matrix, py::arg("M_A"),
        py::arg("phi_deg"));
  m.def(
      "build_covariance",
      [](const CovarianceScenario& sc, double theta) {
        return build_covariance(sc, theta).matrix;
      },
      py::arg("scenario"), py::arg("theta"));
  m.def("covariance_derivative", &covariance_derivative, py::arg("scenario"));

  py::class_<HypothesisPair>(m, "HypothesisPair")
      .def(py::init<double, double>(), py::arg("theta0"), py::arg("theta1"))
      .def_readwrite("theta0", &HypothesisPair::theta0)
      .def_readwrite("theta1", &HypothesisPair::theta1)
      .def("validate", &HypothesisPair::validate);

  py::class_<StatisticModel>(m, "StatisticModel")
      .def("sample_dim", &StatisticModel::sample_dim)
      .def("stat_dim", &StatisticModel::stat_dim)
      .def("statistic", &StatisticModel::statistic, py::arg("sample"))
      .def("stat_mean", &StatisticModel::stat_mean, py::arg("theta"))
      .def("stat_covariance", &StatisticModel::stat_covariance,
           py::arg("theta"))
      .def("stat_mean_jacobian", &StatisticModel::stat_mean_jacobian,
           py::arg("theta"));

  py::class_<GaussianQuadraticModel, StatisticModel>(m,
                                                     "GaussianQuadraticModel")
      .def(py::init<CovarianceScenario>(), py::arg("scenario"));

  py::class_<BinaryPairwiseModel, StatisticModel>(m, "BinaryPairwiseModel")
      .def(py::init<CovarianceScenario, int>(), py::arg("scenario"),
           py::arg("threads") = 0)
      .def("pair_index", &BinaryPairwiseModel::pair_index);

  m.def("hard_limit", &hard_limit, py::arg("y"));
  m.def("pair_statistics", &pair_statistics, py::arg("z"));
  m.def("orthant_probability", &orthant_probability, py::arg("r"));
  m.def("sign_product_moment", &sign_product_moment, py::arg("r_y"),
        py::arg("i"), py::arg("j"), py::arg("k"), py::arg("l"));
  m.def("binary_pair_means", &binary_pair_means, py::arg("r_y"));
  m.def("binary_pair_covariance", &binary_pair_covariance, py::arg("r_y"),
        py::arg("threads") = 0);

  m.def("gaussian_exact_llr", &gaussian_exact_llr, py::arg("y"), py::arg("r0"),
        py::arg("r1"));
  m.def("gaussian_llr_means", &gaussian_llr_means, py::arg("r0"),
        py::arg("r1"));

  py::class_<AllrMoments>(m, "AllrMoments")
      .def_readonly("mu_tilde_0", &AllrMoments::mu_tilde_0)
      .def_readonly("mu_tilde_1", &AllrMoments::mu_tilde_1)
      .def_readonly("sigma2_tilde_0", &AllrMoments::sigma2_tilde_0)
      .def_readonly("sigma2_tilde_1", &AllrMoments::sigma2_tilde_1);

  py::class_<AllrPlan>(m, "AllrPlan")
      .def_readonly("b", &AllrPlan::b)
      .def_readonly("mu_ref", &AllrPlan::mu_ref)
      .def_readonly("xi", &AllrPlan::xi)
      .def_readonly("mu_tilde_0", &AllrPlan::mu_tilde_0)
      .def_readonly("mu_tilde_1", &AllrPlan::mu_tilde_1)
      .def_readonly("sigma2_tilde_0", &AllrPlan::sigma2_tilde_0)
      .def_readonly("sigma2_tilde_1", &AllrPlan::sigma2_tilde_1);

  py::class_<KlPair>(m, "KlPair")
      .def_readonly("d01", &KlPair::d01)
      .def_readonly("d10", &KlPair::d10);
  py::class_<KlEstimates>(m, "KlEstimates")
      .def_readonly("difference", &KlEstimates::difference)
      .def_readonly("derivative", &KlEstimates::derivative)
      .def_readonly("fisher", &KlEstimates::fisher)
      .def_readonly("literature", &KlEstimates::literature);

  py::class_<ApproxErrors>(m, "ApproxErrors")
      .def_readonly("eps0_tilde", &ApproxErrors::eps0_tilde)
      .def_readonly("eps1_tilde", &ApproxErrors::eps1_tilde)
      .def_readonly("eps0_hat", &ApproxErrors::eps0_hat)
      .def_readonly("eps1_hat", &ApproxErrors::eps1_hat);

  m.def("linearization_point", &linearization_point, py::arg("pair"),
        py::arg("xi"));
  m.def("llr_hyperplane", &llr_hyperplane, py::arg("model"), py::arg("pair"),
        py::arg("xi"), py::arg("mode"));
  m.def(
      "allr_moments",
      [](const StatisticModel& model, const HypothesisPair& pair, double xi,
         HyperplaneMode mode) { return allr_moments(model, pair, xi, mode); },
      py::arg("model"), py::arg("pair"), py::arg("xi"),
      py::arg("mode") = HyperplaneMode::difference);
  m.def("make_allr_plan", &make_allr_plan, py::arg("model"), py::arg("pair"),
        py::arg("xi"), py::arg("mode") = HyperplaneMode::difference);
  m.def("allr_evaluate", &allr_evaluate, py::arg("plan"), py::arg("stat"));
  m.def("fisher_information", &fisher_information, py::arg("model"),
        py::arg("theta"));
  m.def("kl_estimates", &kl_estimates, py::arg("model"), py::arg("pair"),
        py::arg("xi"));
  m.def("approximation_errors", &approximation_errors, py::arg("model"),
        py::arg("pair"), py::arg("xi"));

  py::class_<TunerConfig>(m, "TunerConfig")
      .def(py::init<>())
      .def_readwrite("rho", &TunerConfig::rho)
      .def_readwrite("grid_points", &TunerConfig::grid_points)
      .def_readwrite("refine_tol", &TunerConfig::refine_tol);
  m.def("drift_ratio", &drift_ratio, py::arg("model"), py::arg("pair"),
        py::arg("xi"), py::arg("rho"),
        py::arg("mode") = HyperplaneMode::difference);
  m.def("tune_xi", &tune_xi, py::arg("model"), py::arg("pair"),
        py::arg("config") = TunerConfig{},
        py::arg("mode") = HyperplaneMode::difference);

  py::class_<TestConfig>(m, "TestConfig")
      .def(py::init<>())
      .def_readwrite("alpha0", &TestConfig::alpha0)
      .def_readwrite("alpha1", &TestConfig::alpha1)
      .def_readwrite("L0", &TestConfig::L0)
      .def_readwrite("L1", &TestConfig::L1)
      .def_readwrite("N0", &TestConfig::N0)
      .def_readwrite("N1", &TestConfig::N1)
      .def_readwrite("max_samples", &TestConfig::max_samples);
  m.def("wald_design", &wald_design, py::arg("alpha0"), py::arg("alpha1"));
  m.def("predict_asn", &predict_asn, py::arg("config"), py::arg("mu0"),
        py::arg("mu1"));
  m.def("default_truncation", &default_truncation, py::arg("predicted_asn"));

  py::class_<TrialOutcome>(m, "TrialOutcome")
      .def_readonly("decision", &TrialOutcome::decision)
      .def_readonly("n_d", &TrialOutcome::n_d);
  m.def("sprt_run", &sprt_run, py::arg("config"), py::arg("next_increment"));

  py::class_<EfficiencyReport>(m, "EfficiencyReport")
      .def_readonly("chi0", &EfficiencyReport::chi0)
      .def_readonly("chi1", &EfficiencyReport::chi1)
      .def_readonly("chi0_bench", &EfficiencyReport::chi0_bench)
      .def_readonly("chi1_bench", &EfficiencyReport::chi1_bench)
      .def_readonly("sc", &EfficiencyReport::sc)
      .def_readonly("asc0", &EfficiencyReport::asc0)
      .def_readonly("asc1", &EfficiencyReport::asc1)
      .def_readonly("threshold", &EfficiencyReport::threshold)
      .def_readonly("threshold_bench", &EfficiencyReport::threshold_bench);
  m.def("efficiency_metrics", &efficiency_metrics, py::arg("mu_tilde"),
        py::arg("mu_exact"), py::arg("scenario"), py::arg("bits"),
        py::arg("bench_antennas") = std::nullopt,
        py::arg("mu_exact_bench") = std::nullopt,
        py::arg("test") = wald_design(1e-3, 1e-3));

  py::class_<CampaignConfig>(m, "CampaignConfig")
      .def(py::init<>())
      .def_readwrite("scenario", &CampaignConfig::scenario)
      .def_readwrite("theta0_db", &CampaignConfig::theta0_db)
      .def_readwrite("theta1_db", &CampaignConfig::theta1_db)
      .def_readwrite("truth", &CampaignConfig::truth)
      .def_readwrite("trials", &CampaignConfig::trials)
      .def_readwrite("master_seed", &CampaignConfig::master_seed)
      .def_readwrite("test", &CampaignConfig::test)
      .def_readwrite("frontend", &CampaignConfig::frontend)
      .def_readwrite("tuner", &CampaignConfig::tuner);

  py::class_<CampaignSummary>(m, "CampaignSummary")
      .def_readonly("trials", &CampaignSummary::trials)
      .def_readonly("decided", &CampaignSummary::decided)
      .def_readonly("wrong", &CampaignSummary::wrong)
      .def_readonly("truncated_count", &CampaignSummary::truncated_count)
      .def_readonly("empirical_alpha", &CampaignSummary::empirical_alpha)
      .def_readonly("asn_empirical", &CampaignSummary::asn_empirical)
      .def_readonly("asn_se", &CampaignSummary::asn_se)
      .def_readonly("asn_predicted", &CampaignSummary::asn_predicted)
      .def_readonly("xi_star", &CampaignSummary::xi_star)
      .def_readonly("histogram", &CampaignSummary::histogram);
  m.def("run_campaign", &run_campaign, py::arg("config"),
        py::arg("workers") = 0);
  m.def("gaussian_sample", &gaussian_sample, py::arg("r"),
        py::arg("master_seed"), py::arg("trial"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("scenario", &ExperimentConfig::scenario)
      .def_readwrite("theta_bar_db", &ExperimentConfig::theta_bar_db)
      .def_readwrite("delta_db", &ExperimentConfig::delta_db)
      .def_readwrite("theta0_db", &ExperimentConfig::theta0_db)
      .def_readwrite("theta1_db", &ExperimentConfig::theta1_db)
      .def_readwrite("sweep_variable", &ExperimentConfig::sweep_variable)
      .def_readwrite("sweep_lo", &ExperimentConfig::sweep_lo)
      .def_readwrite("sweep_hi", &ExperimentConfig::sweep_hi)
      .def_readwrite("sweep_steps", &ExperimentConfig::sweep_steps)
      .def_readwrite("alpha0", &ExperimentConfig::alpha0)
      .def_readwrite("alpha1", &ExperimentConfig::alpha1)
      .def_readwrite("tuner", &ExperimentConfig::tuner)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("master_seed", &ExperimentConfig::master_seed)
      .def_readwrite("max_samples", &ExperimentConfig::max_samples)
      .def_readwrite("frontend", &ExperimentConfig::frontend)
      .def_readwrite("bits", &ExperimentConfig::bits)
      .def_readwrite("bench_antennas", &ExperimentConfig::bench_antennas)
      .def_readwrite("output_prefix", &ExperimentConfig::output_prefix)
      .def("resolved_theta0_db", &ExperimentConfig::resolved_theta0_db)
      .def("resolved_theta1_db", &ExperimentConfig::resolved_theta1_db)
      .def("hypothesis", &ExperimentConfig::hypothesis);
  m.def("parse_config_text", &parse_config_text, py::arg("text"),
        py::arg("source_name"));
  m.def("load_config", &load_config, py::arg("path"));

  py::class_<AccuracyRow>(m, "AccuracyRow")
      .def_readonly("sweep_value", &AccuracyRow::sweep_value)
      .def_readonly("eps0_half", &AccuracyRow::eps0_half)
      .def_readonly("eps1_half", &AccuracyRow::eps1_half)
      .def_readonly("eps0_star", &AccuracyRow::eps0_star)
      .def_readonly("eps1_star", &AccuracyRow::eps1_star)
      .def_readonly("eps0_hat", &AccuracyRow::eps0_hat)
      .def_readonly("eps1_hat", &AccuracyRow::eps1_hat)
      .def_readonly("xi_star", &AccuracyRow::xi_star);
  py::class_<EfficiencyRow>(m, "EfficiencyRow")
      .def_readonly("sweep_value", &EfficiencyRow::sweep_value)
      .def_readonly("chi0", &EfficiencyRow::chi0)
      .def_readonly("chi1", &EfficiencyRow::chi1)
      .def_readonly("chi0_bench", &EfficiencyRow::chi0_bench)
      .def_readonly("chi1_bench", &EfficiencyRow::chi1_bench)
      .def_readonly("thresholds", &EfficiencyRow::thresholds)
      .def_readonly("thresholds_bench", &EfficiencyRow::thresholds_bench)
      .def_readonly("xi_star", &EfficiencyRow::xi_star);
  py::class_<PredictResult>(m, "PredictResult")
      .def_readonly("frontend", &PredictResult::frontend)
      .def_readonly("xi_star", &PredictResult::xi_star)
      .def_readonly("moments", &PredictResult::moments)
      .def_readonly("kl", &PredictResult::kl)
      .def_readonly("exact_mu0", &PredictResult::exact_mu0)
      .def_readonly("exact_mu1", &PredictResult::exact_mu1)
      .def_readonly("test", &PredictResult::test)
      .def_readonly("asn0", &PredictResult::asn0)
      .def_readonly("asn1", &PredictResult::asn1);
  py::class_<SimulateResult>(m, "SimulateResult")
      .def_readonly("test", &SimulateResult::test)
      .def_readonly("h0", &SimulateResult::h0)
      .def_readonly("h1", &SimulateResult::h1);
  m.def("run_accuracy", &run_accuracy, py::arg("config"),
        py::arg("threads") = 0);
  m.def("run_efficiency", &run_efficiency, py::arg("config"),
        py::arg("threads") = 0);
  m.def("run_predict", &run_predict, py::arg("config"), py::arg("threads") = 0);
  m.def("run_simulate", &run_simulate, py::arg("config"),
        py::arg("threads") = 0);
}
