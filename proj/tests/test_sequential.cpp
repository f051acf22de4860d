#include <doctest.h>

#include <cmath>
#include <vector>

#include "asprt/sequential.hpp"

using namespace asprt;

namespace {

CovarianceScenario superhet(double kappa, int k0 = 1) {
  CovarianceScenario sc;
  sc.kind = ScenarioKind::superheterodyne;
  sc.K0 = k0;
  sc.kappa = kappa;
  return sc;
}

CovarianceScenario homodyne(double kappa, int m_a, double phi = 5.0) {
  CovarianceScenario sc;
  sc.kind = ScenarioKind::homodyne_array;
  sc.K0 = 1;
  sc.kappa = kappa;
  sc.M_A = m_a;
  sc.phi_deg = phi;
  return sc;
}

}  // namespace

TEST_SUITE("sequential") {

TEST_CASE("symmetric milli-level design") {
  const TestConfig t = wald_design(1e-3, 1e-3);
  CHECK(t.L0 == doctest::Approx(-6.906755).epsilon(1e-6));
  CHECK(t.L1 == doctest::Approx(6.906755).epsilon(1e-6));
  CHECK(t.N0 == doctest::Approx(-6.892941).epsilon(1e-6));
  CHECK(t.N1 == doctest::Approx(6.892941).epsilon(1e-6));
}

TEST_CASE("asymmetric design") {
  const TestConfig t = wald_design(0.01, 0.001);
  CHECK(t.L0 == doctest::Approx(-6.897705).epsilon(1e-6));
  CHECK(t.L1 == doctest::Approx(4.604170).epsilon(1e-6));
  CHECK(t.N0 == doctest::Approx(0.99 * -6.897705 + 0.01 * 4.604170)
                    .epsilon(1e-6));
  CHECK(t.N1 == doctest::Approx(0.001 * -6.897705 + 0.999 * 4.604170)
                    .epsilon(1e-6));
}

TEST_CASE("designs reject out-of-range error targets") {
  CHECK_THROWS_AS(wald_design(0.0, 0.001), ValidationError);
  CHECK_THROWS_AS(wald_design(0.001, 0.5), ValidationError);
  CHECK_THROWS_AS(wald_design(-0.1, 0.001), ValidationError);
}

TEST_CASE("predicted stopping times") {
  const TestConfig t = wald_design(1e-3, 1e-3);
  const auto [asn0, asn1] = predict_asn(t, -0.1, 0.2);
  CHECK(asn0 == doctest::Approx(68.92941).epsilon(1e-6));
  CHECK(asn1 == doctest::Approx(34.464705).epsilon(1e-6));

  CHECK_THROWS_AS(predict_asn(t, 0.1, 0.2), DegenerateDesignError);
  CHECK_THROWS_AS(predict_asn(t, -0.1, -0.2), DegenerateDesignError);
  CHECK_THROWS_AS(predict_asn(t, 0.0, 0.2), DegenerateDesignError);
  CHECK_THROWS_AS(predict_asn(TestConfig{}, -0.1, 0.2), ValidationError);
}

TEST_CASE("truncation default is a generous multiple") {
  CHECK(default_truncation(50.0) == 5000);
  CHECK(default_truncation(100.0) == 5000);
  CHECK(default_truncation(137.7) == 6885);
  CHECK(default_truncation(1000.0) == 50000);
  CHECK_THROWS_AS(default_truncation(0.0), ValidationError);
  CHECK_THROWS_AS(default_truncation(-3.0), ValidationError);
  CHECK_THROWS_AS(default_truncation(std::nan("")), ValidationError);
}

TEST_CASE("runs stop on the first crossing, boundary inclusive") {
  TestConfig t = wald_design(1e-3, 1e-3);
  t.max_samples = 1000;

  const auto up = sprt_run(t, [&](std::int64_t) { return t.L1 / 3.0; });
  CHECK(up.decision == Decision::H1);
  CHECK(up.n_d == 3);  // the sum equals L1 exactly on the third block

  const auto down = sprt_run(t, [&](std::int64_t) { return -1.0; });
  CHECK(down.decision == Decision::H0);
  CHECK(down.n_d == 7);

  const auto stuck = sprt_run(t, [&](std::int64_t i) {
    return i % 2 == 0 ? 0.5 : -0.5;
  });
  CHECK(stuck.decision == Decision::truncated);
  CHECK(stuck.n_d == 1000);
}

TEST_CASE("the running sum stays interior before the decision") {
  TestConfig t = wald_design(1e-2, 1e-2);
  t.max_samples = 10000;
  std::vector<double> increments;
  std::uint64_t state = 88172645463325252ull;
  auto next_rand = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
  };
  for (int rep = 0; rep < 50; ++rep) {
    increments.clear();
    const auto out = sprt_run(t, [&](std::int64_t) {
      increments.push_back(next_rand());
      return increments.back();
    });
    REQUIRE(out.decision != Decision::truncated);
    double sum = 0.0;
    for (std::int64_t n = 0; n + 1 < out.n_d; ++n) {
      sum += increments[static_cast<std::size_t>(n)];
      CHECK(sum > t.L0);
      CHECK(sum < t.L1);
    }
    sum += increments[static_cast<std::size_t>(out.n_d - 1)];
    if (out.decision == Decision::H1) CHECK(sum >= t.L1);
    if (out.decision == Decision::H0) CHECK(sum <= t.L0);
  }
}

TEST_CASE("runs demand configured thresholds and a cap") {
  const TestConfig blank;
  CHECK_THROWS_AS(sprt_run(blank, [](std::int64_t) { return 1.0; }),
                  ValidationError);
  TestConfig uncapped = wald_design(1e-3, 1e-3);
  CHECK_THROWS_AS(sprt_run(uncapped, [](std::int64_t) { return 1.0; }),
                  ValidationError);
}

TEST_CASE("efficiency ratios and comparator counts") {
  const TestConfig t = wald_design(1e-3, 1e-3);
  const auto sc = superhet(4.0);  // K = 4, dim 4
  const auto report = efficiency_metrics({-0.05, 0.05}, {-0.1, 0.2}, sc, 1,
                                         std::nullopt, std::nullopt, t);
  CHECK(report.chi0 == doctest::Approx(0.5));
  CHECK(report.chi1 == doctest::Approx(0.25));
  CHECK(report.sc == doctest::Approx(4.0));  // one comparator per channel
  // One-bit systems are priced at their own drifts.
  CHECK(report.asc0 == doctest::Approx(4.0 * t.N0 / -0.05));
  CHECK(report.asc1 == doctest::Approx(4.0 * t.N1 / 0.05));
  CHECK(report.threshold == doctest::Approx(4.0 / 2.0));
  CHECK(!report.threshold_bench.has_value());

  const auto multi = efficiency_metrics({-0.05, 0.05}, {-0.1, 0.2}, sc, 2,
                                        std::nullopt, std::nullopt, t);
  CHECK(multi.sc == doctest::Approx(12.0));  // 3 levels per channel
  CHECK(multi.asc0 == doctest::Approx(12.0 * t.N0 / -0.1));
  CHECK(multi.asc1 == doctest::Approx(12.0 * t.N1 / 0.2));
  CHECK(multi.threshold == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("efficiency break-even thresholds have closed forms") {
  const auto two_bit_homodyne = efficiency_metrics(
      {-0.05, 0.05}, {-0.1, 0.2}, homodyne(1.0, 4), 2);
  CHECK(two_bit_homodyne.threshold == 1.0 / 3.0);  // exact in every rounding

  const auto four_bit_superhet = efficiency_metrics(
      {-0.05, 0.05}, {-0.1, 0.2}, superhet(12.402), 4);
  CHECK(four_bit_superhet.threshold ==
        doctest::Approx(0.4134).epsilon(1e-10));
}

TEST_CASE("antenna benchmark rescales the break-even threshold") {
  const auto sc = homodyne(1.0, 8);
  const auto report = efficiency_metrics(
      {-0.05, 0.05}, {-0.1, 0.2}, sc, 2, 4,
      std::pair<double, double>{-0.08, 0.16}, wald_design(1e-3, 1e-3));
  REQUIRE(report.chi0_bench.has_value());
  CHECK(*report.chi0_bench == doctest::Approx(0.625));
  CHECK(*report.chi1_bench == doctest::Approx(0.3125));
  REQUIRE(report.threshold_bench.has_value());
  CHECK(*report.threshold_bench == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("efficiency input validation") {
  const auto sc = superhet(4.0);
  CHECK_THROWS_AS(efficiency_metrics({-0.05, 0.05}, {-0.1, 0.2}, sc, 0),
                  ValidationError);
  CHECK_THROWS_AS(efficiency_metrics({-0.05, 0.05}, {0.0, 0.2}, sc, 1),
                  DegenerateDesignError);
  // Benchmark arguments must come together, and only on the array.
  CHECK_THROWS_AS(efficiency_metrics({-0.05, 0.05}, {-0.1, 0.2}, sc, 1, 4,
                                     std::nullopt),
                  ValidationError);
  CHECK_THROWS_AS(efficiency_metrics({-0.05, 0.05}, {-0.1, 0.2}, sc, 1, 4,
                                     std::pair<double, double>{-0.08, 0.16}),
                  ValidationError);
  // Untunable one-bit designs fall back to the ideal stopping time.
  const auto zero = efficiency_metrics({0.0, 0.0}, {-0.1, 0.2}, sc, 1);
  CHECK(zero.chi0 == 0.0);
  CHECK(zero.chi1 == 0.0);
  CHECK(zero.asc0 > 0.0);
}

}  // TEST_SUITE
