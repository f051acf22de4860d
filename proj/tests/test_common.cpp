#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numeric>
#include <vector>

#include "asprt/common.hpp"
#include "asprt/quadrature.hpp"

using namespace asprt;

TEST_SUITE("common") {

TEST_CASE("decibel conversion is the amplitude convention") {
  CHECK(db_to_linear(0.0) == doctest::Approx(1.0));
  CHECK(db_to_linear(20.0) == doctest::Approx(10.0));
  CHECK(db_to_linear(-20.0) == doctest::Approx(0.1));
  CHECK(db_to_linear(6.0) == doctest::Approx(1.9952623149688795));
  CHECK(linear_to_db(db_to_linear(-9.0)) == doctest::Approx(-9.0));
}

TEST_CASE("linspace hits both endpoints exactly") {
  const auto g = linspace(-20.0, 0.0, 21);
  REQUIRE(g.size() == 21);
  CHECK(g.front() == -20.0);
  CHECK(g.back() == 0.0);
  CHECK(g[10] == doctest::Approx(-10.0));

  const auto single = linspace(3.5, 9.0, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 3.5);
}

TEST_CASE("kron lays out blocks row-major in the first factor") {
  Mat a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 5, 6, 7;
  const Mat k = kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  CHECK(k(0, 1) == 5.0);   // a(0,0) * b(0,1)
  CHECK(k(0, 3) == 10.0);  // a(0,1) * b(0,1)
  CHECK(k(3, 1) == 21.0);  // a(1,0) * b(1,1)
  CHECK(k(2, 2) == 0.0);   // a(1,1) * b(0,0)
  CHECK(k(3, 3) == 28.0);
}

TEST_CASE("resolve_threads maps 0 to a positive count") {
  CHECK(resolve_threads(0) >= 1);
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(1) == 1);
}

TEST_CASE("parallel_for covers every index exactly once") {
  const std::int64_t n = 1000;
  for (int workers : {1, 3, 8}) {
    std::vector<int> hits(n, 0);
    parallel_for(n, [&](std::int64_t i) { hits[i] += 1; }, workers);
    CHECK(std::accumulate(hits.begin(), hits.end(), 0) == n);
    CHECK(*std::min_element(hits.begin(), hits.end()) == 1);
  }
}

TEST_CASE("parallel_for propagates worker exceptions") {
  CHECK_THROWS_AS(
      parallel_for(16, [](std::int64_t i) {
        if (i == 7) throw ValidationError("boom");
      }, 4),
      ValidationError);
  CHECK_NOTHROW(parallel_for(0, [](std::int64_t) {}, 4));
}

TEST_CASE("SpdSolver solves and reports the log determinant") {
  Mat m(2, 2);
  m << 2, 0, 0, 3;
  const SpdSolver solver(m);
  Vec rhs(2);
  rhs << 4, 9;
  const Vec x = solver.solve(rhs);
  CHECK(x(0) == doctest::Approx(2.0));
  CHECK(x(1) == doctest::Approx(3.0));
  CHECK(solver.log_det() == doctest::Approx(std::log(6.0)));

  Mat spd(3, 3);
  spd << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  const SpdSolver s2(spd);
  const Mat eye = Mat::Identity(3, 3);
  const Mat inv = s2.solve(eye);
  CHECK((spd * inv - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("SpdSolver rejects indefinite and non-square input") {
  Mat indefinite(2, 2);
  indefinite << 1, 2, 2, 1;  // eigenvalues 3 and -1
  CHECK_THROWS_AS(SpdSolver{indefinite}, ConditioningError);

  Mat rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(SpdSolver{rect}, ValidationError);
}

TEST_CASE("quadrature integrates smooth functions to the requested tolerance") {
  const double s = adaptive_gauss_kronrod(
      [](double x) { return std::sin(x); }, 0.0, M_PI, 1e-10);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-10));

  const double e = adaptive_gauss_kronrod(
      [](double x) { return std::exp(x); }, 0.0, 1.0, 1e-10);
  CHECK(e == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-10));

  // Degree-6 polynomial: inside the Kronrod exactness range, no splits needed.
  const double p = adaptive_gauss_kronrod(
      [](double x) { return x * x * x * x * x * x; }, 0.0, 1.0, 1e-12);
  CHECK(p == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("quadrature subdivides around a sharp peak") {
  // Narrow Gaussian bump: forces adaptive refinement.
  const double w = 1e-3;
  const double v = adaptive_gauss_kronrod(
      [w](double x) { return std::exp(-x * x / (2 * w * w)); }, -1.0, 1.0,
      1e-10);
  CHECK(v == doctest::Approx(w * std::sqrt(2.0 * M_PI)).epsilon(1e-6));
}

}  // TEST_SUITE
