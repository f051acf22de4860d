#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace asprt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error taxonomy. The category string is stable and machine-parseable; the
// CLI maps each category to a distinct exit code.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}
  const std::string& category() const { return category_; }

 private:
  std::string category_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error("validation", w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error("config", w) {}
};
struct ScenarioError : Error {
  explicit ScenarioError(const std::string& w) : Error("scenario", w) {}
};
struct ConditioningError : Error {
  explicit ConditioningError(const std::string& w) : Error("conditioning", w) {}
};
struct DegenerateDesignError : Error {
  explicit DegenerateDesignError(const std::string& w) : Error("degenerate_design", w) {}
};
struct TuningError : Error {
  explicit TuningError(const std::string& w) : Error("tuning", w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error("io", w) {}
};

// SNR values quoted in dB map to the linear scale as 10^(dB/20). All internal
// math is linear; the conversion happens once at the configuration boundary.
inline double db_to_linear(double db) { return std::pow(10.0, db / 20.0); }
inline double linear_to_db(double lin) { return 20.0 * std::log10(lin); }

std::vector<double> linspace(double lo, double hi, int n);

Mat kron(const Mat& a, const Mat& b);

// 0 resolves to the hardware concurrency (at least 1); >= 1 is taken as-is.
int resolve_threads(int requested);

// Static index partition over [0, n). fn must only touch per-index state, so
// the result cannot depend on the schedule or the worker count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn,
                  int threads = 0);

// Cholesky solver with a one-shot jitter fallback: when factorization of a
// symmetric matrix fails, 1e-12 * trace/n is added to the diagonal once and
// the factorization retried; a second failure is a hard conditioning error.
class SpdSolver {
 public:
  explicit SpdSolver(const Mat& m);
  Vec solve(const Vec& rhs) const;
  Mat solve(const Mat& rhs) const;
  double log_det() const;

 private:
  Eigen::LLT<Mat> llt_;
};

}  // namespace asprt
