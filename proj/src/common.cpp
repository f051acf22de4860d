#include "asprt/common.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace asprt {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw ValidationError("linspace needs at least one point");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
  out.back() = hi;
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn,
                  int threads) {
  if (n <= 0) return;
  const int workers = std::min<std::int64_t>(resolve_threads(threads), n);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = n * w / workers;
    const std::int64_t end = n * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

SpdSolver::SpdSolver(const Mat& m) {
  if (m.rows() != m.cols()) throw ValidationError("SpdSolver needs a square matrix");
  llt_.compute(m);
  if (llt_.info() != Eigen::Success) {
    const double jitter = 1e-12 * m.trace() / static_cast<double>(m.rows());
    Mat repaired = m;
    repaired.diagonal().array() += jitter;
    llt_.compute(repaired);
    if (llt_.info() != Eigen::Success) {
      throw ConditioningError("matrix is not positive definite (jitter exhausted)");
    }
  }
}

Vec SpdSolver::solve(const Vec& rhs) const { return llt_.solve(rhs); }

Mat SpdSolver::solve(const Mat& rhs) const { return llt_.solve(rhs); }

double SpdSolver::log_det() const {
  return 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
}

}  // namespace asprt
