#include "asprt/xi_tuner.hpp"

#include <cmath>
#include <limits>

namespace asprt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ratio_from_moments(const AllrMoments& m, double rho) {
  // sigma^rho is computed as (sigma^2)^(rho/2); variances come in squared.
  return std::abs(m.mu_tilde_1) * std::pow(m.sigma2_tilde_0, 0.5 * rho) /
         (std::abs(m.mu_tilde_0) * std::pow(m.sigma2_tilde_1, 0.5 * rho));
}

}  // namespace

void TunerConfig::validate() const {
  if (!(rho > 0.0)) throw ValidationError("drift exponent must be positive");
  if (grid_points < 3) throw ValidationError("grid needs at least 3 points");
  if (!(refine_tol > 0.0)) throw ValidationError("refine_tol must be positive");
}

double drift_ratio(const StatisticModel& model, const HypothesisPair& pair,
                   double xi, double rho, HyperplaneMode mode) {
  if (!(rho > 0.0)) throw ValidationError("drift exponent must be positive");
  const AllrMoments m = allr_moments(model, pair, xi, mode);
  if (m.mu_tilde_0 == 0.0)
    throw DegenerateDesignError("null-hypothesis drift vanishes at this xi");
  if (!(m.sigma2_tilde_1 > 0.0))
    throw DegenerateDesignError("alternative ALLR variance vanishes at this xi");
  return ratio_from_moments(m, rho);
}

double tune_xi(const StatisticModel& model, const HypothesisPair& pair,
               const TunerConfig& config, HyperplaneMode mode) {
  config.validate();
  detail::MomentWorkspace workspace(model, pair);

  // (nu - 1)^2, or +inf at xi where the ratio is undefined (e.g. xi = 1,
  // where the linearization point coincides with theta0).
  auto objective = [&](double xi) -> double {
    const AllrMoments& m = workspace.moments(xi, mode);
    if (m.mu_tilde_0 == 0.0 || !(m.sigma2_tilde_1 > 0.0)) return kInf;
    const double nu = ratio_from_moments(m, config.rho);
    if (!std::isfinite(nu)) return kInf;
    const double d = nu - 1.0;
    return d * d;
  };

  const std::vector<double> grid = linspace(0.0, 1.0, config.grid_points);
  double best_xi = 0.0;
  double best_obj = kInf;
  int best_index = -1;
  for (int i = 0; i < config.grid_points; ++i) {
    const double obj = objective(grid[static_cast<std::size_t>(i)]);
    if (obj < best_obj) {
      best_obj = obj;
      best_xi = grid[static_cast<std::size_t>(i)];
      best_index = i;
    }
  }
  if (best_index < 0)
    throw TuningError("drift ratio undefined on the whole grid");

  // Golden-section refinement inside the bracketing grid interval.
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = grid[static_cast<std::size_t>(std::max(best_index - 1, 0))];
  double hi = grid[static_cast<std::size_t>(
      std::min(best_index + 1, config.grid_points - 1))];
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  auto consider = [&](double x, double f) {
    if (f < best_obj) {
      best_obj = f;
      best_xi = x;
    }
  };
  consider(x1, f1);
  consider(x2, f2);
  while (hi - lo > config.refine_tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
      consider(x1, f1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
      consider(x2, f2);
    }
  }
  return best_xi;
}

}  // namespace asprt
