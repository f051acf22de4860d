#include "asprt/binary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <unordered_map>

#include "asprt/quadrature.hpp"

namespace asprt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCorrCap = 1.0 - 1e-12;
constexpr double kOrthantTol = 1e-8;

double clamp_corr(double rho) { return std::clamp(rho, -kCorrCap, kCorrCap); }

double phi2(double rho) { return 0.25 + std::asin(clamp_corr(rho)) / (2.0 * kPi); }

double phi3(double r12, double r13, double r23) {
  return 0.125 + (std::asin(clamp_corr(r12)) + std::asin(clamp_corr(r13)) +
                  std::asin(clamp_corr(r23))) /
                     (4.0 * kPi);
}

// Correlations of a quadrivariate orthant problem in the fixed order
// (r12, r13, r14, r23, r24, r34).
using Corr6 = std::array<double, 6>;

// One path term: variable `i` coupled to variable 4 with correlation `a`;
// j, k are the remaining two variables.
struct PathTerm {
  double a;    // rho_i4
  double rji;  // rho_ji
  double rki;  // rho_ki
  double rj4;  // rho_j4
  double rk4;  // rho_k4
  double rjk;  // rho_jk
};

double path_term(const PathTerm& p, double t) {
  const double c = t * p.a;
  const double den = 1.0 - c * c;
  const double aj = t * p.rj4;
  const double ak = t * p.rk4;
  const double qjk =
      (p.rji * p.rki - c * (p.rji * ak + aj * p.rki) + aj * ak) / den;
  const double vj =
      1.0 - (p.rji * p.rji - 2.0 * c * p.rji * aj + aj * aj) / den;
  const double vk =
      1.0 - (p.rki * p.rki - 2.0 * c * p.rki * ak + ak * ak) / den;
  const double scale = std::sqrt(std::max(vj, 1e-14) * std::max(vk, 1e-14));
  const double rc = clamp_corr((p.rjk - qjk) / scale);
  const double root = std::sqrt(std::max(1.0 - c * c, 1e-18));
  return p.a / (2.0 * kPi * root) * phi2(rc);
}

// Quadrivariate orthant probability: couple variable 4 in along a linear
// correlation path from independence, where the probability is half the
// trivariate closed form.
double phi4(const Corr6& raw) {
  Corr6 r;
  for (int i = 0; i < 6; ++i) r[i] = clamp_corr(raw[i]);

  const double anchor = 0.5 * phi3(r[0], r[1], r[3]);
  const std::array<PathTerm, 3> terms = {{
      {r[2], r[0], r[1], r[4], r[5], r[3]},
      {r[4], r[0], r[3], r[2], r[5], r[1]},
      {r[5], r[1], r[3], r[2], r[4], r[0]},
  }};
  bool coupled = false;
  for (const auto& p : terms) coupled = coupled || p.a != 0.0;
  if (!coupled) return anchor;

  const auto integrand = [&terms](double t) {
    double sum = 0.0;
    for (const auto& p : terms)
      if (p.a != 0.0) sum += path_term(p, t);
    return sum;
  };
  return anchor + adaptive_gauss_kronrod(integrand, 0.0, 1.0, kOrthantTol);
}

// Sign patterns on (r12, r13, r14, r23, r24, r34) induced by flipping the
// variable pairs {1,2}, {1,3}, {1,4}; with the identity they cover the eight
// reflection classes of the orthant decomposition of E[z1 z2 z3 z4].
constexpr std::array<std::array<double, 6>, 3> kFlips = {{
    {+1, -1, -1, -1, -1, +1},
    {-1, +1, -1, -1, +1, -1},
    {-1, -1, +1, +1, -1, -1},
}};

double quad_sign_moment(const Corr6& r) {
  double total = phi4(r);
  for (const auto& f : kFlips) {
    Corr6 flipped;
    for (int i = 0; i < 6; ++i) flipped[i] = f[i] * r[i];
    total += phi4(flipped);
  }
  return 4.0 * total - 1.0;
}

double pair_mean(double rho) { return 2.0 / kPi * std::asin(clamp_corr(rho)); }

int pair_id(int i, int j, int n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

Mat to_correlation(const Mat& r_y) {
  if (r_y.rows() != r_y.cols())
    throw ValidationError("covariance must be square");
  const int n = static_cast<int>(r_y.rows());
  Vec inv_sd(n);
  for (int i = 0; i < n; ++i) {
    const double v = r_y(i, i);
    if (!(v > 0.0))
      throw ValidationError("covariance has a non-positive diagonal entry");
    inv_sd(i) = 1.0 / std::sqrt(v);
  }
  Mat corr(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      corr(i, j) = clamp_corr(r_y(i, j) * inv_sd(i) * inv_sd(j));
    corr(i, i) = 1.0;
  }
  return corr;
}

struct Corr6Hash {
  std::size_t operator()(const Corr6& key) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (double v : key) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof(bits));
      h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

Vec hard_limit(const Vec& y) {
  if (!y.allFinite()) throw ValidationError("hard limiter input must be finite");
  Vec z(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) z(i) = y(i) >= 0.0 ? 1.0 : -1.0;
  return z;
}

Vec pair_statistics(const Vec& z) {
  const int n = static_cast<int>(z.size());
  Vec out(static_cast<Eigen::Index>(n) * (n - 1) / 2);
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out(p++) = z(i) * z(j);
  return out;
}

double orthant_probability(const Mat& r) {
  const int n = static_cast<int>(r.rows());
  if (r.cols() != n || n < 2 || n > 4)
    throw ValidationError("orthant probability supports dimensions 2 to 4");
  for (int i = 0; i < n; ++i) {
    if (std::abs(r(i, i) - 1.0) > 1e-8)
      throw ValidationError("correlation matrix must have a unit diagonal");
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(r(i, j) - r(j, i)) > 1e-8)
        throw ValidationError("correlation matrix must be symmetric");
      if (std::abs(r(i, j)) > 1.0 + 1e-12)
        throw ValidationError("correlation entries must lie in [-1, 1]");
    }
  }
  if (n == 2) return phi2(r(0, 1));
  if (n == 3) return phi3(r(0, 1), r(0, 2), r(1, 2));
  return phi4({r(0, 1), r(0, 2), r(0, 3), r(1, 2), r(1, 3), r(2, 3)});
}

double sign_product_moment(const Mat& r_y, int i, int j, int k, int l) {
  const int n = static_cast<int>(r_y.rows());
  for (int idx : {i, j, k, l})
    if (idx < 0 || idx >= n) throw ValidationError("moment index out of range");

  // Signs square to one, so indices cancel in pairs; only those appearing an
  // odd number of times survive.
  std::array<int, 4> idx = {i, j, k, l};
  std::sort(idx.begin(), idx.end());
  std::vector<int> odd;
  for (int p = 0; p < 4;) {
    int q = p;
    while (q < 4 && idx[q] == idx[p]) ++q;
    if ((q - p) % 2 == 1) odd.push_back(idx[p]);
    p = q;
  }

  auto rho = [&r_y](int a, int b) {
    return clamp_corr(r_y(a, b) / std::sqrt(r_y(a, a) * r_y(b, b)));
  };
  if (odd.empty()) return 1.0;
  if (odd.size() == 2) return pair_mean(rho(odd[0], odd[1]));
  return quad_sign_moment({rho(odd[0], odd[1]), rho(odd[0], odd[2]),
                           rho(odd[0], odd[3]), rho(odd[1], odd[2]),
                           rho(odd[1], odd[3]), rho(odd[2], odd[3])});
}

Vec binary_pair_means(const Mat& r_y) {
  const Mat corr = to_correlation(r_y);
  const int n = static_cast<int>(corr.rows());
  if (n < 2) throw ValidationError("pair statistics need at least 2 channels");
  Vec m(static_cast<Eigen::Index>(n) * (n - 1) / 2);
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(p++) = pair_mean(corr(i, j));
  return m;
}

Mat binary_pair_covariance(const Mat& r_y, int threads) {
  const Mat corr = to_correlation(r_y);
  const int n = static_cast<int>(corr.rows());
  if (n < 2) throw ValidationError("pair statistics need at least 2 channels");
  const int c = n * (n - 1) / 2;
  const Vec m = binary_pair_means(corr);

  Mat cov(c, c);
  for (int p = 0; p < c; ++p) cov(p, p) = 1.0 - m(p) * m(p);

  // Pairs sharing one index: the shared sign squares away and the cross
  // moment collapses to the arcsine mean of the two outer indices.
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int d = b + 1; d < n; ++d) {
        const int ab = pair_id(a, b, n);
        const int ad = pair_id(a, d, n);
        const int bd = pair_id(b, d, n);
        cov(ab, ad) = cov(ad, ab) = m(bd) - m(ab) * m(ad);
        cov(ab, bd) = cov(bd, ab) = m(ad) - m(ab) * m(bd);
        cov(ad, bd) = cov(bd, ad) = m(ab) - m(ad) * m(bd);
      }
    }
  }

  // Disjoint pairs: one fourth moment per 4-subset covers its three pairings.
  // Subsets with identical correlation patterns (bit-exact) share one
  // quadrature evaluation; ids are assigned in enumeration order, so the
  // result does not depend on the thread count.
  if (n >= 4) {
    std::vector<std::array<int, 4>> subsets;
    subsets.reserve(static_cast<std::size_t>(n) * (n - 1) * (n - 2) * (n - 3) / 24);
    std::vector<int> key_of;
    key_of.reserve(subsets.capacity());
    std::vector<Corr6> unique_keys;
    std::unordered_map<Corr6, int, Corr6Hash> key_ids;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        for (int cc = b + 1; cc < n; ++cc) {
          for (int d = cc + 1; d < n; ++d) {
            const Corr6 key = {corr(a, b),  corr(a, cc), corr(a, d),
                               corr(b, cc), corr(b, d),  corr(cc, d)};
            auto [it, inserted] =
                key_ids.emplace(key, static_cast<int>(unique_keys.size()));
            if (inserted) unique_keys.push_back(key);
            subsets.push_back({a, b, cc, d});
            key_of.push_back(it->second);
          }
        }
      }
    }

    std::vector<double> moments(unique_keys.size());
    parallel_for(static_cast<std::int64_t>(unique_keys.size()),
                 [&](std::int64_t u) {
                   moments[static_cast<std::size_t>(u)] =
                       quad_sign_moment(unique_keys[static_cast<std::size_t>(u)]);
                 },
                 threads);

    // Each (pair, pair) entry determines its 4-subset, so writes from
    // different subsets never collide.
    parallel_for(static_cast<std::int64_t>(subsets.size()),
                 [&](std::int64_t s) {
                   const auto& q = subsets[static_cast<std::size_t>(s)];
                   const double e4 = moments[static_cast<std::size_t>(
                       key_of[static_cast<std::size_t>(s)])];
                   const int ab = pair_id(q[0], q[1], n);
                   const int ac = pair_id(q[0], q[2], n);
                   const int ad = pair_id(q[0], q[3], n);
                   const int bc = pair_id(q[1], q[2], n);
                   const int bd = pair_id(q[1], q[3], n);
                   const int cd = pair_id(q[2], q[3], n);
                   cov(ab, cd) = cov(cd, ab) = e4 - m(ab) * m(cd);
                   cov(ac, bd) = cov(bd, ac) = e4 - m(ac) * m(bd);
                   cov(ad, bc) = cov(bc, ad) = e4 - m(ad) * m(bc);
                 },
                 threads);
  }

  // Quadrature error can leave the matrix a hair indefinite; shift tiny
  // negative spectra, reject anything clearly broken.
  Eigen::LLT<Mat> probe(cov);
  if (probe.info() == Eigen::Success) return cov;
  Eigen::SelfAdjointEigenSolver<Mat> eigen(cov, Eigen::EigenvaluesOnly);
  const double lambda_min = eigen.eigenvalues().minCoeff();
  if (lambda_min <= -1e-8)
    throw ConditioningError("assembled sign-product covariance is indefinite");
  cov.diagonal().array() += std::abs(std::min(lambda_min, 0.0)) + 1e-12;
  return cov;
}

BinaryPairwiseModel::BinaryPairwiseModel(CovarianceScenario scenario, int threads)
    : scenario_(std::move(scenario)), threads_(threads) {
  scenario_.validate();
  n_ = scenario_.dim();
  if (n_ < 2)
    throw ScenarioError("one-bit pairwise model needs at least 2 channels");
  pairs_.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) pairs_.emplace_back(i, j);
}

Vec BinaryPairwiseModel::statistic(const Vec& sample) const {
  if (sample.size() != n_)
    throw ValidationError("sample length does not match the scenario");
  return pair_statistics(hard_limit(sample));
}

Vec BinaryPairwiseModel::stat_mean(double theta) const {
  return binary_pair_means(build_covariance(scenario_, theta).matrix);
}

Mat BinaryPairwiseModel::stat_covariance(double theta) const {
  return binary_pair_covariance(build_covariance(scenario_, theta).matrix,
                                threads_);
}

std::pair<Vec, Mat> binary_suffstat_moments(const BinaryPairwiseModel& model,
                                            double theta) {
  const Mat r = build_covariance(model.scenario(), theta).matrix;
  return {binary_pair_means(r), binary_pair_covariance(r, model.threads())};
}

}  // namespace asprt
