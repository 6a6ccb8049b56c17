#include "qk/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qk {

namespace {

inline std::uint64_t mix64(std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ull;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
  return v ^ (v >> 31);
}

// uniform in (0, 1]: never zero, safe under log()
inline double uniform_open(std::uint64_t h) {
  return (double(h >> 11) + 1.0) * 0x1p-53;
}

}  // namespace

double standard_normal(std::uint64_t seed, std::uint64_t instance,
                       std::uint64_t k) {
  std::uint64_t key = mix64(seed);
  key = mix64(key ^ mix64(instance ^ 0x5851f42d4c957f2dull));
  key = mix64(key ^ mix64(k ^ 0x14057b7ef767814full));
  const double u1 = uniform_open(mix64(key ^ 1));
  const double u2 = uniform_open(mix64(key ^ 2));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

ShotAllocation allocate_shots(const MomentVector& moments, int subspace_dim,
                              double budget) {
  if (subspace_dim < 1)
    throw std::invalid_argument("noise: subspace dimension must be >= 1");
  if (!(budget >= 1.0))
    throw std::invalid_argument("noise: measurement budget must be >= 1");
  const int k_hi = 2 * subspace_dim + 1;
  // single_shot_variances enforces k_max >= 2 * k_hi
  const Eigen::VectorXd variances = single_shot_variances(moments, k_hi);

  ShotAllocation out;
  out.shots = Eigen::VectorXd::Zero(k_hi);
  out.budget = budget;

  // relative variances r_k = Var_k / mu_k^2 and their call-weighted total
  double weighted = 0.0;
  Eigen::VectorXd rel = Eigen::VectorXd::Zero(k_hi);
  bool any = false;
  for (int k = 1; k <= k_hi; ++k) {
    const double var = variances[k - 1];
    if (var == 0.0) continue;
    const double mu = moments.mu[k];
    if (mu == 0.0)
      throw std::domain_error(
          "noise: mu_" + std::to_string(k) +
          " vanishes with nonzero variance; relative allocation undefined");
    rel[k - 1] = var / (mu * mu);
    weighted += k * rel[k - 1];
    any = true;
  }
  if (!any) {
    out.exact = true;  // reference is an eigenstate; moments are exact
    return out;
  }
  out.calibration = budget / weighted;
  for (int k = 1; k <= k_hi; ++k)
    out.shots[k - 1] = out.calibration * rel[k - 1];
  return out;
}

NoiseSample sample_perturbation(const MomentVector& moments,
                                const ShotAllocation& alloc,
                                std::uint64_t seed, std::uint64_t instance) {
  const int k_hi = int(alloc.shots.size());
  const Eigen::VectorXd variances =
      alloc.exact ? Eigen::VectorXd::Zero(k_hi)
                  : single_shot_variances(moments, k_hi);
  NoiseSample noise;
  noise.seed = seed;
  noise.instance = instance;
  noise.delta = Eigen::VectorXd::Zero(k_hi);
  noise.sigma = Eigen::VectorXd::Zero(k_hi);
  for (int k = 1; k <= k_hi; ++k) {
    const double m_k = alloc.shots[k - 1];
    if (m_k <= 0.0) continue;
    noise.sigma[k - 1] = std::sqrt(variances[k - 1] / m_k);
    noise.delta[k - 1] =
        noise.sigma[k - 1] * standard_normal(seed, instance, std::uint64_t(k));
  }
  return noise;
}

MomentVector perturbed_moments(const MomentVector& moments,
                               const NoiseSample& noise) {
  MomentVector out = moments;
  const int reach = std::min(moments.k_max(), int(noise.delta.size()));
  for (int k = 1; k <= reach; ++k) out.mu[k] += noise.delta[k - 1];
  out.mu[0] = 1.0;
  return out;
}

}  // namespace qk
