#include "qk/krylov.hpp"

#include <cmath>
#include <stdexcept>

namespace qk {

namespace {

void check_unit(const Eigen::VectorXd& psi0) {
  if (std::abs(psi0.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("krylov: reference state must be unit norm");
}

void check_scale(double scale) {
  if (!(scale > 0.0))
    throw std::invalid_argument("krylov: energy rescale must be positive");
}

// Shared moment recursion over an abstract apply().
template <class Apply>
MomentVector moments_impl(Apply&& apply_op, const Eigen::VectorXd& psi0,
                          int k_max, double scale) {
  check_unit(psi0);
  check_scale(scale);
  if (k_max < 0) throw std::invalid_argument("krylov: k_max must be >= 0");
  MomentVector out;
  out.scale = scale;
  out.mu.resize(k_max + 1);
  out.mu[0] = 1.0;
  Eigen::VectorXd v = psi0;
  for (int j = 0; 2 * j <= k_max; ++j) {
    if (j > 0) out.mu[2 * j] = v.squaredNorm();
    if (2 * j + 1 <= k_max) {
      Eigen::VectorXd w = apply_op(v) / scale;
      out.mu[2 * j + 1] = v.dot(w);
      v.swap(w);
    }
  }
  return out;
}

}  // namespace

MomentVector compute_moments(const GaugedOperator& op,
                             const Eigen::VectorXd& psi0, int k_max,
                             double scale) {
  if (psi0.size() != op.dimension())
    throw std::invalid_argument("krylov: state dimension mismatch");
  return moments_impl([&op](const Eigen::VectorXd& v) { return op.apply(v); },
                      psi0, k_max, scale);
}

MomentVector compute_moments(const Eigen::MatrixXd& h,
                             const Eigen::VectorXd& psi0, int k_max,
                             double scale) {
  if (psi0.size() != h.rows() || h.rows() != h.cols())
    throw std::invalid_argument("krylov: state dimension mismatch");
  return moments_impl(
      [&h](const Eigen::VectorXd& v) { return Eigen::VectorXd(h * v); }, psi0,
      k_max, scale);
}

HankelPair assemble_hankel(const MomentVector& moments, int subspace_dim) {
  if (subspace_dim < 1)
    throw std::invalid_argument("krylov: subspace dimension must be >= 1");
  if (moments.k_max() < 2 * subspace_dim - 1)
    throw std::invalid_argument(
        "krylov: need moments up to 2D-1 to assemble a D-dimensional pair");
  HankelPair pair;
  pair.s.resize(subspace_dim, subspace_dim);
  pair.h.resize(subspace_dim, subspace_dim);
  for (int i = 0; i < subspace_dim; ++i)
    for (int j = 0; j < subspace_dim; ++j) {
      pair.s(i, j) = moments.mu[i + j];
      pair.h(i, j) = moments.mu[i + j + 1];
    }
  return pair;
}

Eigen::MatrixXd perturbation_hankel(const Eigen::VectorXd& delta,
                                    int subspace_dim, int offset) {
  if (offset != 0 && offset != 1)
    throw std::invalid_argument("krylov: perturbation offset is 0 or 1");
  const int need = 2 * (subspace_dim - 1) + offset;
  if (int(delta.size()) < need)
    throw std::invalid_argument(
        "krylov: perturbation sequence too short for requested dimension");
  Eigen::MatrixXd out(subspace_dim, subspace_dim);
  for (int i = 0; i < subspace_dim; ++i)
    for (int j = 0; j < subspace_dim; ++j) {
      const int k = i + j + offset;
      out(i, j) = (k == 0) ? 0.0 : delta[k - 1];  // delta stored from k = 1
    }
  return out;
}

Eigen::VectorXd single_shot_variances(const MomentVector& moments, int k_hi) {
  if (k_hi < 1)
    throw std::invalid_argument("krylov: variance range must start at k >= 1");
  if (moments.k_max() < 2 * k_hi)
    throw std::invalid_argument(
        "krylov: need moments up to 2k to form Var_k = mu_2k - mu_k^2");
  Eigen::VectorXd var(k_hi);
  for (int k = 1; k <= k_hi; ++k) {
    double v = moments.mu[2 * k] - moments.mu[k] * moments.mu[k];
    if (v < -1e-9)
      throw std::domain_error(
          "krylov: variance " + std::to_string(v) + " at k=" +
          std::to_string(k) + " is negative beyond roundoff tolerance");
    var[k - 1] = std::max(v, 0.0);
  }
  return var;
}

}  // namespace qk
