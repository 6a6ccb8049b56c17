#pragma once
// Power moments of the rescaled Hamiltonian against a reference state, and
// the Hankel matrices of the generalized eigenvalue problem built from them.
//
// All downstream solvers work with mu_k = <psi0| (H/s)^k |psi0> for a fixed
// energy rescale s (default: the site count), so moment magnitudes stay
// polynomial in k instead of exploding with the spectral radius.

#include "qk/model.hpp"

#include <Eigen/Dense>

namespace qk {

struct MomentVector {
  double scale = 1.0;   // s: moments are powers of H / s
  Eigen::VectorXd mu;   // mu[k], k = 0..k_max; mu[0] = 1
  int k_max() const { return int(mu.size()) - 1; }
};

// Moments k = 0..k_max from the matrix-free operator.  psi0 must be a unit
// vector of matching dimension.  Uses the symmetric split
//   mu_{2j} = <v_j, v_j>,  mu_{2j+1} = <v_j, (H/s) v_j>,  v_j = (H/s)^j psi0,
// which halves the number of applications and the roundoff amplification.
MomentVector compute_moments(const GaugedOperator& op,
                             const Eigen::VectorXd& psi0, int k_max,
                             double scale);

// Dense-matrix variant (used for sector-restricted studies).
MomentVector compute_moments(const Eigen::MatrixXd& h,
                             const Eigen::VectorXd& psi0, int k_max,
                             double scale);

struct HankelPair {
  Eigen::MatrixXd s;  // overlap:  S_ij = mu_{i+j}
  Eigen::MatrixXd h;  // operator: H_ij = mu_{i+j+1}
};

// D x D Hankel pair over basis { (H/s)^i psi0, i < D }.  Needs k_max >= 2D-1.
HankelPair assemble_hankel(const MomentVector& moments, int subspace_dim);

// Hankel matrix of a perturbation sequence delta_k (k = 1..): entry (i, j) is
// delta_{i+j+offset}; offset 0 perturbs S (with delta_0 = 0), offset 1
// perturbs H.  Antidiagonals share one delta, exactly like the sampled
// moments they model.
Eigen::MatrixXd perturbation_hankel(const Eigen::VectorXd& delta,
                                    int subspace_dim, int offset);

// Single-shot measurement variances Var_k = mu_{2k} - mu_k^2 for k = 1..k_hi
// (requires k_max >= 2*k_hi).  Values in [-1e-9, 0) are clipped to zero;
// anything more negative signals inconsistent moments and throws.
Eigen::VectorXd single_shot_variances(const MomentVector& moments, int k_hi);

}  // namespace qk
