#pragma once
// Ground-state estimators over Krylov moment data.
//
//  * solve_gevp: canonically orthogonalized generalized eigenvalue problem
//    H c = E S c over the power basis { (H/s)^i psi0 }.
//  * qse:  noiseless estimate at subspace dimension D (machine-floor cut).
//  * tqse: thresholded estimate from sampled moments; the cut equals the
//    spectral norm of the overlap-matrix perturbation.
//  * pqse: partitioned estimate; builds the subspace in stages of small
//    dimension, re-anchoring each stage on the best polynomial state found
//    so far, and selects every stage dimension by minimizing the energy
//    variance of the candidate state (computed from the same sampled
//    moments).
//
// Energies are in reduced units (the eigenvalue of the H/scale problem);
// `energy_original` carries the same value multiplied back by the scale.

#include "qk/krylov.hpp"
#include "qk/noise.hpp"

#include <Eigen/Dense>

#include <vector>

namespace qk {

enum class SolveStatus { ok, unstable, failed };

const char* to_string(SolveStatus status);

struct EnergyResult {
  double energy = 0.0;            // reduced units (H / scale)
  double energy_original = 0.0;   // energy * scale
  int retained = 0;               // basis vectors kept after the cut
  int discarded = 0;              // basis vectors dropped by the cut
  double smallest_retained = 0.0; // smallest surviving overlap eigenvalue
  std::vector<int> partitions;    // chosen stage dimensions (partitioned only)
  SolveStatus status = SolveStatus::failed;
  Eigen::VectorXd coeffs;  // state coefficients, unit S-norm: Krylov basis
                           // for qse/tqse, monomial polynomial for pqse
};

// Canonical orthogonalization: eigendecompose S, discard eigenvalues
// <= max(epsilon_cut, 1e-14 * ||S||_2), project H onto the surviving
// directions, return its minimum eigenvalue.  epsilon_cut <= 0 applies the
// machine floor alone.  An empty surviving set or non-finite input yields
// status `failed` (never a throw: breakdown is a studied outcome).
EnergyResult solve_gevp(const Eigen::MatrixXd& s, const Eigen::MatrixXd& h,
                        double epsilon_cut);

// Noiseless estimate at subspace dimension D (needs k_max >= 2D-1).
EnergyResult qse(const MomentVector& moments, int subspace_dim);

// Thresholded estimate from sampled moments: solves (S + Delta_S, H +
// Delta_H) built from the perturbations in `noise`, with epsilon_cut =
// ||Delta_S||_2.  An empty noise sample means zero perturbation.
EnergyResult tqse(const MomentVector& moments, const NoiseSample& noise,
                  int subspace_dim);

// Polynomial state p(H/s)|psi0> in monomial coefficients; coeffs[j]
// multiplies (H/s)^j.  Inner products reduce to moment contractions.
struct PolyState {
  Eigen::VectorXd coeffs;
  int degree() const { return int(coeffs.size()) - 1; }
};

// Energy variance of a polynomial state under the supplied moments:
//   ( <p H^2 p> <p p> - <p H p>^2 ) / <p p>^2   in reduced units.
// Needs moments up to 2*degree + 2.
double state_variance(const PolyState& state, const MomentVector& moments);

// Partitioned estimate with total dimension budget sum(d_i - 1) = D_max - 1
// and per-stage dimensions up to d_cap.  Needs moments up to 2*D_max.  The
// result's `partitions` lists the chosen d_i and `coeffs` holds the final
// reference polynomial (unit S-norm under the noisy moments).  A failing
// first stage yields status `failed`; a later failure (or running out of
// moments for the next stage) stops early and reports the best result so
// far as `unstable`.
EnergyResult pqse(const MomentVector& moments, const NoiseSample& noise,
                  int subspace_dim_max, int d_cap);

}  // namespace qk
