#pragma once
// Faithful measurement-noise model for sampled moments.
//
// Estimating mu_k from M_k single-shot measurements carries variance
// Var_k / M_k with Var_k = mu_2k - mu_k^2.  A total measurement budget
// (counted in block-encoding calls: one shot of moment k costs k calls) is
// split proportionally to the relative variance Var_k / mu_k^2, which
// equalizes the relative error of every sampled moment.  The estimate is
// modelled as mu_k + delta_k with independent Gaussian delta_k of standard
// deviation sqrt(Var_k / M_k).
//
// Draws come from a counter-based generator keyed by (seed, instance, k):
// every delta is reproducible in isolation, independent of evaluation order
// and thread schedule.

#include "qk/krylov.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace qk {

struct ShotAllocation {
  Eigen::VectorXd shots;     // M_k, k = 1..2D+1 (index k-1); fractional
  double budget = 0.0;       // requested total calls; equals sum_k k * M_k
  double calibration = 0.0;  // shots per unit relative variance
  bool exact = false;        // every variance vanished: moments are exact
};

// Split `budget` over moments k = 1..2D+1 proportionally to Var_k / mu_k^2.
// Needs moments up to k_max >= 2(2D+1).  Throws if budget < 1, if moments
// run short, or if some mu_k = 0 while Var_k > 0 (relative allocation
// undefined).  Zero-variance moments receive no shots; all variances zero
// sets the `exact` flag.
ShotAllocation allocate_shots(const MomentVector& moments, int subspace_dim,
                              double budget);

struct NoiseSample {
  Eigen::VectorXd delta;    // delta_k, k = 1..2D+1 (index k-1)
  Eigen::VectorXd sigma;    // standard deviation per k
  std::uint64_t seed = 0;
  std::uint64_t instance = 0;
};

// Gaussian perturbations for one noise instance; delta_k = 0 wherever
// M_k = 0 (unsampled moments stay exact).  Pure in (alloc, seed, instance).
NoiseSample sample_perturbation(const MomentVector& moments,
                                const ShotAllocation& alloc,
                                std::uint64_t seed, std::uint64_t instance);

// Noisy copy of a moment vector: mu~_k = mu_k + delta_k for k >= 1 (as far
// as the draw reaches), mu~_0 = 1 always.
MomentVector perturbed_moments(const MomentVector& moments,
                               const NoiseSample& noise);

// Standard normal deviate for counter (seed, instance, k): a pure function
// of its arguments.
double standard_normal(std::uint64_t seed, std::uint64_t instance,
                       std::uint64_t k);

}  // namespace qk
