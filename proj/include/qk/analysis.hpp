#pragma once
// Least-squares fits of convergence sweeps, extrapolation of resource
// requirements from the fitted laws, and the per-budget envelope of
// median-error curves.
//
// Fit ordinates are natural logarithms of the fractional error; `chi` and
// `lambda` are slope and intercept in that convention (points on 10^{-D}
// give chi = -ln 10 per unit D).  `chi_log10()` restates the slope in
// decades for direct comparison with base-10 quoted laws.

#include <optional>
#include <vector>

namespace qk {

enum class FitKind {
  loglinear_in_D,   // ln(err) = chi * D + lambda
  loglog_in_calls,  // ln(err) = chi * ln(calls) + lambda
  linear,           // err = chi * x + lambda
};

const char* to_string(FitKind kind);

struct Quartiles {
  double lower = 0.0;
  double median = 0.0;
  double upper = 0.0;
};

struct SweepPoint {
  int n_sites = 0;
  double control = 0.0;     // D for convergence fits, call budget otherwise
  double frac_error = 0.0;  // must be > 0 for fit inclusion
  int subspace_dim = 0;     // D carried alongside when control is a budget
  std::optional<Quartiles> quartiles;
};

struct FitModel {
  FitKind kind = FitKind::loglinear_in_D;
  double chi = 0.0;     // slope
  double lambda = 0.0;  // intercept
  double chi_se = 0.0;
  double lambda_se = 0.0;
  double cov_chi_lambda = 0.0;
  double r_squared = 1.0;  // coefficient of determination
  int n_points = 0;
  double chi_log10() const;  // slope in decades per unit control
};

// Ordinary least squares on the transformed coordinates.  Points with
// non-positive error are dropped; for loglinear_in_D, saturated points
// (error below 10x the double-precision floor) are dropped as well.  Two
// usable points give a zero-residual fit with NaN standard errors; fewer,
// or degenerate abscissae, throw.
FitModel fit(const std::vector<SweepPoint>& points, FitKind kind);

struct Requirement {
  double value = 0.0;  // control value at which the law crosses the target
  double se = 0.0;     // first-order propagated standard error
};

// Inverts the fitted law at `target_error`; requires chi < 0.  The value is
// in control units: a subspace dimension for loglinear_in_D, a call budget
// for loglog_in_calls.
Requirement extrapolate_requirement(const FitModel& model,
                                    double target_error);

// Per budget (the `control` field), the point with the smallest median
// error (quartiles' median when present, frac_error otherwise); ties go to
// the smaller subspace_dim.  Output ordered by budget.
std::vector<SweepPoint> best_median_curve(const std::vector<SweepPoint>& sweep);

double median_of(std::vector<double> values);
Quartiles quartiles_of(std::vector<double> values);

}  // namespace qk
