#include "qk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace qk {

namespace {

// Linear interpolation percentile on sorted data, p in [0, 1].
double percentile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = p * double(n - 1);
  const std::size_t lo = std::size_t(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  return sorted[lo] + (h - double(lo)) * (sorted[hi] - sorted[lo]);
}

double point_median(const SweepPoint& p) {
  return p.quartiles ? p.quartiles->median : p.frac_error;
}

}  // namespace

const char* to_string(FitKind kind) {
  switch (kind) {
    case FitKind::loglinear_in_D: return "loglinear_in_D";
    case FitKind::loglog_in_calls: return "loglog_in_calls";
    case FitKind::linear: return "linear";
  }
  return "linear";
}

double FitModel::chi_log10() const { return chi / std::log(10.0); }

FitModel fit(const std::vector<SweepPoint>& points, FitKind kind) {
  const double floor10 = 10.0 * std::numeric_limits<double>::epsilon();
  std::vector<double> xs, ys;
  for (const SweepPoint& p : points) {
    switch (kind) {
      case FitKind::loglinear_in_D:
        if (!(p.frac_error > 0) || p.frac_error < floor10) continue;
        xs.push_back(p.control);
        ys.push_back(std::log(p.frac_error));
        break;
      case FitKind::loglog_in_calls:
        if (!(p.frac_error > 0) || !(p.control > 0)) continue;
        xs.push_back(std::log(p.control));
        ys.push_back(std::log(p.frac_error));
        break;
      case FitKind::linear:
        xs.push_back(p.control);
        ys.push_back(p.frac_error);
        break;
    }
  }
  const int n = int(xs.size());
  if (n < 2) throw std::invalid_argument("fit: needs at least two points");

  double x_bar = 0, y_bar = 0;
  for (int i = 0; i < n; ++i) {
    x_bar += xs[i];
    y_bar += ys[i];
  }
  x_bar /= n;
  y_bar /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - x_bar) * (xs[i] - x_bar);
    sxy += (xs[i] - x_bar) * (ys[i] - y_bar);
  }
  if (!(sxx > 0)) throw std::invalid_argument("fit: degenerate abscissae");

  FitModel out;
  out.kind = kind;
  out.n_points = n;
  out.chi = sxy / sxx;
  out.lambda = y_bar - out.chi * x_bar;
  double ssr = 0, sst = 0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[i] - (out.chi * xs[i] + out.lambda);
    ssr += r * r;
    sst += (ys[i] - y_bar) * (ys[i] - y_bar);
  }
  out.r_squared = sst > 0 ? 1.0 - ssr / sst : 1.0;
  if (n > 2) {
    const double s2 = ssr / (n - 2);
    out.chi_se = std::sqrt(s2 / sxx);
    out.lambda_se = std::sqrt(s2 * (1.0 / n + x_bar * x_bar / sxx));
    out.cov_chi_lambda = -x_bar * s2 / sxx;
  } else {  // zero-residual: standard errors undefined
    out.chi_se = std::numeric_limits<double>::quiet_NaN();
    out.lambda_se = std::numeric_limits<double>::quiet_NaN();
    out.cov_chi_lambda = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

Requirement extrapolate_requirement(const FitModel& model,
                                    double target_error) {
  if (!(model.chi < 0))
    throw std::domain_error(
        "extrapolate_requirement: non-negative slope never crosses the "
        "target");
  const bool log_target = model.kind != FitKind::linear;
  if (log_target && !(target_error > 0))
    throw std::invalid_argument(
        "extrapolate_requirement: target error must be positive");

  const double y = log_target ? std::log(target_error) : target_error;
  const double u = (y - model.lambda) / model.chi;
  // u = (y - lambda)/chi:  du/dlambda = -1/chi, du/dchi = -u/chi.
  const double var_u =
      (model.lambda_se * model.lambda_se + u * u * model.chi_se * model.chi_se +
       2.0 * u * model.cov_chi_lambda) /
      (model.chi * model.chi);
  const double se_u = var_u > 0 ? std::sqrt(var_u) : 0.0;

  Requirement out;
  if (model.kind == FitKind::loglog_in_calls) {
    out.value = std::exp(u);
    out.se = out.value * se_u;
  } else {
    out.value = u;
    out.se = se_u;
  }
  return out;
}

std::vector<SweepPoint> best_median_curve(
    const std::vector<SweepPoint>& sweep) {
  std::map<double, SweepPoint> best;
  for (const SweepPoint& p : sweep) {
    auto it = best.find(p.control);
    if (it == best.end()) {
      best.emplace(p.control, p);
      continue;
    }
    const double incumbent = point_median(it->second);
    const double challenger = point_median(p);
    if (challenger < incumbent ||
        (challenger == incumbent && p.subspace_dim < it->second.subspace_dim))
      it->second = p;
  }
  std::vector<SweepPoint> out;
  out.reserve(best.size());
  for (const auto& [budget, point] : best) out.push_back(point);
  return out;
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median_of: empty input");
  std::sort(values.begin(), values.end());
  return percentile_sorted(values, 0.5);
}

Quartiles quartiles_of(std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("quartiles_of: empty input");
  std::sort(values.begin(), values.end());
  Quartiles out;
  out.lower = percentile_sorted(values, 0.25);
  out.median = percentile_sorted(values, 0.5);
  out.upper = percentile_sorted(values, 0.75);
  return out;
}

}  // namespace qk
