#include "qk/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qk {

namespace {

constexpr double kMachineFloorFactor = 1e-14;
constexpr double kTieTol = 1e-12;

// Spectral norm of a symmetric matrix (Hankel matrices are symmetric).
double spectral_norm_sym(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Polynomial product: (a * b)[t] = sum_j a[j] b[t-j].
Eigen::VectorXd poly_mul(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.size() + b.size() - 1);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// delta_k with delta_0 = 0 and zero past the sampled range.
double delta_at(const Eigen::VectorXd& delta, int k) {
  if (k <= 0 || k > delta.size()) return 0.0;
  return delta[k - 1];
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::ok: return "ok";
    case SolveStatus::unstable: return "unstable";
    case SolveStatus::failed: return "failed";
  }
  return "failed";
}

EnergyResult solve_gevp(const Eigen::MatrixXd& s, const Eigen::MatrixXd& h,
                        double epsilon_cut) {
  EnergyResult out;
  const int d = int(s.rows());
  if (d == 0 || s.cols() != d || h.rows() != d || h.cols() != d) return out;
  if (!s.allFinite() || !h.allFinite()) return out;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.info() != Eigen::Success) return out;
  const Eigen::VectorXd& vals = es.eigenvalues();  // ascending
  const double s_norm = vals.cwiseAbs().maxCoeff();
  const double cut = std::max(epsilon_cut, kMachineFloorFactor * s_norm);

  std::vector<int> keep;
  for (int i = 0; i < d; ++i)
    if (vals[i] > cut) keep.push_back(i);
  out.retained = int(keep.size());
  out.discarded = d - out.retained;
  if (keep.empty()) return out;
  out.smallest_retained = vals[keep.front()];

  Eigen::MatrixXd w(d, out.retained);  // canonical orthogonalization
  for (int c = 0; c < out.retained; ++c)
    w.col(c) = es.eigenvectors().col(keep[c]) / std::sqrt(vals[keep[c]]);

  Eigen::MatrixXd h_red = w.transpose() * h * w;
  h_red = 0.5 * (h_red + h_red.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(h_red);
  if (eh.info() != Eigen::Success) return out;

  out.energy = eh.eigenvalues()[0];
  out.energy_original = out.energy;
  if (!std::isfinite(out.energy)) return out;

  out.coeffs = w * eh.eigenvectors().col(0);
  const double s_sq = out.coeffs.dot(s * out.coeffs);
  if (s_sq > 0.0) out.coeffs /= std::sqrt(s_sq);
  out.status = SolveStatus::ok;
  return out;
}

EnergyResult qse(const MomentVector& moments, int subspace_dim) {
  HankelPair hk = assemble_hankel(moments, subspace_dim);
  EnergyResult out = solve_gevp(hk.s, hk.h, 0.0);
  out.energy_original = out.energy * moments.scale;
  return out;
}

EnergyResult tqse(const MomentVector& moments, const NoiseSample& noise,
                  int subspace_dim) {
  const MomentVector noisy = perturbed_moments(moments, noise);
  HankelPair hk = assemble_hankel(noisy, subspace_dim);
  double cut = 0.0;
  if (noise.delta.size() > 0) {
    Eigen::VectorXd padded =
        Eigen::VectorXd::Zero(std::max<int>(int(noise.delta.size()),
                                            2 * subspace_dim - 2));
    padded.head(noise.delta.size()) = noise.delta;
    cut = spectral_norm_sym(perturbation_hankel(padded, subspace_dim, 0));
  }
  EnergyResult out = solve_gevp(hk.s, hk.h, cut);
  out.energy_original = out.energy * moments.scale;
  return out;
}

double state_variance(const PolyState& state, const MomentVector& moments) {
  const int deg = state.degree();
  if (deg < 0) throw std::invalid_argument("state_variance: empty state");
  if (moments.k_max() < 2 * deg + 2)
    throw std::invalid_argument("state_variance: moments run short");
  const Eigen::VectorXd gg = poly_mul(state.coeffs, state.coeffs);
  double n[3] = {0.0, 0.0, 0.0};
  for (int r = 0; r <= 2; ++r)
    for (int v = 0; v < gg.size(); ++v) n[r] += gg[v] * moments.mu[v + r];
  if (!(n[0] > 0.0)) return std::numeric_limits<double>::infinity();
  return (n[2] * n[0] - n[1] * n[1]) / (n[0] * n[0]);
}

namespace {

// Unit S-norm copy of a polynomial state under the supplied moments.
Eigen::VectorXd s_normalized(const Eigen::VectorXd& poly,
                             const MomentVector& moments) {
  const Eigen::VectorXd gg = poly_mul(poly, poly);
  double n0 = 0.0;
  for (int v = 0; v < gg.size(); ++v) n0 += gg[v] * moments.mu[v];
  if (n0 > 0.0) return poly / std::sqrt(n0);
  return poly;
}

}  // namespace

EnergyResult pqse(const MomentVector& moments, const NoiseSample& noise,
                  int subspace_dim_max, int d_cap) {
  if (subspace_dim_max < 1)
    throw std::invalid_argument("pqse: subspace_dim_max must be >= 1");
  if (d_cap < 2) throw std::invalid_argument("pqse: d_cap must be >= 2");
  if (moments.k_max() < 2 * subspace_dim_max)
    throw std::invalid_argument("pqse: needs moments up to 2*subspace_dim_max");

  const MomentVector noisy = perturbed_moments(moments, noise);
  const int k_max = noisy.k_max();

  EnergyResult out;
  Eigen::VectorXd state = Eigen::VectorXd::Ones(1);  // reference polynomial
  out.coeffs = state;

  if (subspace_dim_max == 1) {  // one-dimensional subspace: plain expectation
    out.energy = noisy.mu[1];
    out.energy_original = noisy.mu[1] * moments.scale;
    out.retained = 1;
    out.smallest_retained = 1.0;
    out.status = SolveStatus::ok;
    return out;
  }

  int remaining = subspace_dim_max - 1;  // sum of (d_i - 1) still to spend
  while (remaining > 0) {
    const Eigen::VectorXd prev = state;
    const int deg_prev = int(prev.size()) - 1;
    const Eigen::VectorXd gg = poly_mul(prev, prev);

    bool have_best = false;
    double best_var = std::numeric_limits<double>::infinity();
    EnergyResult best_res;
    Eigen::VectorXd best_poly;
    int best_d = 0;

    const int d_hi = std::min(d_cap, remaining + 1);
    for (int d = 2; d <= d_hi; ++d) {
      if (2 * deg_prev + 2 * d - 1 > k_max) break;  // moments exhausted

      // Effective moments and perturbations of the re-anchored basis
      // { (H/s)^j p(H/s) psi0, j < d }.
      Eigen::VectorXd em = Eigen::VectorXd::Zero(2 * d);
      Eigen::VectorXd ed = Eigen::VectorXd::Zero(2 * d - 1);
      for (int r = 0; r < 2 * d; ++r)
        for (int v = 0; v < gg.size(); ++v) {
          em[r] += gg[v] * noisy.mu[v + r];
          if (r < 2 * d - 1) ed[r] += gg[v] * delta_at(noise.delta, v + r);
        }

      Eigen::MatrixXd sm(d, d), hm(d, d), cm(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          sm(i, j) = em[i + j];
          hm(i, j) = em[i + j + 1];
          cm(i, j) = ed[i + j];
        }

      EnergyResult res = solve_gevp(sm, hm, spectral_norm_sym(cm));
      if (res.status != SolveStatus::ok) continue;

      Eigen::VectorXd cand = poly_mul(prev, res.coeffs);
      const double inf_norm = cand.cwiseAbs().maxCoeff();
      if (!(inf_norm > 0.0) || !cand.allFinite()) continue;
      cand /= inf_norm;

      const double var = state_variance({cand}, noisy);
      if (!std::isfinite(var)) continue;
      if (!have_best || var < best_var - kTieTol) {  // ties keep smaller d
        have_best = true;
        best_var = var;
        best_res = res;
        best_poly = cand;
        best_d = d;
      }
    }

    if (!have_best) {
      out.status = out.partitions.empty() ? SolveStatus::failed
                                          : SolveStatus::unstable;
      return out;
    }

    std::vector<int> partitions = out.partitions;
    partitions.push_back(best_d);
    out = best_res;
    out.energy_original = out.energy * moments.scale;
    out.partitions = std::move(partitions);
    state = best_poly;
    out.coeffs = s_normalized(state, noisy);
    remaining -= best_d - 1;
  }

  out.status = SolveStatus::ok;
  return out;
}

}  // namespace qk
