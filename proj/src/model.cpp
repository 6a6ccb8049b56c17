#include "qk/model.hpp"

#include "qk/pauli_transform.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace qk {

namespace {

constexpr double kCoeffDropTol = 1e-12;  // exact-zero cutoff in expansions

void check_sites(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("model: n_sites must be >= 2");
}

// sigma_z of site n (1-based) in configuration `config`; bit 0 = up.
inline int sigma_z(int n_sites, std::uint64_t config, int n) {
  return ((config >> (n_sites - n)) & 1u) ? -1 : 1;
}

inline int staggering(int n) { return (n % 2 == 0) ? 1 : -1; }  // (-1)^n

// splitmix64, used for deterministic Lanczos start vectors.
inline std::uint64_t mix64(std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ull;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
  return v ^ (v >> 31);
}

}  // namespace

int compact_field_qubits(int n_sites) {
  check_sites(n_sites);
  double raw = std::log2(n_sites / 2.0 + 1.0);
  int m = int(std::ceil(raw - 1e-12));
  return std::max(1, m);
}

int padded_field_qubits(int n_sites) {
  check_sites(n_sites);
  double raw = std::log2(double(n_sites));
  return int(std::ceil(raw - 1e-12)) + 1;
}

int resolved_field_qubits(const ModelParams& params) {
  if (params.m > 0) return params.m;
  return params.sizing == FieldSizing::compact
             ? compact_field_qubits(params.n_sites)
             : padded_field_qubits(params.n_sites);
}

int explicit_qubit_count(const ModelParams& params) {
  int m = resolved_field_qubits(params);
  return params.n_sites + m * (params.n_sites - 1);
}

double diagonal_energy(const ModelParams& params, std::uint64_t config) {
  const int n = params.n_sites;
  double mass = 0.0, field = 0.0;
  int cum = 0;  // sum_{k<=n} (sigma_z(k) + (-1)^k), always even
  for (int site = 1; site <= n; ++site) {
    int sz = sigma_z(n, config, site);
    mass += staggering(site) * (params.mu / 2.0) * (1 + sz);
    cum += sz + staggering(site);
    if (site < n) {
      double link = cum / 2.0;
      field += link * link;
    }
  }
  return mass + field;
}

int link_field(int n_sites, std::uint64_t config, int link) {
  if (link < 1 || link >= n_sites)
    throw std::invalid_argument("model: link index out of range");
  int cum = 0;
  for (int site = 1; site <= link; ++site)
    cum += sigma_z(n_sites, config, site) + staggering(site);
  return cum / 2;
}

GaugedOperator::GaugedOperator(const ModelParams& params)
    : n_(params.n_sites), x_(params.x) {
  check_sites(n_);
  if (n_ > 26)
    throw std::invalid_argument(
        "model: n_sites > 26 exceeds the full-space memory cap");
  const std::int64_t dim = std::int64_t(1) << n_;
  diag_.resize(dim);
  for (std::int64_t c = 0; c < dim; ++c)
    diag_[c] = diagonal_energy(params, std::uint64_t(c));
}

void GaugedOperator::apply(const double* in, double* out) const {
  const std::int64_t dim = dimension();
  for (std::int64_t i = 0; i < dim; ++i) out[i] = diag_[i] * in[i];
  for (int bond = 1; bond < n_; ++bond) {
    const int pos_a = n_ - bond;       // site `bond`
    const int pos_b = n_ - bond - 1;   // site `bond + 1`
    const std::uint64_t mask = (1ull << pos_a) | (1ull << pos_b);
    for (std::int64_t i = 0; i < dim; ++i) {
      // visit each antiparallel pair once via the (down, up) pattern
      if (((i >> pos_a) & 1) && !((i >> pos_b) & 1)) {
        const std::int64_t j = std::int64_t(std::uint64_t(i) ^ mask);
        out[i] += x_ * in[j];
        out[j] += x_ * in[i];
      }
    }
  }
}

Eigen::VectorXd GaugedOperator::apply(const Eigen::VectorXd& in) const {
  if (in.size() != dimension())
    throw std::invalid_argument("model: vector dimension mismatch");
  Eigen::VectorXd out(in.size());
  apply(in.data(), out.data());
  return out;
}

std::uint64_t neel_config(int n_sites) {
  check_sites(n_sites);
  std::uint64_t config = 0;
  for (int site = 1; site <= n_sites; ++site)
    if (site % 2 == 0) config |= 1ull << (n_sites - site);  // even sites down
  return config;
}

Eigen::VectorXd neel_state(int n_sites) {
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(std::int64_t(1) << n_sites);
  psi[neel_config(n_sites)] = 1.0;
  return psi;
}

std::vector<std::uint64_t> balanced_sector_basis(int n_sites) {
  check_sites(n_sites);
  // sum sigma_z = -sum (-1)^n  <=>  #down = (n_sites + (n_sites odd)) / 2
  const int downs = (n_sites + (n_sites % 2)) / 2;
  std::vector<std::uint64_t> basis;
  const std::uint64_t dim = 1ull << n_sites;
  for (std::uint64_t c = 0; c < dim; ++c)
    if (std::popcount(c) == downs) basis.push_back(c);
  return basis;
}

Eigen::MatrixXd sector_dense_matrix(const ModelParams& params) {
  const int n = params.n_sites;
  check_sites(n);
  auto basis = balanced_sector_basis(n);
  const std::int64_t dim = std::int64_t(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  auto locate = [&basis](std::uint64_t c) {
    auto it = std::lower_bound(basis.begin(), basis.end(), c);
    return std::int64_t(it - basis.begin());
  };
  for (std::int64_t a = 0; a < dim; ++a) {
    const std::uint64_t c = basis[a];
    h(a, a) = diagonal_energy(params, c);
    for (int bond = 1; bond < n; ++bond) {
      const int pos_a = n - bond, pos_b = n - bond - 1;
      if (((c >> pos_a) & 1) && !((c >> pos_b) & 1)) {
        const std::int64_t b = locate(c ^ ((1ull << pos_a) | (1ull << pos_b)));
        h(a, b) += params.x;
        h(b, a) += params.x;
      }
    }
  }
  return h;
}

namespace {

// Plain three-term Lanczos on the full configuration space, seeded inside the
// zero-charge sector (which the operator preserves).  Tracks only the minimum
// Ritz value; adequate for ground energies to ~1e-10 * ||H||.
double lanczos_ground_energy(const GaugedOperator& op, int n_sites,
                             int max_iter, double tol) {
  const std::int64_t dim = op.dimension();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  const int downs = (n_sites + (n_sites % 2)) / 2;
  for (std::int64_t c = 0; c < dim; ++c)
    if (std::popcount(std::uint64_t(c)) == downs)
      v[c] = (double(mix64(std::uint64_t(c) + 12345) >> 11) /
              9007199254740992.0) - 0.5;
  v.normalize();

  Eigen::VectorXd v_prev = Eigen::VectorXd::Zero(dim), w(dim);
  std::vector<double> alpha, beta;  // tridiagonal entries
  double best = std::numeric_limits<double>::quiet_NaN();
  int stable_count = 0;
  for (int it = 0; it < max_iter; ++it) {
    op.apply(v.data(), w.data());
    double a = v.dot(w);
    alpha.push_back(a);
    w -= a * v;
    if (!beta.empty()) w -= beta.back() * v_prev;
    double b = w.norm();
    if (it % 5 == 4 || b < 1e-13 || it == max_iter - 1) {
      const int k = int(alpha.size());
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
      for (int i = 0; i < k; ++i) {
        tri(i, i) = alpha[i];
        if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
      }
      double e = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                     tri, Eigen::EigenvaluesOnly)
                     .eigenvalues()(0);
      if (std::isfinite(best) && std::abs(e - best) < tol * (1.0 + std::abs(e)))
        ++stable_count;
      else
        stable_count = 0;
      best = e;
      if (stable_count >= 3 || b < 1e-13) return best;
    }
    beta.push_back(b);
    v_prev.swap(v);
    v = w / b;
  }
  throw std::runtime_error(
      "model: Lanczos ground-energy iteration did not converge after " +
      std::to_string(max_iter) + " steps (last estimate " +
      std::to_string(best) + ")");
}

}  // namespace

double exact_ground_energy(const ModelParams& params, int dense_cap,
                           int memory_cap) {
  check_sites(params.n_sites);
  if (params.n_sites > memory_cap)
    throw std::invalid_argument(
        "model: n_sites exceeds the ground-energy memory cap");
  if (params.n_sites <= dense_cap) {
    Eigen::MatrixXd h = sector_dense_matrix(params);
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
               h, Eigen::EigenvaluesOnly)
        .eigenvalues()(0);
  }
  GaugedOperator op(params);
  return lanczos_ground_energy(op, params.n_sites, 600, 1e-12);
}

double interaction_energy_scale(const ModelParams& params, int dense_cap,
                                int memory_cap) {
  double reference = diagonal_energy(params, neel_config(params.n_sites));
  return reference - exact_ground_energy(params, dense_cap, memory_cap);
}

// --- Pauli export -----------------------------------------------------------

int PauliTerm::pauli_weight() const {
  int w = 0;
  for (std::size_t j = 0; j < x.size(); ++j) w += (x[j] | z[j]) ? 1 : 0;
  return w;
}

int PauliTerm::hamming_weight() const {
  int b = 0;
  for (std::size_t j = 0; j < x.size(); ++j) b += x[j] + z[j];
  return b;
}

std::string PauliTerm::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", coeff);
  std::string s(buf);
  s += ' ';
  for (auto v : x) s += char('0' + v);
  s += ' ';
  for (auto v : z) s += char('0' + v);
  return s;
}

namespace {

// Convert a Pauli-transform coefficient list on q qubits into terms,
// dropping exact zeros.  Coefficients must be real (even-Y operators).
std::vector<PauliTerm> terms_from_coeffs(const detail::PauliCoeffs& coeffs,
                                         int q) {
  std::vector<PauliTerm> terms;
  for (std::size_t p = 0; p < coeffs.size(); ++p) {
    if (std::abs(coeffs[p]) < kCoeffDropTol) continue;
    if (std::abs(coeffs[p].imag()) > 1e-9)
      throw std::logic_error("model: unexpected complex Pauli coefficient");
    PauliTerm t;
    t.coeff = coeffs[p].real();
    t.x.assign(q, 0);
    t.z.assign(q, 0);
    std::size_t rest = p;
    for (int j = q - 1; j >= 0; --j) {  // least significant digit = qubit q
      int digit = int(rest % 4);
      rest /= 4;
      if (digit == 1) t.x[j] = 1;
      if (digit == 2) t.x[j] = t.z[j] = 1;
      if (digit == 3) t.z[j] = 1;
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

constexpr int kExpansionCap = 8;  // dense expansions live on <= 2^(m+2) dims

void check_expansion_m(int m) {
  if (m < 1) throw std::invalid_argument("model: field register needs m >= 1");
  if (m > kExpansionCap)
    throw std::invalid_argument(
        "model: Pauli expansion capped at m <= " +
        std::to_string(kExpansionCap));
}

}  // namespace

PauliOperator field_block(int m) {
  check_expansion_m(m);
  const std::int64_t lambda = std::int64_t(1) << m;
  // Diagonal (l - Lambda/2)^2 expands into Z-strings with coefficients
  // 2^-m sum_l d_l (-1)^{popcount(l & mask)}.
  PauliOperator op;
  op.n_qubits = m;
  for (std::uint64_t mask = 0; mask < std::uint64_t(lambda); ++mask) {
    double c = 0.0;
    for (std::int64_t l = 0; l < lambda; ++l) {
      double d = double(l - lambda / 2) * double(l - lambda / 2);
      c += (std::popcount(std::uint64_t(l) & mask) % 2 ? -d : d);
    }
    c /= double(lambda);
    if (std::abs(c) < kCoeffDropTol) continue;
    PauliTerm t;
    t.coeff = c;
    t.x.assign(m, 0);
    t.z.assign(m, 0);
    for (int j = 0; j < m; ++j)
      if ((mask >> (m - 1 - j)) & 1) t.z[j] = 1;
    op.terms.push_back(std::move(t));
  }
  return op;
}

PauliOperator interaction_block(int m) {
  check_expansion_m(m);
  const std::int64_t lambda = std::int64_t(1) << m;
  const std::int64_t dim = 4 * lambda;
  // sigma_+ (x) R (x) sigma_-  + h.c., R the truncated non-cyclic raiser.
  // Qubit order: left site, m field bits (value MSB first), right site.
  // Basis index: bit (m+1) = left site, bits m..1 = field, bit 0 = right site.
  Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::int64_t l = 0; l + 1 < lambda; ++l) {
    // |up, l+1, down> <down, l, up| : left bit 1->0, right bit 0->1
    const std::int64_t col = (1ll << (m + 1)) | (l << 1) | 0;
    const std::int64_t row = (0ll << (m + 1)) | ((l + 1) << 1) | 1;
    blk(row, col) += 1.0;
    blk(col, row) += 1.0;
  }
  auto coeffs = detail::pauli_transform(blk, m + 2);
  PauliOperator op;
  op.n_qubits = m + 2;
  op.terms = terms_from_coeffs(coeffs, m + 2);
  return op;
}

PauliOperator build_pauli_hamiltonian(const ModelParams& params) {
  const int n = params.n_sites;
  check_sites(n);
  const int m = resolved_field_qubits(params);
  check_expansion_m(m);
  const int n_sys = n + m * (n - 1);
  PauliOperator op;
  op.n_qubits = n_sys;
  double constant = 0.0;

  auto qubit_of_site = [m](int site) { return (site - 1) * (m + 1); };
  auto embed = [&](const PauliTerm& local, int offset, double scale) {
    if (local.pauli_weight() == 0) {
      constant += scale * local.coeff;
      return;
    }
    PauliTerm t;
    t.coeff = scale * local.coeff;
    t.x.assign(n_sys, 0);
    t.z.assign(n_sys, 0);
    for (std::size_t j = 0; j < local.x.size(); ++j) {
      t.x[offset + int(j)] = local.x[j];
      t.z[offset + int(j)] = local.z[j];
    }
    op.terms.push_back(std::move(t));
  };

  // staggered mass: (-1)^n (mu/2)(1 + Z_n)
  for (int site = 1; site <= n; ++site) {
    constant += staggering(site) * params.mu / 2.0;
    PauliTerm t;
    t.coeff = staggering(site) * params.mu / 2.0;
    t.x.assign(n_sys, 0);
    t.z.assign(n_sys, 0);
    t.z[qubit_of_site(site)] = 1;
    op.terms.push_back(std::move(t));
  }
  // field energy per link
  PauliOperator fb = field_block(m);
  for (int link = 1; link < n; ++link)
    for (const auto& t : fb.terms) embed(t, qubit_of_site(link) + 1, 1.0);
  // hopping per bond, scaled by x; acts on [site n, link n, site n+1]
  PauliOperator ib = interaction_block(m);
  for (int bond = 1; bond < n; ++bond)
    for (const auto& t : ib.terms) embed(t, qubit_of_site(bond), params.x);

  if (std::abs(constant) > kCoeffDropTol) {
    PauliTerm ident;
    ident.coeff = constant;
    ident.x.assign(n_sys, 0);
    ident.z.assign(n_sys, 0);
    op.terms.push_back(std::move(ident));
  }
  return op;
}

std::uint64_t explicit_basis_index(const ModelParams& params,
                                   std::uint64_t spin_config,
                                   const std::vector<int>& link_values) {
  const int n = params.n_sites;
  const int m = resolved_field_qubits(params);
  const std::int64_t lambda = std::int64_t(1) << m;
  if (int(link_values.size()) != n - 1)
    throw std::invalid_argument("model: need one field value per link");
  const int n_sys = n + m * (n - 1);
  if (n_sys > 64)
    throw std::invalid_argument("model: explicit index needs <= 64 qubits");
  std::uint64_t idx = 0;
  auto set_qubit = [&](int qpos) { idx |= 1ull << (n_sys - 1 - qpos); };
  for (int site = 1; site <= n; ++site) {
    if ((spin_config >> (n - site)) & 1) set_qubit((site - 1) * (m + 1));
    if (site < n) {
      int l = link_values[site - 1];
      if (l < 0 || l >= lambda)
        throw std::invalid_argument("model: link value outside register");
      for (int j = 0; j < m; ++j)
        if ((l >> (m - 1 - j)) & 1) set_qubit((site - 1) * (m + 1) + 1 + j);
    }
  }
  return idx;
}

double apply_pauli_to_basis(const PauliTerm& term, std::uint64_t basis_in,
                            std::uint64_t* basis_out) {
  const int q = int(term.x.size());
  if (q > 64)
    throw std::invalid_argument("model: basis apply needs <= 64 qubits");
  std::uint64_t xmask = 0, zmask = 0;
  int y_count = 0;
  for (int j = 0; j < q; ++j) {
    const std::uint64_t bit = 1ull << (q - 1 - j);
    if (term.x[j]) xmask |= bit;
    if (term.z[j]) zmask |= bit;
    if (term.x[j] && term.z[j]) ++y_count;
  }
  if (y_count % 2)
    throw std::invalid_argument("model: odd-Y term has imaginary elements");
  double phase = (y_count % 4 == 2) ? -term.coeff : term.coeff;
  if (std::popcount(zmask & basis_in) % 2) phase = -phase;
  *basis_out = basis_in ^ xmask;
  return phase;
}

}  // namespace qk
