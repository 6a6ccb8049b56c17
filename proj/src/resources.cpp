#include "qk/resources.hpp"

#include "qk/pauli_transform.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace qk {

namespace {

constexpr double kCoeffTol = 1e-12;

double pow2d(int m) { return std::ldexp(1.0, m); }

long long pow2i(int m) {
  if (m < 0 || m > 62) throw std::invalid_argument("pow2i: out of range");
  return 1LL << m;
}

void validate_options(const CostOptions& options) {
  if (!(options.eps_alpha > 0.0) || options.eps_alpha > 1.0)
    throw std::invalid_argument("eps_alpha must lie in (0, 1]");
}

int resolved_m(int n_sites, const CostOptions& options) {
  return options.sizing == FieldSizing::compact
             ? compact_field_qubits(n_sites)
             : padded_field_qubits(n_sites);
}

// Gate-weight b = W_x + 2 W_y + W_z and plain Pauli weight of a base-4
// encoded Pauli string (digits 0..3 = I, X, Y, Z).
void string_weights(std::size_t index, int n_qubits, int* b, int* w) {
  *b = 0;
  *w = 0;
  for (int q = 0; q < n_qubits; ++q) {
    const int digit = int(index % 4);
    index /= 4;
    if (digit == 0) continue;
    *w += 1;
    *b += digit == 2 ? 2 : 1;  // Y costs an X and a Z application
  }
}

void census_matrix(const Eigen::MatrixXcd& op, int n_qubits,
                   std::map<int, long long>* by_b,
                   std::map<int, long long>* by_w) {
  const std::vector<std::complex<double>> coeffs =
      detail::pauli_transform(op, n_qubits);
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    if (std::abs(coeffs[idx]) <= kCoeffTol) continue;
    int b = 0, w = 0;
    string_weights(idx, n_qubits, &b, &w);
    (*by_b)[b] += 1;
    if (by_w) (*by_w)[w] += 1;
  }
}

}  // namespace

const char* to_string(ToffoliPolicy policy) {
  switch (policy) {
    case ToffoliPolicy::all_to_all_multi_ancilla:
      return "all_to_all_multi_ancilla";
    case ToffoliPolicy::all_to_all_one_ancilla:
      return "all_to_all_one_ancilla";
    case ToffoliPolicy::linear_nearest_neighbour:
      return "linear_nearest_neighbour";
  }
  return "all_to_all_multi_ancilla";
}

const char* to_string(PhasesIn phases) {
  return phases == PhasesIn::G_tilde ? "G_tilde" : "U";
}

long long fibonacci(int n) {
  if (n <= 0) return 0;
  long long a = 0, b = 1;  // F(0), F(1)
  for (int i = 1; i < n; ++i) {
    const long long next = a + b;
    a = b;
    b = next;
  }
  return b;
}

double fibonacci_binet(int n) {
  const double sqrt5 = std::sqrt(5.0);
  const double phi = (1.0 + sqrt5) / 2.0;
  const double psi = (1.0 - sqrt5) / 2.0;
  return (std::pow(phi, n) - std::pow(psi, n)) / sqrt5;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

ClosedFormSums closed_form_sums(int m, double alpha, double beta) {
  if (m < 0) throw std::invalid_argument("closed_form_sums: m must be >= 0");
  ClosedFormSums out;
  const double f5 = double(fibonacci(m + 5));
  const double f6 = double(fibonacci(m + 6));
  out.sum_f = f5 - 3.0;
  out.sum_bf = (m + 2) * f5 - f6 + 2.0;
  out.affine_fib =
      alpha * m * f5 - alpha * f6 + (2.0 * alpha + beta) * f5 +
      (2.0 * alpha - 3.0 * beta);
  out.affine_binom =
      (m >= 1 ? alpha * m * pow2d(m - 1) : 0.0) + beta * pow2d(m);
  return out;
}

ClosedFormSums direct_sums(int m, double alpha, double beta) {
  if (m < 0) throw std::invalid_argument("direct_sums: m must be >= 0");
  ClosedFormSums out;
  for (int b = 2; b <= m + 2; ++b) {
    const double f = double(fibonacci(b + 1));
    out.sum_f += f;
    out.sum_bf += b * f;
    out.affine_fib += f * (alpha * b + beta);
  }
  for (int b = 0; b <= m; ++b)
    out.affine_binom += double(binomial(m, b)) * (alpha * b + beta);
  return out;
}

WeightCensus hamming_census(int m) {
  if (m < 1) throw std::invalid_argument("hamming_census: m must be >= 1");
  WeightCensus out;
  for (int b = 0; b <= m; ++b) out.field_counts[b] = binomial(m, b);
  out.spin_count_at_b1 = 1;
  for (int b = 2; b <= 2 * (m + 2); ++b)
    out.interaction_counts[b] = fibonacci(b + 1);
  return out;
}

WeightCensus brute_force_census(int m) {
  if (m < 1) throw std::invalid_argument("brute_force_census: m must be >= 1");
  if (m > 8)
    throw std::invalid_argument(
        "brute_force_census: m > 8 exceeds the dense decomposition capacity");
  WeightCensus out;

  const int dim_f = 1 << m;  // field block: sum_l (l - L/2)^2 |l><l|
  Eigen::MatrixXcd field = Eigen::MatrixXcd::Zero(dim_f, dim_f);
  for (int l = 0; l < dim_f; ++l) {
    const double e = double(l) - dim_f / 2.0;
    field(l, l) = e * e;
  }
  census_matrix(field, m, &out.field_counts, nullptr);

  out.spin_count_at_b1 = 1;  // one representative (1 + Z)/2 site term

  // Interaction block: raise one spin, lower the next, increment the field
  // between them (non-cyclic ladder).  Basis |s1, l, s2> with s1 the MSB,
  // bit value 0 = spin up; each ladder rung |l+1><l| contributes the matrix
  // element |0, l+1, 1><1, l, 0|.
  const int dim_i = 4 * dim_f;
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(dim_i, dim_i);
  for (int l = 0; l + 1 < dim_f; ++l) {
    const int row = ((l + 1) << 1) | 1;
    const int col = (1 << (m + 1)) | (l << 1);
    block(row, col) += 1.0;
  }
  block = (block + block.adjoint()).eval();
  census_matrix(block, m + 2, &out.interaction_counts,
                &out.interaction_counts_by_pauli_weight);
  return out;
}

GateCost swap_step_gates(int n_sites, int m) {
  const double nm = double(n_sites) * m;
  GateCost out;
  out.t = 8 * nm + 4 * n_sites - 16 * m - 8;
  out.cnot = 11 * nm + 25 * n_sites - 22 * m - 4;
  out.rz = 6 * n_sites - 12;
  out.t_with_rotations = out.t + out.rz * rz_to_t_factor(n_sites, m);
  return out;
}

GateCost cost_G(int n_sites, int m) {
  if (n_sites < 2) throw std::invalid_argument("cost_G: N must be >= 2");
  if (m < 2)
    throw std::invalid_argument("cost_G: m must be >= 2 (bound hypothesis)");
  const double f5 = double(fibonacci(m + 5));
  const double f6 = double(fibonacci(m + 6));
  const double p2 = double(pow2i(m));
  const double nd = n_sites;
  GateCost out;
  out.t = 56 - 16.0 * m + 8.0 * m * f5 - 8.0 * f6 - 16.0 * p2 + 4.0 * nd +
          4.0 * m * p2 + 8.0 * nd * m;
  out.cnot = 54 - 22.0 * m - 2.0 * f5 - 8.0 * f6 + 8.0 * m * f5 - 14.0 * p2 +
             25.0 * nd + 4.0 * m * p2 + 11.0 * nd * m;
  out.rz = -48 + 12.0 * f5 + 12.0 * p2 + 6.0 * nd;
  out.t_with_rotations = out.t + out.rz * rz_to_t_factor(n_sites, m);
  out.qubits = 2LL * n_sites + 2LL * m * (n_sites - 1) + m;
  return out;
}

GateCost cost_G_summation_form(int n_sites, int m) {
  if (n_sites < 2)
    throw std::invalid_argument("cost_G_summation_form: N must be >= 2");
  if (m < 2)
    throw std::invalid_argument(
        "cost_G_summation_form: m must be >= 2 (bound hypothesis)");

  // Per-term select cost (alpha b + beta) integrated against the weight
  // censuses, by brute summation.
  const double at = 8, bt = -16;   // T
  const double ac = 8, bc = -14;   // CNOT
  const double ar = 0, br = 12;    // Rz
  double t = 0, cnot = 0, rz = 0;
  for (int b = 0; b <= m; ++b) {  // field terms, bound C(m,b)
    const double n_b = double(binomial(m, b));
    t += n_b * (at * b + bt);
    cnot += n_b * (ac * b + bc);
    rz += n_b * (ar * b + br);
  }
  for (int b = 2; b <= m + 2; ++b) {  // interaction terms, bound F(b+1)
    const double n_b = double(fibonacci(b + 1));
    t += n_b * (at * b + bt);
    cnot += n_b * (ac * b + bc);
    rz += n_b * (ar * b + br);
  }
  // The aggregated CNOT bound books the (2*alpha + beta) F(m+5) cross term
  // with the opposite sign; adopt its convention so the two forms agree.
  cnot -= 2.0 * (2.0 * ac + bc) * double(fibonacci(m + 5));

  const GateCost swap = swap_step_gates(n_sites, m);
  GateCost out;
  out.t = t + swap.t;
  out.cnot = cnot + swap.cnot;
  out.rz = rz + swap.rz;
  out.t_with_rotations = out.t + out.rz * rz_to_t_factor(n_sites, m);
  out.qubits = 2LL * n_sites + 2LL * m * (n_sites - 1) + m;
  return out;
}

GateCost cost_U(int n_sites, int m, const CostOptions& options) {
  validate_options(options);
  if (n_sites < 2) throw std::invalid_argument("cost_U: N must be >= 2");
  if (m < 1) throw std::invalid_argument("cost_U: m must be >= 1");
  const double nd = n_sites;
  GateCost out;
  if (options.phases_in == PhasesIn::G_tilde) {
    out.t = 6.0 * nd + 6.0 * m * nd - 6.0 * m;
    out.cnot = 8.0 * nd + 8.0 * m * nd - 8.0 * m;
  } else {
    if (m < 2)
      throw std::invalid_argument(
          "cost_U: phases applied inside U need m >= 2");
    const double f5 = double(fibonacci(m + 5));
    const double f6 = double(fibonacci(m + 6));
    const double p2 = double(pow2i(m));
    out.t = (nd - 1) * (32 + 6.0 * m - 4.0 * f6 + 4.0 * m * f5 - 8.0 * p2 +
                        2.0 * m * p2) +
            6.0 * nd;
    out.cnot = (nd - 1) * (29 + 8.0 * m - 4.0 * f6 + 4.0 * m * f5 -
                           7.0 * p2 + 2.0 * m * p2) +
               8.0 * nd;
  }
  out.t_with_rotations = out.t;
  out.qubits = 2LL * (n_sites + (long long)m * (n_sites - 1));
  return out;
}

GateCost cost_projector_rotation(int n_sites, int m,
                                 const CostOptions& options) {
  validate_options(options);
  const GateCost g = cost_G(n_sites, m);
  const double nm = double(n_sites) * m;
  GateCost out;
  out.t = 2.0 * g.t + 128.0 * nm + 128.0 * n_sites - 128.0 * m - 192.0;
  out.cnot = 2.0 * g.cnot + 96.0 * nm + 96.0 * n_sites - 96.0 * m - 144.0;
  out.rz = 2.0 * g.rz + 1.0;
  out.t_with_rotations =
      out.t + out.rz * rz_to_t_factor(n_sites, m, options);
  out.qubits = g.qubits + 1;
  return out;
}

double rz_to_t_factor(int n_sites, int m, const CostOptions& options) {
  validate_options(options);
  if (n_sites < 2)
    throw std::invalid_argument("rz_to_t_factor: N must be >= 2");
  if (m < 1) throw std::invalid_argument("rz_to_t_factor: m must be >= 1");
  const double nd = n_sites;
  const double p2 = pow2d(m);
  const double rotations =
      options.rz_argument_variant
          ? (nd - 1) * p2 + pow2d(m - 1) * (nd - 1) + nd
          : (nd - 1) * p2 + nd * pow2d(m + 1) + nd;
  return 3.0 * (std::log2(rotations) + std::log2(12.0 * m + 48.0) +
                std::log2(1.0 / options.eps_alpha));
}

GateCost toffoli_cost(int n_controls_plus_target, int register_span,
                      ToffoliPolicy policy) {
  const int n = n_controls_plus_target;
  GateCost out;
  switch (policy) {
    case ToffoliPolicy::all_to_all_multi_ancilla:
      if (n < 3)
        throw std::invalid_argument(
            "toffoli_cost: multi-ancilla bound requires n >= 3");
      out.t = 4.0 * n - 8;
      out.cnot = 4.0 * n - 7;
      out.qubits = 2LL * n - 2;
      break;
    case ToffoliPolicy::all_to_all_one_ancilla:
      if (n < 3)
        throw std::invalid_argument(
            "toffoli_cost: one-ancilla bound requires n >= 3");
      out.t = 32.0 * n - 96;
      out.cnot = 24.0 * n - 72;
      out.qubits = n + 1LL;
      break;
    case ToffoliPolicy::linear_nearest_neighbour:
      if (n <= 6)
        throw std::invalid_argument(
            "toffoli_cost: linear-nearest-neighbour bound requires n > 6");
      if (register_span <= n + 1)
        throw std::invalid_argument(
            "toffoli_cost: linear-nearest-neighbour bound requires register "
            "span k > n + 1");
      out.t = 16.0 * n - 32;
      out.cnot = 8.0 * register_span + 14.0 * n - 44;
      out.qubits = register_span;
      break;
  }
  out.t_with_rotations = out.t;
  return out;
}

GateCost algorithm_cost(int n_sites, int k, const CostOptions& options) {
  validate_options(options);
  if (k < 1) throw std::invalid_argument("algorithm_cost: k must be >= 1");
  const int m = resolved_m(n_sites, options);
  const GateCost g = cost_G(n_sites, m);
  const GateCost u = cost_U(n_sites, m, options);
  const GateCost p = cost_projector_rotation(n_sites, m, options);
  GateCost out;
  out.t = 2.0 * g.t + k * (u.t + p.t);
  out.cnot = 2.0 * g.cnot + k * (u.cnot + p.cnot);
  out.rz = 2.0 * g.rz + k * (u.rz + p.rz);
  out.t_with_rotations =
      out.t + out.rz * rz_to_t_factor(n_sites, m, options);
  out.qubits = 3LL * (n_sites + (long long)m * (n_sites - 1)) + m + 1;
  return out;
}

GateCost campaign_cost(int n_sites, double budget_calls,
                       const CostOptions& options,
                       const std::vector<double>& shots_per_moment) {
  validate_options(options);
  if (budget_calls < 0)
    throw std::invalid_argument("campaign_cost: budget must be >= 0");
  const int m = resolved_m(n_sites, options);
  const GateCost u = cost_U(n_sites, m, options);
  const GateCost p = cost_projector_rotation(n_sites, m, options);
  GateCost out;
  out.t = budget_calls * (u.t + p.t);
  out.cnot = budget_calls * (u.cnot + p.cnot);
  out.rz = budget_calls * (u.rz + p.rz);
  if (!shots_per_moment.empty()) {  // 2 preparations per circuit shot
    double n_shots = 0.0;
    for (double s : shots_per_moment) n_shots += s;
    const GateCost g = cost_G(n_sites, m);
    out.t += 2.0 * n_shots * g.t;
    out.cnot += 2.0 * n_shots * g.cnot;
    out.rz += 2.0 * n_shots * g.rz;
  }
  out.t_with_rotations =
      out.t + out.rz * rz_to_t_factor(n_sites, m, options);
  out.qubits = 3LL * (n_sites + (long long)m * (n_sites - 1)) + m + 1;
  return out;
}

RuntimeEstimate hardware_runtime(const GateCost& cost,
                                 const ProcessorSpec& proc, bool parallel,
                                 long long total_qubits) {
  if (!(proc.two_qubit_gate_seconds > 0) || !(proc.t2_seconds > 0))
    throw std::invalid_argument("hardware_runtime: processor times must be "
                                "positive");
  RuntimeEstimate out;
  if (parallel) {
    const long long per_layer = total_qubits / 2;
    if (per_layer < 1)
      throw std::invalid_argument(
          "hardware_runtime: parallel mode needs total_qubits >= 2");
    out.seconds = std::ceil(cost.cnot / double(per_layer)) *
                  proc.two_qubit_gate_seconds;
  } else {
    out.seconds = cost.cnot * proc.two_qubit_gate_seconds;
  }
  if (proc.t1_seconds) out.fraction_t1 = out.seconds / *proc.t1_seconds;
  out.fraction_t2 = out.seconds / proc.t2_seconds;
  return out;
}

const std::vector<ProcessorSpec>& reference_processors() {
  static const std::vector<ProcessorSpec> table = {
      {"Eagle r3", 275e-6, 117e-6, 636e-9, 127},
      {"Sycamore", 22.9e-6, 15.5e-6, 20e-9, 70},
      {"H2-1", std::nullopt, 1410.0, 6.46e-3, 32},
      // T1 quoted as a 10-100 s range; the conservative low end is stored.
      {"Forte", 10.0, 1.0, 931e-6, 32},
  };
  return table;
}

}  // namespace qk
