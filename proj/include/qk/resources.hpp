#pragma once
// Fault-tolerant gate and qubit budgets for the block-encoded lattice
// Schwinger model: closed-form upper bounds for preparing the encoding
// state G, applying the select operator U (with the phase gradient either
// folded into G or applied inside U), the reflection-rotation projector,
// Rz-to-T synthesis overhead, Toffoli decomposition policies, and wall-clock
// estimates on published hardware.
//
// Every count is an upper bound ("<=" in the underlying combinatorics) and
// is evaluated with exact integer Fibonacci numbers and binomials; the
// golden-ratio (Binet) forms exist only as a cross-check.

#include "qk/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qk {

struct GateCost {
  double t = 0.0;                 // T gates
  double cnot = 0.0;              // CNOT gates
  double rz = 0.0;                // arbitrary-angle Rz gates
  double t_with_rotations = 0.0;  // t + rz * rz_to_t_factor
  long long qubits = 0;
};

enum class ToffoliPolicy {
  all_to_all_multi_ancilla,
  all_to_all_one_ancilla,
  linear_nearest_neighbour,
};
enum class PhasesIn { G_tilde, U };

const char* to_string(ToffoliPolicy policy);
const char* to_string(PhasesIn phases);

struct CostOptions {
  ToffoliPolicy toffoli_policy = ToffoliPolicy::all_to_all_multi_ancilla;
  double eps_alpha = 1.0;  // per-rotation synthesis error, in (0, 1]
  PhasesIn phases_in = PhasesIn::G_tilde;
  FieldSizing sizing = FieldSizing::compact;  // N -> m rule for whole-run costs
  // Alternative middle term of the Rz synthesis denominator (a variant that
  // appears in the derivation of the bound; off by default).
  bool rz_argument_variant = false;
};

// Exact Fibonacci (F(1) = F(2) = 1) and binomial coefficient.
long long fibonacci(int n);
long long binomial(int n, int k);
// Golden-ratio closed form, for cross-checking only.
double fibonacci_binet(int n);

// The four closed-form sums behind the gate-cost formulas, b running
// 2..m+2 for the Fibonacci sums and 0..m for the binomial sum:
//   sum_f        = sum F(b+1)                 = F(m+5) - 3
//   sum_bf       = sum b F(b+1)               = (m+2) F(m+5) - F(m+6) + 2
//   affine_fib   = sum F(b+1) (alpha b + beta)
//                = alpha m F(m+5) - alpha F(m+6) + (2 alpha + beta) F(m+5)
//                  + (2 alpha - 3 beta)
//   affine_binom = sum C(m,b) (alpha b + beta) = alpha m 2^{m-1} + beta 2^m
struct ClosedFormSums {
  double sum_f = 0.0;
  double sum_bf = 0.0;
  double affine_fib = 0.0;
  double affine_binom = 0.0;
};
ClosedFormSums closed_form_sums(int m, double alpha, double beta);
ClosedFormSums direct_sums(int m, double alpha, double beta);  // brute sums

// Term counts per gate-weight b = W_x + 2 W_y + W_z (a Y costs an X and a Z
// application).  `hamming_census` returns the bound values the cost formulas
// integrate over: C(m,b) for the field block, 1 spin term at b = 1, F(b+1)
// for the interaction block on 2 <= b <= 2(m+2).  `brute_force_census`
// decomposes the operators explicitly (m <= 8) and counts nonzero
// coefficients; it also tallies the interaction block by plain Pauli weight
// (number of non-identity factors) for the weight-census equality check.
struct WeightCensus {
  std::map<int, long long> field_counts;
  long long spin_count_at_b1 = 0;
  std::map<int, long long> interaction_counts;
  std::map<int, long long> interaction_counts_by_pauli_weight;  // brute only
};
WeightCensus hamming_census(int m);
WeightCensus brute_force_census(int m);

// Clifford+T tally of the translational-symmetry swap step inside the
// G preparation: T = 8Nm + 4N - 16m - 8, CNOT = 11Nm + 25N - 22m - 4,
// Rz = 6N - 12.
GateCost swap_step_gates(int n_sites, int m);

// Preparing the block-encoding state G on N sites with m field qubits per
// link (m >= 2): closed-form gate bounds, plus 2N + 2m(N-1) storage and
// m ancilla qubits.
GateCost cost_G(int n_sites, int m);
// Independent tally of the same bound from the weight censuses plus the
// swap step; equals cost_G exactly for 2 <= m <= 12, N <= 64.
GateCost cost_G_summation_form(int n_sites, int m);

// The select operator U.  phases_in = G_tilde absorbs the phase gradient
// into the preparation state (T = 6N + 6mN - 6m, CNOT = 8N + 8mN - 8m);
// phases_in = U applies phases with multicontrolled rotations inside U,
// which costs a factor ~N more.
GateCost cost_U(int n_sites, int m, const CostOptions& options = {});

// Reflection-rotation projector: twice cost_G, plus
// 128mN + 128N - 128m - 192 T, 96mN + 96N - 96m - 144 CNOT, and one Rz.
GateCost cost_projector_rotation(int n_sites, int m,
                                 const CostOptions& options = {});

// Average T gates per Rz when synthesizing all rotations to overall
// precision: 3 log2((N-1) 2^m + N 2^{m+1} + N) + 3 log2(12m + 48)
// + 3 log2(1 / eps_alpha).
double rz_to_t_factor(int n_sites, int m, const CostOptions& options = {});

// Decomposition of an n-controlled Toffoli (n = controls + target):
//   all_to_all_multi_ancilla : 4n - 8  T, 4n - 7 CNOT          (n >= 3)
//   all_to_all_one_ancilla   : 32n - 96 T, 24n - 72 CNOT       (n >= 3)
//   linear_nearest_neighbour : 16n - 32 T, 8k + 14n - 44 CNOT  (n > 6,
//                              register span k > n + 1)
GateCost toffoli_cost(int n_controls_plus_target, int register_span,
                      ToffoliPolicy policy);

// One degree-k moment circuit: 2 preparation applications plus k
// applications of (U + projector); m resolved from N by options.sizing.
// Qubits: 3(N + m(N-1)) + m + 1.
GateCost algorithm_cost(int n_sites, int k, const CostOptions& options = {});

// Whole-campaign budget: budget_calls applications of (U + projector),
// plus 2 preparations per shot when the shot distribution is supplied
// (shots_per_moment[k-1] = number of degree-k circuits run).
GateCost campaign_cost(int n_sites, double budget_calls,
                       const CostOptions& options = {},
                       const std::vector<double>& shots_per_moment = {});

struct ProcessorSpec {
  std::string name;
  std::optional<double> t1_seconds;  // absent when unpublished
  double t2_seconds = 0.0;
  double two_qubit_gate_seconds = 0.0;
  int qubits = 0;
};

struct RuntimeEstimate {
  double seconds = 0.0;
  std::optional<double> fraction_t1;  // absent when T1 unknown
  double fraction_t2 = 0.0;
};

// Serial: every CNOT in sequence.  Parallel: layers of floor(total_qubits/2)
// simultaneous two-qubit gates.  Fractions divide by the coherence times.
RuntimeEstimate hardware_runtime(const GateCost& cost,
                                 const ProcessorSpec& proc, bool parallel,
                                 long long total_qubits);

// Published processor parameters used for runtime tables.
const std::vector<ProcessorSpec>& reference_processors();

}  // namespace qk
