#pragma once
// Lattice model builders for a staggered-fermion chain coupled to a confining
// electric field (lattice Schwinger model, open boundaries), in two forms:
//
//  * gauged form: the field is integrated out, leaving an N-qubit spin chain
//    with a staggered mass, a long-range diagonal Coulomb term, and
//    nearest-neighbour hopping.  Kept matrix-free on the full 2^N basis.
//  * explicit-field form: each of the N-1 links carries an m-qubit register
//    holding the field value in offset-binary; the Hamiltonian is exported
//    as a list of Pauli terms on N + m(N-1) qubits.
//
// Conventions used throughout:
//  * site n = 1..N maps to index bit (N - n): site 1 is the most significant
//    bit of the configuration index.
//  * bit value 0 = spin up (sigma_z = +1), bit value 1 = spin down.
//  * the staggered reference (Neel) state is up on odd sites, down on even
//    sites: sigma_z(n) = -(-1)^n.  For N = 4 its index is 0b0101 = 5.
//  * explicit-field qubit order: site 1, link 1 (m bits, most significant
//    field bit first), site 2, link 2, ..., site N.
//  * a Pauli term is coeff * P with P = i^{x.z} X^x Z^z over (x, z) bit
//    vectors, i.e. positions with x = z = 1 carry Y.  All exported terms have
//    an even number of Y factors, so matrix elements are real.

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace qk {

// Field-register sizing rules for the explicit representation.
//  compact: m = ceil(log2(N/2 + 1)), the smallest register whose offset-binary
//           window covers every field value reachable from the zero-charge
//           sector.
//  padded:  m = ceil(log2(N)) + 1, a register with one extra guard bit.
enum class FieldSizing { compact, padded };

struct ModelParams {
  int n_sites = 4;     // N >= 2
  double mu = 1.5;     // staggered mass
  double x = 0.5;      // hopping coupling
  int m = 0;           // field qubits per link; 0 = derive from `sizing`
  FieldSizing sizing = FieldSizing::compact;
};

int compact_field_qubits(int n_sites);
int padded_field_qubits(int n_sites);
// The m actually used: params.m if positive, else the sizing rule.
int resolved_field_qubits(const ModelParams& params);

// Number of qubits of the explicit-field register layout: N + m(N-1).
int explicit_qubit_count(const ModelParams& params);

// --- gauged (field-integrated) operator -----------------------------------

// Matrix-free gauged Hamiltonian on the full 2^N configuration space:
//   H = sum_n (-1)^n (mu/2)(1 + sigma_z(n))
//     + sum_{n=1}^{N-1} [ (1/2) sum_{k<=n} (sigma_z(k) + (-1)^k) ]^2
//     + x sum_{n=1}^{N-1} (sigma_+(n) sigma_-(n+1) + h.c.)
// The first two lines are diagonal and precomputed; hops flip adjacent
// antiparallel spins with amplitude x.  Conserves total magnetization.
class GaugedOperator {
 public:
  explicit GaugedOperator(const ModelParams& params);

  std::int64_t dimension() const { return std::int64_t(1) << n_; }
  int n_sites() const { return n_; }
  double coupling() const { return x_; }
  const Eigen::VectorXd& diagonal() const { return diag_; }

  void apply(const double* in, double* out) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& in) const;

 private:
  int n_ = 0;
  double x_ = 0.0;
  Eigen::VectorXd diag_;
};

// Diagonal (x = 0) energy of a single spin configuration.
double diagonal_energy(const ModelParams& params, std::uint64_t config);

// Electric-field value L(n) on link n (1..N-1) for a spin configuration:
// L(n) = (1/2) sum_{k<=n} (sigma_z(k) + (-1)^k), integer in the zero-charge
// sector.
int link_field(int n_sites, std::uint64_t config, int link);

// Staggered reference configuration / full-space unit vector.
std::uint64_t neel_config(int n_sites);
Eigen::VectorXd neel_state(int n_sites);

// Zero-charge sector: configurations with sum_n (sigma_z(n) + (-1)^n) = 0,
// listed in ascending index order.  The reference state lives here and the
// Hamiltonian never leaves it.
std::vector<std::uint64_t> balanced_sector_basis(int n_sites);

// Dense gauged Hamiltonian restricted to the zero-charge sector, rows and
// columns ordered like balanced_sector_basis().
Eigen::MatrixXd sector_dense_matrix(const ModelParams& params);

// Lowest eigenvalue of the gauged Hamiltonian within the zero-charge sector.
// Dense diagonalization while n_sites <= dense_cap; otherwise a matrix-free
// Lanczos iteration seeded inside the sector (throws std::runtime_error with
// a diagnostic if it fails to converge).  n_sites beyond memory_cap is
// rejected (full-space vectors would exceed the intended footprint).
double exact_ground_energy(const ModelParams& params, int dense_cap = 14,
                           int memory_cap = 26);

// E(x=0) - E_gs: the energy scale separating the reference state from the
// interacting ground state; the denominator of every fractional error.
double interaction_energy_scale(const ModelParams& params, int dense_cap = 14,
                                int memory_cap = 26);

// --- explicit-field Pauli export -------------------------------------------

struct PauliTerm {
  double coeff = 0.0;
  // One entry per qubit, index 0 = qubit 1 (most significant).  x[j]/z[j] in
  // {0,1}; both set means Y.
  std::vector<std::uint8_t> x, z;

  int pauli_weight() const;    // positions with x | z
  int hamming_weight() const;  // W_X + 2 W_Y + W_Z = sum(x) + sum(z)
  std::string to_string() const;  // "coeff xbits zbits", bits qubit 1 first
};

struct PauliOperator {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;
};

// Single-link field term sum_l (l - Lambda/2)^2 |l><l| on m qubits,
// expanded into Z-strings (identity component included).
PauliOperator field_block(int m);

// Single-bond hop sigma_+ (x) R (x) sigma_-  + h.c. on 1 + m + 1 qubits with
// unit coupling, where R = sum_{l=0}^{Lambda-2} |l+1><l| is the truncated
// (non-cyclic) field raising operator.
PauliOperator interaction_block(int m);

// Full explicit-field Hamiltonian on N + m(N-1) qubits: staggered mass terms,
// one field block per link, one interaction block (scaled by x) per bond.
// Identity contributions are merged into a single weight-0 term.
PauliOperator build_pauli_hamiltonian(const ModelParams& params);

// Basis index of an explicit-field product state |spins, links> given the
// spin configuration and per-link field values l_n = L(n) + Lambda/2.
std::uint64_t explicit_basis_index(const ModelParams& params,
                                   std::uint64_t spin_config,
                                   const std::vector<int>& link_values);

// Apply one Pauli term to a basis state: P|b> = phase |b ^ xmask>.
// Returns the real phase (terms with even Y count only) and the image index.
double apply_pauli_to_basis(const PauliTerm& term, std::uint64_t basis_in,
                            std::uint64_t* basis_out);

}  // namespace qk
