#pragma once
// Recursive Pauli-basis transform of a dense operator on q qubits:
// M = sum_P c_P P over all 4^q Pauli strings.  Runs in O(4^q * q) by block
// recursion on the leading qubit.  Coefficient index is base-4 with the most
// significant digit belonging to qubit 1; digits 0=I, 1=X, 2=Y, 3=Z.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace qk::detail {

using PauliCoeffs = std::vector<std::complex<double>>;

inline void pauli_transform_rec(const Eigen::MatrixXcd& block, PauliCoeffs& out,
                                std::size_t base, std::size_t stride) {
  const Eigen::Index dim = block.rows();
  if (dim == 1) {
    out[base] = block(0, 0);
    return;
  }
  const Eigen::Index h = dim / 2;
  const std::complex<double> imag_unit(0.0, 1.0);
  Eigen::MatrixXcd a = block.topLeftCorner(h, h);
  Eigen::MatrixXcd b = block.topRightCorner(h, h);
  Eigen::MatrixXcd c = block.bottomLeftCorner(h, h);
  Eigen::MatrixXcd d = block.bottomRightCorner(h, h);
  pauli_transform_rec((a + d) / 2.0, out, base + 0 * stride, stride / 4);
  pauli_transform_rec((b + c) / 2.0, out, base + 1 * stride, stride / 4);
  pauli_transform_rec(imag_unit * (b - c) / 2.0, out, base + 2 * stride,
                      stride / 4);
  pauli_transform_rec((a - d) / 2.0, out, base + 3 * stride, stride / 4);
}

inline PauliCoeffs pauli_transform(const Eigen::MatrixXcd& op, int q) {
  PauliCoeffs out(std::size_t(1) << (2 * q));
  pauli_transform_rec(op, out, 0, out.size() / 4);
  return out;
}

}  // namespace qk::detail
