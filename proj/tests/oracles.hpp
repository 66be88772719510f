// Copyright 2026 The aqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Independent reference implementations used only by the tests. Nothing here
// calls into the library's numerical kernels.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "aqc/hamiltonian.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Tensor product with `op` on the qubit stored in bit `bit` and identities
// elsewhere; the leftmost factor is the most significant bit.
inline Matrix on_bit(const Matrix& op, int bit, int qubits) {
  Matrix out = Matrix::Identity(1, 1);
  for (int b = qubits - 1; b >= 0; --b) out = kron(out, b == bit ? op : Matrix::Identity(2, 2));
  return out;
}

inline Matrix initial(int qubits) {
  const auto dim = static_cast<Eigen::Index>(1) << qubits;
  Matrix h = Matrix::Zero(dim, dim);
  for (int bit = 0; bit < qubits; ++bit) h -= on_bit(pauli_x(), bit, qubits);
  return h;
}

// Sum over x of J_x times the product of sigma_z on the set bits of x.
inline Matrix final_hamiltonian(const aqc::CouplingVector& cv) {
  const int n = cv.qubits();
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (std::size_t x = 1; x < cv.size(); ++x) {
    Matrix term = Matrix::Identity(dim, dim);
    for (int bit = 0; bit < n; ++bit) {
      if ((x >> bit) & 1U) term = term * on_bit(pauli_z(), bit, n);
    }
    h += cv[x] * term;
  }
  return h;
}

inline std::vector<double> final_diagonal(const aqc::CouplingVector& cv) {
  const Matrix h = final_hamiltonian(cv);
  std::vector<double> out(static_cast<std::size_t>(h.rows()));
  for (Eigen::Index y = 0; y < h.rows(); ++y) out[static_cast<std::size_t>(y)] = h(y, y);
  return out;
}

inline Matrix hamiltonian(const aqc::CouplingVector& cv, double s) {
  return (1.0 - s) * initial(cv.qubits()) + s * final_hamiltonian(cv);
}

inline CVector to_eigen(const std::vector<Complex>& v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = v[k];
  return out;
}

inline std::vector<Complex> from_eigen(const CVector& v) {
  return std::vector<Complex>(v.data(), v.data() + v.size());
}

// Classical fixed-step RK4 on the dense matrix, psi' = -i T H(s) psi.
inline CVector rk4(const aqc::CouplingVector& cv, double T, int steps, double s_end = 1.0) {
  const Matrix hi = initial(cv.qubits());
  const Matrix hf = final_hamiltonian(cv);
  const auto dim = hi.rows();
  const Complex minus_i_t(0.0, -T);
  auto rhs = [&](double s, const CVector& psi) -> CVector {
    const Matrix h = (1.0 - s) * hi + s * hf;
    return minus_i_t * (h.cast<Complex>() * psi);
  };
  CVector psi = CVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  const double h = s_end / steps;
  for (int k = 0; k < steps; ++k) {
    const double s = k * h;
    const CVector k1 = rhs(s, psi);
    const CVector k2 = rhs(s + h / 2, psi + (h / 2) * k1);
    const CVector k3 = rhs(s + h / 2, psi + (h / 2) * k2);
    const CVector k4 = rhs(s + h, psi + h * k3);
    psi += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

// States on the uniform grid j / (points - 1); `steps` must be a multiple of
// points - 1.
inline std::vector<CVector> rk4_grid(const aqc::CouplingVector& cv, double T, int steps, int points) {
  const Matrix hi = initial(cv.qubits());
  const Matrix hf = final_hamiltonian(cv);
  const Complex minus_i_t(0.0, -T);
  auto rhs = [&](double s, const CVector& psi) -> CVector {
    const Matrix h = (1.0 - s) * hi + s * hf;
    return minus_i_t * (h.cast<Complex>() * psi);
  };
  CVector psi = CVector::Constant(hi.rows(), 1.0 / std::sqrt(static_cast<double>(hi.rows())));
  const int every = steps / (points - 1);
  std::vector<CVector> out{psi};
  const double h = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    const double s = k * h;
    const CVector k1 = rhs(s, psi);
    const CVector k2 = rhs(s + h / 2, psi + (h / 2) * k1);
    const CVector k3 = rhs(s + h / 2, psi + (h / 2) * k2);
    const CVector k4 = rhs(s + h, psi + h * k3);
    psi += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((k + 1) % every == 0) out.push_back(psi);
  }
  return out;
}

// Ground-level projector weight of psi at reduced time s.
inline double ground_weight(const aqc::CouplingVector& cv, double s, const CVector& psi, double deg_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian(cv, s));
  const auto& e = es.eigenvalues();
  double w = 0.0;
  for (Eigen::Index m = 0; m < e.size() && e(m) - e(0) < deg_tol; ++m) {
    w += std::norm(es.eigenvectors().col(m).cast<Complex>().dot(psi));
  }
  return w;
}

// One qubit: H(s) = s J sigma_z - (1 - s) sigma_x.
inline double one_qubit_gap(double j, double s) {
  return 2.0 * std::sqrt(s * s * j * j + (1.0 - s) * (1.0 - s));
}
inline double one_qubit_min_gap(double j) { return 2.0 * std::abs(j) / std::sqrt(1.0 + j * j); }
inline double one_qubit_s_star(double j) { return 1.0 / (1.0 + j * j); }
// |<1;s| (H_F - H_I) |0;s>| from the rotation angle of the 2x2 eigenbasis.
inline double one_qubit_matrix_element(double j, double s) {
  return std::abs(j) / std::sqrt(s * s * j * j + (1.0 - s) * (1.0 - s));
}

inline std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace oracle
