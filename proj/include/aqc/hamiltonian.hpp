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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace aqc {

using Complex = std::complex<double>;

/// Complex amplitudes over the 2^n computational basis states.
using QuantumState = std::vector<Complex>;

/// Largest qubit count accepted by the constructors in this module.
inline constexpr int kMaxQubits = 12;

/// Number of basis states for `qubits` qubits; throws std::invalid_argument
/// when the count is outside [1, kMaxQubits].
std::size_t basis_size(int qubits);

/// Coefficients J_x of the diagonal problem Hamiltonian
///
///     H_F = sum_x J_x  prod_{i : bit i-1 of x set} sigma_z^(i)
///
/// Qubit i (1-based) is bit value 2^(i-1) of both the coupling index x and
/// the basis label y. J_0 is the energy shift and is always zero.
class CouplingVector {
 public:
  /// `values` holds all 2^n entries including J_0, which must be zero.
  CouplingVector(int qubits, std::vector<double> values);

  /// Builds from J_1 ... J_{2^n - 1}; J_0 is set to zero.
  static CouplingVector from_nontrivial(int qubits, std::span<const double> values);

  static CouplingVector zero(int qubits);

  int qubits() const noexcept { return qubits_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t x) const noexcept { return values_[x]; }
  std::span<const double> values() const noexcept { return values_; }

  /// The full n-local coupling J_{2^n - 1}.
  double top() const noexcept { return values_.back(); }

  friend bool operator==(const CouplingVector&, const CouplingVector&) = default;

 private:
  int qubits_;
  std::vector<double> values_;
};

/// Negates every J_x whose index has the bit of `qubit` (0-based) set.
/// Equivalent to conjugating H_F by sigma_x on that qubit.
CouplingVector flip_qubit(const CouplingVector& cv, int qubit);

/// Exchanges the roles of qubits `a` and `b` (0-based) in the coupling labels.
CouplingVector swap_qubits(const CouplingVector& cv, int a, int b);

/// Diagonal of H_F indexed by basis label y.
struct FinalEnergies {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t y) const noexcept { return values[y]; }
  double min() const;
};

/// f_y = sum_x J_x (-1)^popcount(x & y), evaluated with a fast Walsh-Hadamard
/// transform.
FinalEnergies final_energies(const CouplingVector& cv);

/// Dense real symmetric matrix, row-major with full storage.
class SymmetricOperator {
 public:
  SymmetricOperator() = default;
  explicit SymmetricOperator(std::size_t dim);

  /// Takes row-major entries; throws unless the matrix is exactly symmetric
  /// and the dimension is a power of two.
  SymmetricOperator(std::size_t dim, std::vector<double> entries);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * dim_ + c]; }

  /// Sets (r, c) and (c, r).
  void set(std::size_t r, std::size_t c, double value) noexcept {
    entries_[r * dim_ + c] = value;
    entries_[c * dim_ + r] = value;
  }

  std::span<const double> entries() const noexcept { return entries_; }

  /// Largest absolute entry.
  double max_abs() const noexcept;

  friend bool operator==(const SymmetricOperator&, const SymmetricOperator&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> entries_;
};

/// Transverse-field driver H_I = -sum_i sigma_x^(i).
SymmetricOperator build_initial(int qubits);

/// H(s) = (1 - s) H_I + s diag(f).
SymmetricOperator interpolate(const SymmetricOperator& initial, const FinalEnergies& f, double s);

/// Convenience: H(s) built straight from the final energies.
SymmetricOperator interpolate(const FinalEnergies& f, double s);

/// Writes H(s) psi into `out` without forming H(s):
///
///     (H(s) psi)_y = s f_y psi_y - (1 - s) sum_i psi_{y ^ 2^i}
///
/// `out` must not alias `psi`.
void apply_hamiltonian(const FinalEnergies& f, double s, std::span<const Complex> psi,
                       std::span<Complex> out);

QuantumState apply_hamiltonian(const CouplingVector& cv, const FinalEnergies& f, double s,
                               std::span<const Complex> psi);

/// Ground state of H_I: every amplitude equal to 2^(-n/2).
QuantumState uniform_superposition(int qubits);

double norm(std::span<const Complex> psi);

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);

}  // namespace aqc
