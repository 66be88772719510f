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

#include "aqc/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aqc {

std::size_t basis_size(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(qubits) + " outside [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  return std::size_t{1} << qubits;
}

CouplingVector::CouplingVector(int qubits, std::vector<double> values)
    : qubits_(qubits), values_(std::move(values)) {
  if (values_.size() != basis_size(qubits)) {
    throw std::invalid_argument("coupling vector needs " + std::to_string(basis_size(qubits)) +
                                " entries, got " + std::to_string(values_.size()));
  }
  if (values_[0] != 0.0) throw std::invalid_argument("coupling J_0 must be zero");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("coupling values must be finite");
  }
}

CouplingVector CouplingVector::from_nontrivial(int qubits, std::span<const double> values) {
  if (values.size() + 1 != basis_size(qubits)) {
    throw std::invalid_argument(std::to_string(qubits) + " qubits take " +
                                std::to_string(basis_size(qubits) - 1) + " couplings, got " +
                                std::to_string(values.size()));
  }
  std::vector<double> all(values.size() + 1, 0.0);
  std::copy(values.begin(), values.end(), all.begin() + 1);
  return CouplingVector(qubits, std::move(all));
}

CouplingVector CouplingVector::zero(int qubits) {
  return CouplingVector(qubits, std::vector<double>(basis_size(qubits), 0.0));
}

CouplingVector flip_qubit(const CouplingVector& cv, int qubit) {
  if (qubit < 0 || qubit >= cv.qubits()) throw std::invalid_argument("qubit out of range");
  std::vector<double> out(cv.values().begin(), cv.values().end());
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t x = 0; x < out.size(); ++x) {
    if (x & mask) out[x] = -out[x];
  }
  return CouplingVector(cv.qubits(), std::move(out));
}

CouplingVector swap_qubits(const CouplingVector& cv, int a, int b) {
  if (a < 0 || a >= cv.qubits() || b < 0 || b >= cv.qubits()) {
    throw std::invalid_argument("qubit out of range");
  }
  std::vector<double> out(cv.size());
  for (std::size_t x = 0; x < cv.size(); ++x) {
    const std::size_t ba = (x >> a) & 1U;
    const std::size_t bb = (x >> b) & 1U;
    std::size_t y = x & ~((std::size_t{1} << a) | (std::size_t{1} << b));
    y |= (ba << b) | (bb << a);
    out[y] = cv[x];
  }
  return CouplingVector(cv.qubits(), std::move(out));
}

double FinalEnergies::min() const { return *std::min_element(values.begin(), values.end()); }

FinalEnergies final_energies(const CouplingVector& cv) {
  // The (-1)^popcount(x & y) kernel is the Sylvester-Hadamard matrix.
  std::vector<double> f(cv.values().begin(), cv.values().end());
  for (std::size_t half = 1; half < f.size(); half <<= 1) {
    for (std::size_t block = 0; block < f.size(); block += 2 * half) {
      for (std::size_t k = block; k < block + half; ++k) {
        const double u = f[k];
        const double v = f[k + half];
        f[k] = u + v;
        f[k + half] = u - v;
      }
    }
  }
  return FinalEnergies{std::move(f)};
}

SymmetricOperator::SymmetricOperator(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {}

SymmetricOperator::SymmetricOperator(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0 || !std::has_single_bit(dim_)) {
    throw std::invalid_argument("operator dimension must be a power of two");
  }
  if (entries_.size() != dim_ * dim_) throw std::invalid_argument("operator entry count mismatch");
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r + 1; c < dim_; ++c) {
      if (entries_[r * dim_ + c] != entries_[c * dim_ + r]) {
        throw std::invalid_argument("operator is not symmetric");
      }
    }
  }
}

double SymmetricOperator::max_abs() const noexcept {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

SymmetricOperator build_initial(int qubits) {
  const std::size_t dim = basis_size(qubits);
  SymmetricOperator h(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (int i = 0; i < qubits; ++i) {
      h.set(a, a ^ (std::size_t{1} << i), -1.0);
    }
  }
  return h;
}

namespace {

void check_reduced_time(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("reduced time " + std::to_string(s) + " outside [0, 1]");
  }
}

}  // namespace

SymmetricOperator interpolate(const SymmetricOperator& initial, const FinalEnergies& f, double s) {
  check_reduced_time(s);
  const std::size_t dim = initial.dim();
  if (f.size() != dim) throw std::invalid_argument("final energies do not match operator dimension");
  std::vector<double> entries(dim * dim);
  const double w = 1.0 - s;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      double v = w * initial(r, c);
      if (r == c) v += s * f[r];
      entries[r * dim + c] = v;
    }
  }
  return SymmetricOperator(dim, std::move(entries));
}

SymmetricOperator interpolate(const FinalEnergies& f, double s) {
  const int qubits = std::countr_zero(f.size());
  return interpolate(build_initial(qubits), f, s);
}

void apply_hamiltonian(const FinalEnergies& f, double s, std::span<const Complex> psi,
                       std::span<Complex> out) {
  const std::size_t dim = f.size();
  if (psi.size() != dim || out.size() != dim) {
    throw std::invalid_argument("state dimension does not match Hamiltonian");
  }
  const double w = 1.0 - s;
  for (std::size_t y = 0; y < dim; ++y) {
    Complex flips{0.0, 0.0};
    for (std::size_t bit = 1; bit < dim; bit <<= 1) flips += psi[y ^ bit];
    out[y] = s * f[y] * psi[y] - w * flips;
  }
}

QuantumState apply_hamiltonian(const CouplingVector& cv, const FinalEnergies& f, double s,
                               std::span<const Complex> psi) {
  if (f.size() != cv.size()) throw std::invalid_argument("final energies do not match couplings");
  QuantumState out(psi.size());
  apply_hamiltonian(f, s, psi, out);
  return out;
}

QuantumState uniform_superposition(int qubits) {
  const std::size_t dim = basis_size(qubits);
  return QuantumState(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
}

double norm(std::span<const Complex> psi) {
  double acc = 0.0;
  for (const Complex& a : psi) acc += std::norm(a);
  return std::sqrt(acc);
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
  if (bra.size() != ket.size()) throw std::invalid_argument("inner product dimension mismatch");
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < bra.size(); ++k) acc += std::conj(bra[k]) * ket[k];
  return acc;
}

}  // namespace aqc
