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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aqc/hamiltonian.hpp"
#include "aqc/metrics.hpp"

namespace aqc {

/// Distribution of the non-trivial couplings J_1 ... J_{2^n - 1}.
struct SamplerSpec {
  enum class Kind { kUniform, kGaussian, kGrid };

  Kind kind = Kind::kUniform;
  /// Uniform and grid: couplings lie in [-half_width, half_width].
  double half_width = 3.0;
  /// Gaussian: standard deviation around zero.
  double sigma = 1.0;
  /// Grid: lattice points per coupling axis.
  int points_per_axis = 2;
  std::uint64_t seed = 0;

  static SamplerSpec uniform(double half_width, std::uint64_t seed = 0);
  static SamplerSpec gaussian(double sigma, std::uint64_t seed = 0);
  static SamplerSpec grid(int points_per_axis, double half_width);

  void validate() const;

  /// "uniform(3)", "gaussian(1)" or "grid(11,3)"; the seed is not included.
  std::string describe() const;
  /// Inverse of describe(); throws std::invalid_argument.
  static SamplerSpec parse(std::string_view text, std::uint64_t seed = 0);
};

/// Coordinate `i` of a `points`-point lattice over [-a, a]; exactly
/// antisymmetric under i -> points - 1 - i.
double lattice_value(int i, int points, double half_width);

/// Number of lattice points of a grid sampler for `qubits` qubits.
std::uint64_t lattice_size(const SamplerSpec& spec, int qubits);

/// Couplings of instance `index`. Random kinds draw J_1, J_2, ... in order
/// from substream(seed, index); the grid kind decodes `index` row-major with
/// the last coupling varying fastest. Throws std::out_of_range for grid
/// indices beyond the lattice.
CouplingVector sample_couplings(const SamplerSpec& spec, int qubits, std::uint64_t index);

struct EnsembleConfig {
  int qubits = 2;
  std::vector<double> times;
  std::uint64_t sample_count = 1;
  SamplerSpec sampler;
  Settings settings;
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct EnsembleSummary {
  std::uint64_t records = 0;
  std::uint64_t failures = 0;
  double wall_seconds = 0.0;
};

using RecordSink = std::function<void(const InstanceRecord&)>;

/// Runs every (instance, T) pair. Each instance is prepared once and reused
/// for all T. Records reach `sink` ordered by (index, position of T in
/// `times`), from one thread at a time, whatever the thread count.
EnsembleSummary run_ensemble(const EnsembleConfig& config, const RecordSink& sink);

/// Generic form used by run_ensemble() and slice_sweep().
EnsembleSummary run_instances(std::uint64_t count,
                              const std::function<CouplingVector(std::uint64_t)>& couplings_for,
                              std::span<const double> times, const Settings& settings,
                              unsigned threads, const RecordSink& sink);

struct SliceSpec {
  double j3 = 0.43;
  int points_per_axis = 101;
  double half_width = 3.0;
};

/// Two-qubit (J_1, J_2) lattice at fixed J_3. Index i1 * k + i2 holds
/// J_1 = lattice_value(i1), J_2 = lattice_value(i2).
CouplingVector slice_couplings(const SliceSpec& slice, std::uint64_t index);

EnsembleSummary slice_sweep(const SliceSpec& slice, std::span<const double> times,
                            const Settings& settings, unsigned threads, const RecordSink& sink);

std::vector<InstanceRecord> slice_sweep(const SliceSpec& slice, std::span<const double> times,
                                        const Settings& settings, unsigned threads = 0);

}  // namespace aqc
