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
#include <span>
#include <stdexcept>
#include <vector>

#include "aqc/hamiltonian.hpp"

namespace aqc {

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvolutionOptions {
  /// Absolute and relative local error tolerance.
  double tol = 1e-10;
  /// Results whose norm drifted further than this are flagged.
  double norm_drift_ceiling = 1e-6;
  double min_step = 1e-14;
  std::int64_t max_steps = 100'000'000;
  /// Retain every accepted step so the trajectory can be sampled afterwards.
  bool keep_steps = false;
};

/// Continuous extension of one accepted Dormand-Prince step.
struct DenseStep {
  double s_begin = 0.0;
  double h = 0.0;
  /// Five interpolation vectors of length dim, stored back to back.
  std::vector<Complex> coefficients;

  double s_end() const noexcept { return s_begin + h; }
};

/// Accepted steps of one integration, in integration order.
struct DenseTrajectory {
  std::vector<DenseStep> steps;
  QuantumState final_state;
};

struct TrajectorySample {
  double s = 0.0;
  QuantumState state;
};

struct IntegrationResult {
  QuantumState final_state;
  /// One entry per requested output point, in the requested order.
  std::vector<TrajectorySample> samples;
  std::int64_t accepted_steps = 0;
  std::int64_t rejected_steps = 0;
  double max_norm_drift = 0.0;
  bool drift_exceeded = false;
  /// Filled only when EvolutionOptions::keep_steps is set.
  DenseTrajectory trajectory;
};

/// Integrates d psi/ds = -i T H(s) psi over s in [0, 1] from the uniform
/// superposition with the adaptive Dormand-Prince 5(4) pair.
///
/// `output_grid` must be sorted ascending inside [0, 1]; samples are produced
/// from the fourth-order continuous extension of the step that contains them.
/// Throws IntegrationError on step-size underflow.
IntegrationResult evolve(const CouplingVector& cv, double T, std::span<const double> output_grid,
                         const EvolutionOptions& options = {});

/// General form of evolve(): any initial state and any span inside [0, 1].
/// `s_end < s_begin` integrates backwards; the output grid then has to be
/// sorted in the direction of integration.
IntegrationResult propagate(const FinalEnergies& f, double T, QuantumState initial, double s_begin,
                            double s_end, std::span<const double> output_grid,
                            const EvolutionOptions& options = {});

/// Interpolated state at `s`; reproduces stored states exactly at step
/// boundaries. Throws std::out_of_range outside the integrated span.
QuantumState dense_sample(const DenseTrajectory& trajectory, double s);

/// `points` uniformly spaced values covering [0, 1], endpoints included.
std::vector<double> uniform_grid(int points);

}  // namespace aqc
