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
#include <string>
#include <string_view>
#include <vector>

#include "aqc/evolution.hpp"
#include "aqc/hamiltonian.hpp"
#include "aqc/spectrum.hpp"

namespace aqc {

/// Tolerances and grid sizes shared by every stage of an instance run.
struct Settings {
  double ode_tol = 1e-10;
  int gap_grid = 1001;
  double refine_tol = 1e-8;
  int overlap_grid = 501;
  int diagnostics_grid = 501;
  double deg_tol = kDefaultDegeneracyTol;
  double norm_drift_ceiling = 1e-6;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;

  GapSearchOptions gap_options() const { return {gap_grid, refine_tol, deg_tol}; }
  EvolutionOptions evolution_options() const;
};

namespace flags {
inline constexpr unsigned kDegenerate = 1U << 0;         // final ground level degenerate
inline constexpr unsigned kTie = 1U << 1;                // several global gap minima
inline constexpr unsigned kEndpoint = 1U << 2;           // s* at 0 or 1
inline constexpr unsigned kOverlapDegenerate = 1U << 3;  // interior degenerate ground state
inline constexpr unsigned kNormDrift = 1U << 4;          // drift above the ceiling
inline constexpr unsigned kFailed = 1U << 5;             // integration or eigensolver failure
}  // namespace flags

/// "degenerate|endpoint" style rendering, empty when no flag is set.
std::string format_flags(unsigned value);
/// Inverse of format_flags(); throws std::invalid_argument on unknown names.
unsigned parse_flags(std::string_view text);

struct InstanceRecord {
  std::uint64_t index = 0;
  CouplingVector couplings = CouplingVector::zero(1);
  double T = 0.0;
  double min_gap = 0.0;
  double s_star = 0.0;
  double success_prob = 0.0;
  double energy_error = 0.0;
  double avg_overlap = 0.0;
  double abs_J_top = 0.0;
  std::uint64_t ground_subspace_dim = 1;
  double max_norm_drift = 0.0;
  double matrix_element_max = 0.0;
  double criterion_bound = 0.0;
  unsigned flags = 0;

  int qubits() const noexcept { return couplings.qubits(); }
  bool has(unsigned flag) const noexcept { return (flags & flag) != 0; }
};

struct SuccessProbability {
  double probability = 0.0;
  std::size_t ground_subspace_dim = 0;
};

/// Weight of the final state on the ground subspace
/// {y : f_y - min f < deg_tol}; for a non-degenerate ground level this is
/// |<0;1|psi(1)>|^2.
SuccessProbability success_probability(std::span<const Complex> final_state,
                                       const FinalEnergies& f,
                                       double deg_tol = kDefaultDegeneracyTol);

/// <psi|H_F|psi> - min f, accumulated as sum |psi_y|^2 (f_y - min f) so the
/// result is never negative.
double energy_error(std::span<const Complex> final_state, const FinalEnergies& f);

/// Orthonormal basis of the instantaneous ground level on one grid point.
struct GroundSpace {
  double s = 0.0;
  std::size_t dim = 0;
  std::vector<double> vectors;  // `count` vectors of length dim, back to back
  std::size_t count = 0;
};

GroundSpace ground_space(const Eigensystem& eigen, double s, double deg_tol);

struct OverlapResult {
  double delta = 0.0;
  /// Interior grid points whose ground level was degenerate.
  std::size_t degenerate_points = 0;
};

/// Trapezoid rule for the integral over [0, 1] of |<0;s|psi(s)>|^2 on a
/// uniform grid; the result is clamped to [0, 1].
OverlapResult average_overlap(std::span<const TrajectorySample> samples,
                              std::span<const GroundSpace> ground);

/// Solves the instantaneous ground states itself.
OverlapResult average_overlap(std::span<const TrajectorySample> samples, const CouplingVector& cv,
                              double deg_tol = kDefaultDegeneracyTol);

/// Everything about an instance that does not depend on T.
struct PreparedInstance {
  CouplingVector couplings = CouplingVector::zero(1);
  FinalEnergies energies;
  GapResult gap;
  AdiabaticDiagnostics diagnostics;
  std::vector<double> overlap_grid;
  std::vector<GroundSpace> ground;
  bool failed = false;
  std::string failure;
};

PreparedInstance prepare_instance(const CouplingVector& cv, const Settings& settings);

/// Never throws for numerical trouble: failures come back as flagged records.
InstanceRecord run_instance(const PreparedInstance& prepared, double T, const Settings& settings,
                            std::uint64_t index = 0);
InstanceRecord run_instance(const CouplingVector& cv, double T, const Settings& settings,
                            std::uint64_t index = 0);

}  // namespace aqc
