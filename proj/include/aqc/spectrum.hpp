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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "aqc/hamiltonian.hpp"

namespace aqc {

/// Energies closer than this are treated as degenerate.
inline constexpr double kDefaultDegeneracyTol = 1e-9;

class EigensolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
///
/// Eigenvector m is stored contiguously and its first component with
/// magnitude above kSignThreshold is positive.
struct Eigensystem {
  static constexpr double kSignThreshold = 1e-10;

  std::size_t dim = 0;
  std::vector<double> values;
  std::vector<double> vectors;

  std::span<const double> vector(std::size_t m) const {
    return std::span<const double>(vectors).subspan(m * dim, dim);
  }
};

struct SpectralPoint {
  double s = 0.0;
  Eigensystem eigen;
};

/// Cyclic Jacobi with threshold sweeps. Throws EigensolverError after
/// kMaxJacobiSweeps sweeps without convergence.
Eigensystem eigensystem(const SymmetricOperator& op);

/// Same rotations as eigensystem() without accumulating eigenvectors.
std::vector<double> eigenvalues(const SymmetricOperator& op);

inline constexpr int kMaxJacobiSweeps = 100;

SpectralPoint spectral_point(const FinalEnergies& f, double s);

/// E_1(s) - E_0(s).
double gap(const FinalEnergies& f, double s);
double gap(const CouplingVector& cv, double s);

struct GapSearchOptions {
  int coarse_points = 1001;
  double refine_tol = 1e-8;
  double deg_tol = kDefaultDegeneracyTol;
};

struct GapResult {
  double min_gap = 0.0;
  double s_star = 0.0;
  bool at_endpoint = false;
  /// gap(1) below the degeneracy tolerance.
  bool final_degenerate = false;
  /// Several separated minima agreed within refine_tol; s_star is the smallest.
  bool tie = false;
};

/// Scans gap(s) on a uniform grid that includes both endpoints, then refines
/// every grid-local minimum by golden-section search over its neighbouring
/// grid interval.
GapResult find_min_gap(const FinalEnergies& f, const GapSearchOptions& options = {});
GapResult find_min_gap(const CouplingVector& cv, const GapSearchOptions& options = {});

struct AdiabaticDiagnostics {
  /// max_s |<1;s| dH/ds |0;s>|
  double matrix_element_max = 0.0;
  /// max over s and m > 0 of |<m;s| dH/ds |0;s>| / (E_m - E_0)^2
  double criterion_bound = 0.0;
  /// (m, s) pairs left out because E_m - E_0 fell below the degeneracy tolerance.
  std::size_t skipped_pairs = 0;
};

/// Evaluates both adiabatic criteria on `grid_points` uniform points of [0, 1],
/// with dH/ds = H_F - H_I.
AdiabaticDiagnostics adiabatic_diagnostics(const CouplingVector& cv, int grid_points,
                                           double deg_tol = kDefaultDegeneracyTol);

/// Accumulates diagnostics for one already-solved grid point. Shared with the
/// instance pipeline, which solves each grid point once for several purposes.
void accumulate_diagnostics(const FinalEnergies& f, const Eigensystem& eigen, double deg_tol,
                            AdiabaticDiagnostics& diagnostics);

}  // namespace aqc
