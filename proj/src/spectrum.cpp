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

#include "aqc/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace aqc {
namespace {

struct JacobiOutput {
  std::vector<double> values;
  std::vector<double> vectors;  // row-major, column m is eigenvector m
};

inline void rotate(std::vector<double>& a, std::size_t n, double s, double tau, std::size_t i,
                   std::size_t j, std::size_t k, std::size_t l) {
  const double g = a[i * n + j];
  const double h = a[k * n + l];
  a[i * n + j] = g - s * (h + g * tau);
  a[k * n + l] = h + s * (g - h * tau);
}

// Rotations act on the strict upper triangle only; the diagonal is carried in
// `d` with the running corrections in `z` to limit rounding drift.
template <bool WithVectors>
JacobiOutput jacobi(const SymmetricOperator& op) {
  const std::size_t n = op.dim();
  std::vector<double> a(op.entries().begin(), op.entries().end());
  JacobiOutput out;
  if constexpr (WithVectors) {
    out.vectors.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + i] = 1.0;
  }
  std::vector<double> d(n), b(n), z(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = b[i] = a[i * n + i];

  for (int sweep = 1; sweep <= kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a[p * n + q]);
    }
    if (off == 0.0) {
      out.values = std::move(d);
      return out;
    }
    const double threshold = sweep < 4 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        const double g = 100.0 * std::abs(apq);
        if (sweep > 4 && std::abs(d[p]) + g == std::abs(d[p]) &&
            std::abs(d[q]) + g == std::abs(d[q])) {
          a[p * n + q] = 0.0;
          continue;
        }
        if (std::abs(apq) <= threshold) continue;
        double h = d[q] - d[p];
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        h = t * apq;
        z[p] -= h;
        z[q] += h;
        d[p] -= h;
        d[q] += h;
        a[p * n + q] = 0.0;
        for (std::size_t j = 0; j < p; ++j) rotate(a, n, s, tau, j, p, j, q);
        for (std::size_t j = p + 1; j < q; ++j) rotate(a, n, s, tau, p, j, j, q);
        for (std::size_t j = q + 1; j < n; ++j) rotate(a, n, s, tau, p, j, q, j);
        if constexpr (WithVectors) {
          for (std::size_t j = 0; j < n; ++j) rotate(out.vectors, n, s, tau, j, p, j, q);
        }
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      b[p] += z[p];
      d[p] = b[p];
      z[p] = 0.0;
    }
  }
  throw EigensolverError("Jacobi eigensolver did not converge in " +
                         std::to_string(kMaxJacobiSweeps) + " sweeps");
}

std::vector<std::size_t> ascending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
  return order;
}

}  // namespace

Eigensystem eigensystem(const SymmetricOperator& op) {
  const std::size_t n = op.dim();
  JacobiOutput raw = jacobi<true>(op);
  const auto order = ascending_order(raw.values);

  Eigensystem es;
  es.dim = n;
  es.values.resize(n);
  es.vectors.resize(n * n);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t src = order[m];
    es.values[m] = raw.values[src];
    double* dst = es.vectors.data() + m * n;
    for (std::size_t r = 0; r < n; ++r) dst[r] = raw.vectors[r * n + src];
    const auto lead = std::find_if(dst, dst + n, [](double v) {
      return std::abs(v) > Eigensystem::kSignThreshold;
    });
    if (lead != dst + n && *lead < 0.0) {
      for (std::size_t r = 0; r < n; ++r) dst[r] = -dst[r];
    }
  }
  return es;
}

std::vector<double> eigenvalues(const SymmetricOperator& op) {
  std::vector<double> values = jacobi<false>(op).values;
  std::sort(values.begin(), values.end());
  return values;
}

SpectralPoint spectral_point(const FinalEnergies& f, double s) {
  return SpectralPoint{s, eigensystem(interpolate(f, s))};
}

namespace {

class GapFunction {
 public:
  explicit GapFunction(const FinalEnergies& f)
      : f_(f), initial_(build_initial(std::countr_zero(f.size()))) {}

  double operator()(double s) const {
    const std::vector<double> e = eigenvalues(interpolate(initial_, f_, s));
    return e[1] - e[0];
  }

 private:
  const FinalEnergies& f_;
  SymmetricOperator initial_;
};

struct Sample {
  double s;
  double g;
};

// Golden-section search on [lo, hi] that returns the best point it evaluated,
// starting from `seed` (a grid point inside the bracket).
Sample golden_refine(const GapFunction& gap_at, double lo, double hi, Sample seed, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  Sample best = seed;
  auto consider = [&](double s) {
    const double g = gap_at(s);
    if (g < best.g) best = {s, g};
    return g;
  };
  double u = hi - inv_phi * (hi - lo);
  double v = lo + inv_phi * (hi - lo);
  double gu = consider(u);
  double gv = consider(v);
  while (hi - lo > tol) {
    if (gu <= gv) {
      hi = v;
      v = u;
      gv = gu;
      u = hi - inv_phi * (hi - lo);
      gu = consider(u);
    } else {
      lo = u;
      u = v;
      gu = gv;
      v = lo + inv_phi * (hi - lo);
      gv = consider(v);
    }
  }
  return best;
}

}  // namespace

double gap(const FinalEnergies& f, double s) {
  const std::vector<double> e = eigenvalues(interpolate(f, s));
  return e[1] - e[0];
}

double gap(const CouplingVector& cv, double s) { return gap(final_energies(cv), s); }

GapResult find_min_gap(const FinalEnergies& f, const GapSearchOptions& options) {
  if (options.coarse_points < 3) throw std::invalid_argument("gap search needs at least 3 grid points");
  if (!(options.refine_tol > 0.0)) throw std::invalid_argument("refine tolerance must be positive");

  const GapFunction gap_at(f);
  const std::size_t count = static_cast<std::size_t>(options.coarse_points);
  const double last = static_cast<double>(count - 1);
  std::vector<double> grid(count);
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = static_cast<double>(k) / last;
    values[k] = gap_at(grid[k]);
  }

  // A plateau contributes its last point only.
  std::vector<Sample> minima;
  for (std::size_t k = 0; k < count; ++k) {
    const bool left_ok = k == 0 || values[k] <= values[k - 1];
    const bool right_ok = k + 1 == count || values[k] < values[k + 1];
    if (!left_ok || !right_ok) continue;
    const double lo = grid[k == 0 ? 0 : k - 1];
    const double hi = grid[k + 1 == count ? k : k + 1];
    minima.push_back(golden_refine(gap_at, lo, hi, {grid[k], values[k]}, options.refine_tol));
  }

  GapResult result;
  const auto best = std::min_element(minima.begin(), minima.end(),
                                     [](const Sample& l, const Sample& r) { return l.g < r.g; });
  result.min_gap = best->g;
  result.s_star = best->s;
  for (const Sample& m : minima) {
    if (m.g > best->g + options.refine_tol) continue;
    if (std::abs(m.s - best->s) > 10.0 * options.refine_tol) result.tie = true;
    result.s_star = std::min(result.s_star, m.s);
  }
  result.at_endpoint = result.s_star == 0.0 || result.s_star == 1.0;
  result.final_degenerate = values.back() < options.deg_tol;
  return result;
}

GapResult find_min_gap(const CouplingVector& cv, const GapSearchOptions& options) {
  return find_min_gap(final_energies(cv), options);
}

void accumulate_diagnostics(const FinalEnergies& f, const Eigensystem& eigen, double deg_tol,
                            AdiabaticDiagnostics& diagnostics) {
  const std::size_t dim = eigen.dim;
  // (H_F - H_I) |0;s>
  const auto ground = eigen.vector(0);
  std::vector<double> image(dim);
  for (std::size_t y = 0; y < dim; ++y) {
    double flips = 0.0;
    for (std::size_t bit = 1; bit < dim; bit <<= 1) flips += ground[y ^ bit];
    image[y] = f[y] * ground[y] + flips;
  }
  for (std::size_t m = 1; m < dim; ++m) {
    const double spacing = eigen.values[m] - eigen.values[0];
    if (spacing < deg_tol) {
      ++diagnostics.skipped_pairs;
      continue;
    }
    const auto excited = eigen.vector(m);
    const double element =
        std::abs(std::inner_product(excited.begin(), excited.end(), image.begin(), 0.0));
    if (m == 1) diagnostics.matrix_element_max = std::max(diagnostics.matrix_element_max, element);
    diagnostics.criterion_bound =
        std::max(diagnostics.criterion_bound, element / (spacing * spacing));
  }
}

AdiabaticDiagnostics adiabatic_diagnostics(const CouplingVector& cv, int grid_points,
                                           double deg_tol) {
  if (grid_points < 2) throw std::invalid_argument("diagnostics need at least 2 grid points");
  const FinalEnergies f = final_energies(cv);
  const SymmetricOperator initial = build_initial(cv.qubits());
  AdiabaticDiagnostics diagnostics;
  const double last = static_cast<double>(grid_points - 1);
  for (int k = 0; k < grid_points; ++k) {
    const Eigensystem es = eigensystem(interpolate(initial, f, k / last));
    accumulate_diagnostics(f, es, deg_tol, diagnostics);
  }
  return diagnostics;
}

}  // namespace aqc
