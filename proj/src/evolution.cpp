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

#include "aqc/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace aqc {
namespace {

// Dormand & Prince (1980) 5(4) tableau with the Shampine continuous extension.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

class SchrodingerRhs {
 public:
  SchrodingerRhs(const FinalEnergies& f, double T) : f_(f), T_(T) {}

  // out = -i T H(s) psi
  void operator()(double s, std::span<const Complex> psi, std::span<Complex> out) const {
    apply_hamiltonian(f_, s, psi, out);
    for (Complex& v : out) v = Complex{T_ * v.imag(), -T_ * v.real()};
  }

 private:
  const FinalEnergies& f_;
  double T_;
};

Complex interpolate_component(std::span<const Complex> coef, std::size_t dim, std::size_t k,
                              double theta) {
  const double theta1 = 1.0 - theta;
  return coef[k] +
         theta * (coef[dim + k] +
                  theta1 * (coef[2 * dim + k] +
                            theta * (coef[3 * dim + k] + theta1 * coef[4 * dim + k])));
}

QuantumState interpolate_step(const DenseStep& step, double s) {
  const std::size_t dim = step.coefficients.size() / 5;
  const double theta = (s - step.s_begin) / step.h;
  QuantumState out(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    out[k] = interpolate_component(step.coefficients, dim, k, theta);
  }
  return out;
}

}  // namespace

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw std::invalid_argument("a uniform grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double last = static_cast<double>(points - 1);
  for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = k / last;
  return grid;
}

IntegrationResult propagate(const FinalEnergies& f, double T, QuantumState initial, double s_begin,
                            double s_end, std::span<const double> output_grid,
                            const EvolutionOptions& options) {
  const std::size_t dim = f.size();
  if (initial.size() != dim) throw std::invalid_argument("initial state dimension mismatch");
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("computation time must be positive");
  if (!(options.tol > 0.0)) throw std::invalid_argument("integration tolerance must be positive");
  if (!(s_begin >= 0.0 && s_begin <= 1.0 && s_end >= 0.0 && s_end <= 1.0)) {
    throw std::invalid_argument("integration span must lie inside [0, 1]");
  }
  const double dir = s_end >= s_begin ? 1.0 : -1.0;
  for (std::size_t i = 0; i < output_grid.size(); ++i) {
    const double g = output_grid[i];
    if (dir * (g - s_begin) < 0.0 || dir * (g - s_end) > 0.0) {
      throw std::invalid_argument("output point outside the integration span");
    }
    if (i > 0 && dir * (g - output_grid[i - 1]) < 0.0) {
      throw std::invalid_argument("output grid is not sorted in the integration direction");
    }
  }

  const SchrodingerRhs rhs(f, T);
  IntegrationResult result;
  result.samples.reserve(output_grid.size());
  std::size_t next_output = 0;

  QuantumState y = std::move(initial);
  const double norm0 = norm(y);
  QuantumState k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  QuantumState stage(dim), y_new(dim);

  while (next_output < output_grid.size() && output_grid[next_output] == s_begin) {
    result.samples.push_back({s_begin, y});
    ++next_output;
  }

  double s = s_begin;
  const double span = std::abs(s_end - s_begin);
  double h = dir * std::min(1e-4 / T, span);
  bool previous_rejected = false;
  rhs(s, y, k1);

  auto combine = [&](QuantumState& out, double step, std::initializer_list<std::pair<double, const QuantumState*>> terms) {
    for (std::size_t k = 0; k < dim; ++k) {
      Complex acc{0.0, 0.0};
      for (const auto& [w, v] : terms) acc += w * (*v)[k];
      out[k] = y[k] + step * acc;
    }
  };

  while (dir * (s_end - s) > 0.0) {
    if (std::abs(h) < options.min_step) {
      throw IntegrationError("step size underflow at s = " + std::to_string(s));
    }
    if (result.accepted_steps + result.rejected_steps >= options.max_steps) {
      throw IntegrationError("step budget exhausted at s = " + std::to_string(s));
    }
    bool last = false;
    if (dir * (s + h - s_end) >= 0.0) {
      h = s_end - s;
      last = true;
    }

    combine(stage, h, {{a21, &k1}});
    rhs(s + c2 * h, stage, k2);
    combine(stage, h, {{a31, &k1}, {a32, &k2}});
    rhs(s + c3 * h, stage, k3);
    combine(stage, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    rhs(s + c4 * h, stage, k4);
    combine(stage, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    rhs(s + c5 * h, stage, k5);
    combine(stage, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    const double s_next = last ? s_end : s + h;
    rhs(s_next, stage, k6);
    combine(y_new, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    rhs(s_next, y_new, k7);

    // Max norm over the 2 * dim real components, atol = rtol = tol.
    double err = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex e = h * (e1 * k1[k] + e3 * k3[k] + e4 * k4[k] + e5 * k5[k] + e6 * k6[k] +
                             e7 * k7[k]);
      const double sc_re =
          options.tol + options.tol * std::max(std::abs(y[k].real()), std::abs(y_new[k].real()));
      const double sc_im =
          options.tol + options.tol * std::max(std::abs(y[k].imag()), std::abs(y_new[k].imag()));
      if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
        err = std::numeric_limits<double>::infinity();
        break;
      }
      err = std::max({err, std::abs(e.real()) / sc_re, std::abs(e.imag()) / sc_im});
    }

    if (!(err <= 1.0)) {
      ++result.rejected_steps;
      previous_rejected = true;
      const double factor = std::isfinite(err) ? kSafety * std::pow(err, -0.2) : kMinFactor;
      h *= std::clamp(factor, kMinFactor, 1.0);
      continue;
    }

    ++result.accepted_steps;
    const bool need_dense = options.keep_steps || next_output < output_grid.size();
    DenseStep step;
    if (need_dense) {
      step.s_begin = s;
      step.h = h;
      step.coefficients.resize(5 * dim);
      Complex* c = step.coefficients.data();
      for (std::size_t k = 0; k < dim; ++k) {
        const Complex diff = y_new[k] - y[k];
        const Complex bspl = h * k1[k] - diff;
        c[k] = y[k];
        c[dim + k] = diff;
        c[2 * dim + k] = bspl;
        c[3 * dim + k] = diff - h * k7[k] - bspl;
        c[4 * dim + k] = h * (d1 * k1[k] + d3 * k3[k] + d4 * k4[k] + d5 * k5[k] + d6 * k6[k] +
                              d7 * k7[k]);
      }
    }
    while (next_output < output_grid.size() && dir * (output_grid[next_output] - s_next) <= 0.0) {
      const double g = output_grid[next_output];
      result.samples.push_back({g, g == s_next ? y_new : interpolate_step(step, g)});
      ++next_output;
    }
    if (options.keep_steps) result.trajectory.steps.push_back(std::move(step));

    s = s_next;
    std::swap(y, y_new);
    std::swap(k1, k7);
    result.max_norm_drift = std::max(result.max_norm_drift, std::abs(norm(y) - norm0));

    double factor = err == 0.0 ? kMaxFactor : kSafety * std::pow(err, -0.2);
    factor = std::clamp(factor, kMinFactor, kMaxFactor);
    if (previous_rejected) factor = std::min(factor, 1.0);
    previous_rejected = false;
    h *= factor;
  }

  result.drift_exceeded = result.max_norm_drift > options.norm_drift_ceiling;
  result.final_state = y;
  if (options.keep_steps) result.trajectory.final_state = y;
  return result;
}

IntegrationResult evolve(const CouplingVector& cv, double T, std::span<const double> output_grid,
                         const EvolutionOptions& options) {
  return propagate(final_energies(cv), T, uniform_superposition(cv.qubits()), 0.0, 1.0,
                   output_grid, options);
}

QuantumState dense_sample(const DenseTrajectory& trajectory, double s) {
  const auto& steps = trajectory.steps;
  if (steps.empty()) throw std::out_of_range("trajectory has no steps");
  const double first = steps.front().s_begin;
  const double last = steps.back().s_end();
  const double lo = std::min(first, last);
  const double hi = std::max(first, last);
  if (!(s >= lo && s <= hi)) throw std::out_of_range("s outside the integrated span");
  const std::size_t dim = steps.front().coefficients.size() / 5;

  const bool forward = last >= first;
  // First step whose end lies beyond s in the direction of integration.
  const auto it = std::partition_point(steps.begin(), steps.end(), [&](const DenseStep& st) {
    return forward ? st.s_end() <= s : st.s_end() >= s;
  });
  if (it == steps.end()) return trajectory.final_state;
  if (it->s_begin == s) {
    return QuantumState(it->coefficients.begin(), it->coefficients.begin() + static_cast<std::ptrdiff_t>(dim));
  }
  return interpolate_step(*it, s);
}

}  // namespace aqc
