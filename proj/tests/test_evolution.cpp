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


#include <doctest.h>

#include <random>

#include "aqc/evolution.hpp"
#include "aqc/spectrum.hpp"
#include "oracles.hpp"

using namespace aqc;

namespace {

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

double final_ground_probability(const CouplingVector& cv, const QuantumState& psi) {
  const auto f = final_energies(cv);
  const auto y = static_cast<std::size_t>(std::min_element(f.values.begin(), f.values.end()) - f.values.begin());
  return std::norm(psi[y]);
}

}  // namespace

TEST_CASE("zero couplings stay in the uniform superposition") {
  for (int n = 1; n <= 3; ++n) {
    for (double T : {5.0, 40.0}) {
      const auto grid = uniform_grid(11);
      const auto r = evolve(CouplingVector::zero(n), T, grid);
      const auto u = uniform_superposition(n);
      CHECK(std::abs(std::abs(inner_product(u, r.final_state)) - 1.0) < 1e-9);
      for (const auto& sample : r.samples) {
        const double s = sample.s;
        const Complex phase = std::polar(1.0, T * n * (s - s * s / 2));
        for (std::size_t k = 0; k < u.size(); ++k) CHECK(std::abs(sample.state[k] - phase * u[k]) < 1e-8);
      }
      CHECK(r.samples.front().s == 0.0);
      CHECK(r.samples.back().s == 1.0);
      CHECK(r.max_norm_drift < 1e-8);
    }
  }
}

TEST_CASE("final state agrees with a dense RK4 oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int n = 1; n <= 3; ++n) {
    std::vector<double> j(basis_size(n) - 1);
    for (double& v : j) v = u(rng);
    const auto cv = CouplingVector::from_nontrivial(n, j);
    for (double T : {5.0, 20.0}) {
      const auto r = evolve(cv, T, {});
      const auto ref = oracle::from_eigen(oracle::rk4(cv, T, 40000));
      CHECK(max_diff(r.final_state, ref) < 1e-7);
    }
  }
}

TEST_CASE("adiabatic limit for one qubit") {
  const auto cv = CouplingVector(1, {0.0, 1.0});
  const auto r = evolve(cv, 400.0, {});
  const double p = final_ground_probability(cv, r.final_state);
  CHECK(p > 0.999);
  EvolutionOptions tight;
  tight.tol = 1e-12;
  const auto r2 = evolve(cv, 400.0, {}, tight);
  CHECK(std::abs(final_ground_probability(cv, r2.final_state) - p) < 1e-6);
}

TEST_CASE("small final component is real on the symmetric one-qubit path") {
  const auto cv = CouplingVector(1, {0.0, 1.0});
  for (double T : {5.0, 10.0, 20.0, 40.0}) {
    const auto r = evolve(cv, T, {});
    CHECK(std::abs(r.final_state[0].imag()) < 1e-6);
  }
}

TEST_CASE("one-qubit amplitudes match the oracle for other couplings") {
  for (double j : {0.2, 0.5}) {
    const auto cv = CouplingVector(1, {0.0, j});
    for (double T : {5.0, 40.0}) {
      const auto r = evolve(cv, T, {});
      const auto ref = oracle::from_eigen(oracle::rk4(cv, T, 60000));
      CHECK(std::abs(r.final_state[0].imag() - ref[0].imag()) < 1e-7);
      CHECK(std::abs(r.final_state[0].real() - ref[0].real()) < 1e-7);
    }
  }
}

TEST_CASE("linearity under a global phase") {
  const auto cv = CouplingVector(2, {0.0, 0.4, -1.2, 0.9});
  const auto f = final_energies(cv);
  const Complex alpha = std::polar(1.0, 0.731);
  QuantumState start = uniform_superposition(2);
  const auto a = propagate(f, 10.0, start, 0.0, 1.0, {});
  for (Complex& c : start) c *= alpha;
  const auto b = propagate(f, 10.0, start, 0.0, 1.0, {});
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(b.final_state[k] - alpha * a.final_state[k]) < 1e-9);
}

TEST_CASE("self-convergence against a tight reference") {
  const auto cv = CouplingVector(2, {0.0, 1.3, -0.6, 0.45});
  EvolutionOptions ref_opt;
  ref_opt.tol = 1e-13;
  const auto ref = evolve(cv, 20.0, {}, ref_opt).final_state;
  std::vector<double> errors;
  for (double tol : {1e-8, 1e-9}) {
    EvolutionOptions o;
    o.tol = tol;
    errors.push_back(max_diff(evolve(cv, 20.0, {}, o).final_state, ref));
  }
  const double ratio = errors[0] / errors[1];
  CHECK(ratio > 4.0);
  CHECK(ratio < 25.0);
}

TEST_CASE("time reversal recovers the initial state") {
  const auto cv = CouplingVector(2, {0.0, -0.8, 1.9, 0.3});
  const auto f = final_energies(cv);
  EvolutionOptions o;
  o.tol = 1e-10;
  const auto forward = propagate(f, 5.0, uniform_superposition(2), 0.0, 1.0, {}, o);
  const auto back = propagate(f, 5.0, forward.final_state, 1.0, 0.0, {}, o);
  CHECK(max_diff(back.final_state, uniform_superposition(2)) < 10 * o.tol);
}

TEST_CASE("dense output") {
  const auto cv = CouplingVector(2, {0.0, 0.7, -1.3, 0.4});
  const auto f = final_energies(cv);
  EvolutionOptions o;
  o.keep_steps = true;
  const auto r = evolve(cv, 10.0, {}, o);
  const auto& steps = r.trajectory.steps;
  REQUIRE(steps.size() > 10);

  SUBCASE("exact at accepted step boundaries") {
    const auto& st = steps[7];
    const auto at = dense_sample(r.trajectory, st.s_begin);
    for (std::size_t k = 0; k < 4; ++k) CHECK(at[k] == st.coefficients[k]);
    const auto end = dense_sample(r.trajectory, 1.0);
    CHECK(end == r.final_state);
    CHECK(dense_sample(r.trajectory, 0.0) == uniform_superposition(2));
  }

  SUBCASE("grid samples coincide with trajectory samples") {
    const auto grid = uniform_grid(41);
    const auto g = evolve(cv, 10.0, grid, o);
    for (const auto& sample : g.samples) {
      CHECK(max_diff(sample.state, dense_sample(g.trajectory, sample.s)) == 0.0);
    }
  }

  SUBCASE("outside the span") {
    CHECK_THROWS_AS(dense_sample(r.trajectory, 1.0 + 1e-9), std::out_of_range);
    CHECK_THROWS_AS(dense_sample(r.trajectory, -1e-9), std::out_of_range);
    CHECK_THROWS_AS(dense_sample(DenseTrajectory{}, 0.5), std::out_of_range);
  }

  SUBCASE("stationary midpoint") {
    const auto z = evolve(CouplingVector::zero(3), 7.0, {}, o);
    const auto& st = z.trajectory.steps[z.trajectory.steps.size() / 2];
    const auto mid = dense_sample(z.trajectory, st.s_begin + st.h / 2);
    CHECK(std::abs(norm(mid) - 1.0) < 1e-8);
    CHECK(std::abs(std::abs(inner_product(uniform_superposition(3), mid)) - 1.0) < 1e-8);
  }

  SUBCASE("interpolation error shrinks with the tolerance") {
    // max over interior points of |interpolated - restarted|
    std::vector<double> grid;
    for (int j = 1; j < 50; ++j) grid.push_back(j / 50.0);
    std::vector<double> disc;
    for (double tol : {1e-8, 1e-9}) {
      EvolutionOptions t;
      t.tol = tol;
      const auto dense = evolve(cv, 10.0, grid, t);
      double worst = 0.0;
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto restart = propagate(f, 10.0, uniform_superposition(2), 0.0, grid[j], {}, t);
        worst = std::max(worst, max_diff(dense.samples[j].state, restart.final_state));
      }
      disc.push_back(worst);
    }
    CHECK(disc[0] / disc[1] >= 4.0);
  }

  SUBCASE("halving the tolerance at the midpoint") {
    const std::vector<double> mid{0.5};
    std::vector<double> disc;
    for (double tol : {1e-8, 5e-9}) {
      EvolutionOptions t;
      t.tol = tol;
      const auto dense = evolve(cv, 10.0, mid, t);
      const auto restart = propagate(f, 10.0, uniform_superposition(2), 0.0, 0.5, {}, t);
      disc.push_back(max_diff(dense.samples[0].state, restart.final_state));
    }
    MESSAGE("midpoint discrepancy ratio " << disc[0] / disc[1]);
    CHECK(disc[0] / disc[1] >= 4.0);
  }
}

TEST_CASE("integration errors and validation") {
  const auto cv = CouplingVector(1, {0.0, 1.0});
  CHECK_THROWS_AS(evolve(cv, 0.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(evolve(cv, -1.0, {}), std::invalid_argument);
  const std::vector<double> unsorted{0.5, 0.2};
  CHECK_THROWS_AS(evolve(cv, 5.0, unsorted), std::invalid_argument);
  const std::vector<double> outside{1.5};
  CHECK_THROWS_AS(evolve(cv, 5.0, outside), std::invalid_argument);
  EvolutionOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(evolve(cv, 5.0, {}, bad), std::invalid_argument);

  EvolutionOptions starved;
  starved.max_steps = 3;
  CHECK_THROWS_AS(evolve(cv, 50.0, {}, starved), IntegrationError);
  EvolutionOptions tiny;
  tiny.tol = 1e-300;
  CHECK_THROWS_AS(evolve(cv, 5.0, {}, tiny), IntegrationError);

  EvolutionOptions strict;
  strict.norm_drift_ceiling = 1e-18;
  const auto r = evolve(CouplingVector(2, {0.0, 1.0, 2.0, -1.5}), 20.0, {}, strict);
  CHECK(r.drift_exceeded);
  CHECK(r.accepted_steps > 0);
}
