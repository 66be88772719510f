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

#include "aqc/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace aqc {
namespace {

constexpr std::array<std::pair<unsigned, std::string_view>, 6> kFlagNames{{
    {flags::kDegenerate, "degenerate"},
    {flags::kTie, "tie"},
    {flags::kEndpoint, "endpoint"},
    {flags::kOverlapDegenerate, "overlap_degenerate"},
    {flags::kNormDrift, "norm_drift"},
    {flags::kFailed, "failed"},
}};

void require(bool ok, const char* field) {
  if (!ok) throw std::invalid_argument(std::string("invalid setting: ") + field);
}

}  // namespace

void Settings::validate() const {
  require(ode_tol > 0.0, "ode_tol");
  require(gap_grid >= 3, "gap_grid");
  require(refine_tol > 0.0, "refine_tol");
  require(overlap_grid >= 2, "overlap_grid");
  require(diagnostics_grid >= 2, "diagnostics_grid");
  require(deg_tol > 0.0, "deg_tol");
  require(norm_drift_ceiling > 0.0, "norm_drift_ceiling");
}

EvolutionOptions Settings::evolution_options() const {
  EvolutionOptions options;
  options.tol = ode_tol;
  options.norm_drift_ceiling = norm_drift_ceiling;
  return options;
}

std::string format_flags(unsigned value) {
  std::string out;
  for (const auto& [bit, name] : kFlagNames) {
    if ((value & bit) == 0) continue;
    if (!out.empty()) out += '|';
    out += name;
  }
  return out;
}

unsigned parse_flags(std::string_view text) {
  unsigned value = 0;
  while (!text.empty()) {
    const auto bar = text.find('|');
    const std::string_view name = text.substr(0, bar);
    const auto it = std::find_if(kFlagNames.begin(), kFlagNames.end(),
                                 [&](const auto& entry) { return entry.second == name; });
    if (it == kFlagNames.end()) throw std::invalid_argument("unknown flag '" + std::string(name) + "'");
    value |= it->first;
    if (bar == std::string_view::npos) break;
    text.remove_prefix(bar + 1);
  }
  return value;
}

SuccessProbability success_probability(std::span<const Complex> final_state,
                                       const FinalEnergies& f, double deg_tol) {
  if (final_state.size() != f.size()) throw std::invalid_argument("state dimension mismatch");
  if (!(deg_tol > 0.0)) throw std::invalid_argument("degeneracy tolerance must be positive");
  const double ground = f.min();
  SuccessProbability out;
  for (std::size_t y = 0; y < f.size(); ++y) {
    if (f[y] - ground < deg_tol) {
      out.probability += std::norm(final_state[y]);
      ++out.ground_subspace_dim;
    }
  }
  return out;
}

double energy_error(std::span<const Complex> final_state, const FinalEnergies& f) {
  if (final_state.size() != f.size()) throw std::invalid_argument("state dimension mismatch");
  const double ground = f.min();
  double excess = 0.0;
  for (std::size_t y = 0; y < f.size(); ++y) excess += std::norm(final_state[y]) * (f[y] - ground);
  return excess;
}

GroundSpace ground_space(const Eigensystem& eigen, double s, double deg_tol) {
  GroundSpace g;
  g.s = s;
  g.dim = eigen.dim;
  while (g.count < eigen.dim && eigen.values[g.count] - eigen.values[0] < deg_tol) ++g.count;
  g.vectors.assign(eigen.vectors.begin(),
                   eigen.vectors.begin() + static_cast<std::ptrdiff_t>(g.count * eigen.dim));
  return g;
}

OverlapResult average_overlap(std::span<const TrajectorySample> samples,
                              std::span<const GroundSpace> ground) {
  const std::size_t count = samples.size();
  if (count < 2) throw std::invalid_argument("overlap quadrature needs at least 2 samples");
  if (ground.size() != count) throw std::invalid_argument("ground spaces do not match samples");
  const double h = 1.0 / static_cast<double>(count - 1);

  OverlapResult out;
  double sum = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const TrajectorySample& sample = samples[k];
    const GroundSpace& g = ground[k];
    if (std::abs(sample.s - static_cast<double>(k) * h) > 1e-12 || std::abs(g.s - sample.s) > 1e-12) {
      throw std::invalid_argument("overlap quadrature requires a uniform grid over [0, 1]");
    }
    if (sample.state.size() != g.dim) throw std::invalid_argument("state dimension mismatch");
    double weight = 0.0;
    for (std::size_t v = 0; v < g.count; ++v) {
      const double* basis = g.vectors.data() + v * g.dim;
      Complex amp{0.0, 0.0};
      for (std::size_t y = 0; y < g.dim; ++y) amp += basis[y] * sample.state[y];
      weight += std::norm(amp);
    }
    if (g.count > 1 && k > 0 && k + 1 < count) ++out.degenerate_points;
    sum += (k == 0 || k + 1 == count) ? 0.5 * weight : weight;
  }
  out.delta = std::clamp(sum * h, 0.0, 1.0);
  return out;
}

OverlapResult average_overlap(std::span<const TrajectorySample> samples, const CouplingVector& cv,
                              double deg_tol) {
  const FinalEnergies f = final_energies(cv);
  const SymmetricOperator initial = build_initial(cv.qubits());
  std::vector<GroundSpace> ground;
  ground.reserve(samples.size());
  for (const TrajectorySample& sample : samples) {
    ground.push_back(ground_space(eigensystem(interpolate(initial, f, sample.s)), sample.s, deg_tol));
  }
  return average_overlap(samples, ground);
}

PreparedInstance prepare_instance(const CouplingVector& cv, const Settings& settings) {
  settings.validate();
  PreparedInstance p;
  p.couplings = cv;
  p.energies = final_energies(cv);
  p.overlap_grid = uniform_grid(settings.overlap_grid);
  try {
    p.gap = find_min_gap(p.energies, settings.gap_options());
    const SymmetricOperator initial = build_initial(cv.qubits());
    p.ground.reserve(p.overlap_grid.size());
    const bool shared_grid = settings.diagnostics_grid == settings.overlap_grid;
    for (double s : p.overlap_grid) {
      const Eigensystem es = eigensystem(interpolate(initial, p.energies, s));
      p.ground.push_back(ground_space(es, s, settings.deg_tol));
      if (shared_grid) accumulate_diagnostics(p.energies, es, settings.deg_tol, p.diagnostics);
    }
    if (!shared_grid) {
      p.diagnostics = adiabatic_diagnostics(cv, settings.diagnostics_grid, settings.deg_tol);
    }
  } catch (const EigensolverError& e) {
    p.failed = true;
    p.failure = e.what();
  }
  return p;
}

InstanceRecord run_instance(const PreparedInstance& prepared, double T, const Settings& settings,
                            std::uint64_t index) {
  InstanceRecord r;
  r.index = index;
  r.couplings = prepared.couplings;
  r.T = T;
  r.abs_J_top = std::abs(prepared.couplings.top());

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  auto mark_failed = [&] {
    r.flags |= flags::kFailed;
    r.success_prob = r.energy_error = r.avg_overlap = r.max_norm_drift = nan;
  };
  if (prepared.failed) {
    r.min_gap = r.s_star = r.matrix_element_max = r.criterion_bound = nan;
    mark_failed();
    return r;
  }

  r.min_gap = prepared.gap.min_gap;
  r.s_star = prepared.gap.s_star;
  r.matrix_element_max = prepared.diagnostics.matrix_element_max;
  r.criterion_bound = prepared.diagnostics.criterion_bound;
  if (prepared.gap.tie) r.flags |= flags::kTie;
  if (prepared.gap.at_endpoint) r.flags |= flags::kEndpoint;

  const double ground = prepared.energies.min();
  r.ground_subspace_dim = static_cast<std::uint64_t>(
      std::count_if(prepared.energies.values.begin(), prepared.energies.values.end(),
                    [&](double e) { return e - ground < settings.deg_tol; }));
  if (r.ground_subspace_dim > 1) r.flags |= flags::kDegenerate;

  try {
    const IntegrationResult run =
        propagate(prepared.energies, T, uniform_superposition(prepared.couplings.qubits()), 0.0,
                  1.0, prepared.overlap_grid, settings.evolution_options());
    const SuccessProbability p = success_probability(run.final_state, prepared.energies, settings.deg_tol);
    r.success_prob = std::clamp(p.probability, 0.0, 1.0);
    r.energy_error = energy_error(run.final_state, prepared.energies);
    const OverlapResult overlap = average_overlap(run.samples, prepared.ground);
    r.avg_overlap = overlap.delta;
    if (overlap.degenerate_points > 0) r.flags |= flags::kOverlapDegenerate;
    r.max_norm_drift = run.max_norm_drift;
    if (run.drift_exceeded) r.flags |= flags::kNormDrift;
  } catch (const IntegrationError&) {
    mark_failed();
  }
  return r;
}

InstanceRecord run_instance(const CouplingVector& cv, double T, const Settings& settings,
                            std::uint64_t index) {
  return run_instance(prepare_instance(cv, settings), T, settings, index);
}

}  // namespace aqc
