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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aqc/ensemble.hpp"

namespace aqc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ConfigMode { kEnsemble, kSlice };

/// Plot request attached to a run. One SVG is written per color field.
struct PlotRequest {
  std::string kind = "scatter";
  std::string x;
  std::string y;
  std::vector<std::string> colors;
  std::string output;
};

/// Parsed run document. Format: one `key = value` per line, `#` starts a
/// comment, lists are comma separated.
///
///   n, times, samples, sampler, seed, threads, output,
///   ode_tol, gap_grid, refine_tol, overlap_grid, diagnostics_grid, deg_tol,
///   norm_drift_ceiling, slice_j3, slice_points, slice_half_width,
///   plot_kind, plot_x, plot_y, plot_color, plot_output
///
/// Defaults: ode_tol 1e-10, gap_grid 1001, refine_tol 1e-8, overlap_grid 501,
/// diagnostics_grid 501, deg_tol 1e-9, norm_drift_ceiling 1e-6, samples 1,
/// seed 0, threads 0 (all cores), slice_points 101, slice_half_width 3.
struct RunConfig {
  EnsembleConfig ensemble;
  SliceSpec slice;
  std::string output;
  std::optional<PlotRequest> plot;
};

/// Throws ConfigError with a `line N` or `key` diagnostic. Ensemble mode
/// requires n, times and sampler; slice mode requires slice_j3 and times and
/// only accepts n = 2.
RunConfig parse_config(std::string_view text, ConfigMode mode = ConfigMode::kEnsemble);

RunConfig load_config(const std::string& path, ConfigMode mode = ConfigMode::kEnsemble);

/// Comma-separated reals; shared with the command line front end.
std::vector<double> parse_real_list(std::string_view text);

}  // namespace aqc
