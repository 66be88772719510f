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
#include <span>
#include <string>
#include <string_view>

#include "aqc/metrics.hpp"

namespace aqc {

enum class PlotKind { kScatter, kHeatmap };

struct PlotSpec {
  PlotKind kind = PlotKind::kScatter;
  std::string x;
  std::string y;
  std::string color;
  /// Colour scale bounds; taken from the data when unset.
  std::optional<double> color_min;
  std::optional<double> color_max;
  /// Keep only records with this computation time.
  std::optional<double> time;
  std::string title;
};

/// Numeric value of a CSV column (`min_gap`, `P`, ...) or of a coupling
/// (`J1`, `J2`, ...). Throws std::invalid_argument for unknown names.
double record_field(const InstanceRecord& record, std::string_view name);

bool is_record_field(std::string_view name);

/// Standalone SVG document. Scatter plots draw one dot per record; heatmaps
/// draw one cell per distinct (x, y) pair, as produced by a slice sweep.
/// Throws std::invalid_argument on unknown fields or when nothing is left to
/// plot.
std::string render_svg(std::span<const InstanceRecord> records, const PlotSpec& spec);

/// render_svg() written to `path`; throws IoError on write failure.
void emit_plot(std::span<const InstanceRecord> records, const PlotSpec& spec, const std::string& path);

}  // namespace aqc
