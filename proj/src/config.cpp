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

#include "aqc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace aqc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_real(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw std::invalid_argument("expected a finite number, got '" + std::string(text) + "'");
  }
  return v;
}

long long to_integer(std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string> to_names(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (item.empty()) throw std::invalid_argument("empty list item");
    out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

const std::set<std::string, std::less<>> kKnownKeys = {
    "n",          "times",        "samples",          "sampler",    "seed",
    "threads",    "output",       "ode_tol",          "gap_grid",   "refine_tol",
    "overlap_grid", "diagnostics_grid", "deg_tol",    "norm_drift_ceiling",
    "slice_j3",   "slice_points", "slice_half_width", "plot_kind",  "plot_x",
    "plot_y",     "plot_color",   "plot_output",
};

}  // namespace

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const std::string& item : to_names(text)) out.push_back(to_real(item));
  return out;
}

RunConfig parse_config(std::string_view text, ConfigMode mode) {
  std::map<std::string, Entry, std::less<>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing key");
    if (!kKnownKeys.contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key + "' has no value");
    }
    if (entries.contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    entries.emplace(key, Entry{value, line_no});
  }

  RunConfig config;
  auto where = [&](const std::string& key) {
    return "line " + std::to_string(entries.at(key).line) + ": key '" + key + "': ";
  };
  // Runs `apply` on the value when present, re-labelling any failure.
  auto with = [&](const std::string& key, auto&& apply) {
    const auto it = entries.find(key);
    if (it == entries.end()) return false;
    try {
      apply(it->second.value);
    } catch (const std::exception& e) {
      throw ConfigError(where(key) + e.what());
    }
    return true;
  };
  auto positive_real = [](std::string_view v) {
    const double x = to_real(v);
    if (!(x > 0.0)) throw std::invalid_argument("must be positive");
    return x;
  };
  auto int_at_least = [](std::string_view v, long long lo) {
    const long long x = to_integer(v);
    if (x < lo || x > std::numeric_limits<int>::max()) {
      throw std::invalid_argument("must be an integer >= " + std::to_string(lo));
    }
    return static_cast<int>(x);
  };

  EnsembleConfig& ens = config.ensemble;
  Settings& st = ens.settings;
  const bool has_n = with("n", [&](std::string_view v) {
    ens.qubits = int_at_least(v, 1);
    basis_size(ens.qubits);
  });
  const bool has_times = with("times", [&](std::string_view v) {
    ens.times = parse_real_list(v);
    for (double T : ens.times) {
      if (!(T > 0.0)) throw std::invalid_argument("computation times must be positive");
    }
  });
  with("samples", [&](std::string_view v) {
    const long long x = to_integer(v);
    if (x < 1) throw std::invalid_argument("must be at least 1");
    ens.sample_count = static_cast<std::uint64_t>(x);
  });
  with("seed", [&](std::string_view v) {
    const auto t = trim(v);
    std::uint64_t seed = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), seed);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      throw std::invalid_argument("expected an unsigned 64-bit integer");
    }
    ens.sampler.seed = seed;
  });
  const bool has_sampler = with("sampler", [&](std::string_view v) {
    ens.sampler = SamplerSpec::parse(v, ens.sampler.seed);
  });
  with("threads", [&](std::string_view v) { ens.threads = static_cast<unsigned>(int_at_least(v, 0)); });
  with("output", [&](std::string_view v) { config.output = std::string(v); });
  with("ode_tol", [&](std::string_view v) { st.ode_tol = positive_real(v); });
  with("gap_grid", [&](std::string_view v) { st.gap_grid = int_at_least(v, 3); });
  with("refine_tol", [&](std::string_view v) { st.refine_tol = positive_real(v); });
  with("overlap_grid", [&](std::string_view v) { st.overlap_grid = int_at_least(v, 2); });
  with("diagnostics_grid", [&](std::string_view v) { st.diagnostics_grid = int_at_least(v, 2); });
  with("deg_tol", [&](std::string_view v) { st.deg_tol = positive_real(v); });
  with("norm_drift_ceiling", [&](std::string_view v) { st.norm_drift_ceiling = positive_real(v); });
  const bool has_j3 = with("slice_j3", [&](std::string_view v) { config.slice.j3 = to_real(v); });
  with("slice_points", [&](std::string_view v) { config.slice.points_per_axis = int_at_least(v, 2); });
  with("slice_half_width", [&](std::string_view v) { config.slice.half_width = positive_real(v); });

  const bool any_plot = entries.contains("plot_x") || entries.contains("plot_y") ||
                        entries.contains("plot_color") || entries.contains("plot_output") ||
                        entries.contains("plot_kind");
  if (any_plot) {
    PlotRequest plot;
    with("plot_kind", [&](std::string_view v) {
      if (v != "scatter" && v != "heatmap") throw std::invalid_argument("must be scatter or heatmap");
      plot.kind = std::string(v);
    });
    with("plot_x", [&](std::string_view v) { plot.x = std::string(v); });
    with("plot_y", [&](std::string_view v) { plot.y = std::string(v); });
    with("plot_color", [&](std::string_view v) { plot.colors = to_names(v); });
    with("plot_output", [&](std::string_view v) { plot.output = std::string(v); });
    for (const char* key : {"plot_x", "plot_y", "plot_color", "plot_output"}) {
      if (!entries.contains(key)) throw ConfigError(std::string("missing required key '") + key + "'");
    }
    config.plot = std::move(plot);
  }

  if (mode == ConfigMode::kEnsemble) {
    for (const auto& [present, key] : {std::pair{has_n, "n"}, std::pair{has_times, "times"},
                                       std::pair{has_sampler, "sampler"}}) {
      if (!present) throw ConfigError(std::string("missing required key '") + key + "'");
    }
    if (ens.sampler.kind == SamplerSpec::Kind::kGrid &&
        ens.sample_count > lattice_size(ens.sampler, ens.qubits)) {
      throw ConfigError(where("samples") + "exceeds the grid lattice size");
    }
  } else {
    if (!has_j3) throw ConfigError("missing required key 'slice_j3'");
    if (!has_times) throw ConfigError("missing required key 'times'");
    if (has_n && ens.qubits != 2) throw ConfigError(where("n") + "slices are two-qubit only");
    ens.qubits = 2;
  }
  return config;
}

RunConfig load_config(const std::string& path, ConfigMode mode) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), mode);
}

}  // namespace aqc
