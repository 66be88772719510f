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

#include "aqc/plot.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <vector>

#include "aqc/records_io.hpp"

namespace aqc {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 130.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

struct Rgb {
  double r, g, b;
};

// Viridis sampled at nine evenly spaced stops.
constexpr std::array<Rgb, 9> kViridis{{
    {68, 1, 84},
    {71, 44, 122},
    {59, 81, 139},
    {44, 113, 142},
    {33, 144, 141},
    {39, 173, 129},
    {92, 200, 99},
    {170, 220, 50},
    {253, 231, 37},
}};

std::string colour(double t) {
  if (!std::isfinite(t)) t = 0.0;
  t = std::clamp(t, 0.0, 1.0) * (kViridis.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(t));
  const std::size_t hi = std::min(lo + 1, kViridis.size() - 1);
  const double w = t - static_cast<double>(lo);
  const auto mix = [&](double a, double b) { return static_cast<int>(std::lround(a + w * (b - a))); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(kViridis[lo].r, kViridis[hi].r),
                mix(kViridis[lo].g, kViridis[hi].g), mix(kViridis[lo].b, kViridis[hi].b));
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  double unit(double v) const { return hi > lo ? (v - lo) / (hi - lo) : 0.5; }
};

Range span_of(const std::vector<double>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  Range r{*lo, *hi};
  if (r.hi == r.lo) {
    r.lo -= 0.5;
    r.hi += 0.5;
  }
  return r;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void axes(std::string& svg, const PlotSpec& spec, Range xr, Range yr) {
  svg += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(kPlotW) +
         "\" height=\"" + fixed(kPlotH) + "\" fill=\"none\" stroke=\"#000\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double f = k / 4.0;
    const double px = kLeft + f * kPlotW;
    const double py = kTop + kPlotH - f * kPlotH;
    svg += "<line x1=\"" + fixed(px) + "\" y1=\"" + fixed(kTop + kPlotH) + "\" x2=\"" + fixed(px) +
           "\" y2=\"" + fixed(kTop + kPlotH + 5) + "\" stroke=\"#000\"/>\n";
    svg += "<text x=\"" + fixed(px) + "\" y=\"" + fixed(kTop + kPlotH + 18) +
           "\" text-anchor=\"middle\">" + label(xr.lo + f * (xr.hi - xr.lo)) + "</text>\n";
    svg += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(py) + "\" x2=\"" + fixed(kLeft) +
           "\" y2=\"" + fixed(py) + "\" stroke=\"#000\"/>\n";
    svg += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(py + 4) +
           "\" text-anchor=\"end\">" + label(yr.lo + f * (yr.hi - yr.lo)) + "</text>\n";
  }
  svg += "<text x=\"" + fixed(kLeft + kPlotW / 2) + "\" y=\"" + fixed(kHeight - 15) +
         "\" text-anchor=\"middle\">" + escape(spec.x) + " [" + label(xr.lo) + ", " +
         label(xr.hi) + "]</text>\n";
  svg += "<text transform=\"translate(20," + fixed(kTop + kPlotH / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(spec.y) + " [" + label(yr.lo) + ", " +
         label(yr.hi) + "]</text>\n";
  if (!spec.title.empty()) {
    svg += "<text x=\"" + fixed(kLeft + kPlotW / 2) + "\" y=\"24\" text-anchor=\"middle\">" +
           escape(spec.title) + "</text>\n";
  }
}

void colour_bar(std::string& svg, const PlotSpec& spec, Range cr) {
  constexpr int kSteps = 32;
  const double x = kLeft + kPlotW + 30.0;
  const double step = kPlotH / kSteps;
  for (int k = 0; k < kSteps; ++k) {
    const double t = (k + 0.5) / kSteps;
    svg += "<rect x=\"" + fixed(x) + "\" y=\"" + fixed(kTop + kPlotH - (k + 1) * step) +
           "\" width=\"18\" height=\"" + fixed(step + 0.5) + "\" fill=\"" + colour(t) + "\"/>\n";
  }
  svg += "<text x=\"" + fixed(x + 24) + "\" y=\"" + fixed(kTop + kPlotH) + "\">" + label(cr.lo) + "</text>\n";
  svg += "<text x=\"" + fixed(x + 24) + "\" y=\"" + fixed(kTop + 10) + "\">" + label(cr.hi) + "</text>\n";
  svg += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(kTop - 8) + "\">" + escape(spec.color) + "</text>\n";
}

}  // namespace

bool is_record_field(std::string_view name) {
  static constexpr std::array<std::string_view, 13> kColumns{
      "index", "n", "T", "min_gap", "s_star", "P", "delta_E", "delta", "abs_J_top",
      "ground_dim", "norm_drift", "M", "criterion_bound"};
  if (std::find(kColumns.begin(), kColumns.end(), name) != kColumns.end()) return true;
  if (name.size() < 2 || name[0] != 'J') return false;
  unsigned idx = 0;
  const auto res = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
  return res.ec == std::errc() && res.ptr == name.data() + name.size();
}

double record_field(const InstanceRecord& r, std::string_view name) {
  if (name == "index") return static_cast<double>(r.index);
  if (name == "n") return r.qubits();
  if (name == "T") return r.T;
  if (name == "min_gap") return r.min_gap;
  if (name == "s_star") return r.s_star;
  if (name == "P") return r.success_prob;
  if (name == "delta_E") return r.energy_error;
  if (name == "delta") return r.avg_overlap;
  if (name == "abs_J_top") return r.abs_J_top;
  if (name == "ground_dim") return static_cast<double>(r.ground_subspace_dim);
  if (name == "norm_drift") return r.max_norm_drift;
  if (name == "M") return r.matrix_element_max;
  if (name == "criterion_bound") return r.criterion_bound;
  if (is_record_field(name)) {
    unsigned idx = 0;
    std::from_chars(name.data() + 1, name.data() + name.size(), idx);
    if (idx >= r.couplings.size()) {
      throw std::invalid_argument("coupling " + std::string(name) + " beyond 2^n - 1");
    }
    return r.couplings[idx];
  }
  throw std::invalid_argument("unknown record field '" + std::string(name) + "'");
}

std::string render_svg(std::span<const InstanceRecord> records, const PlotSpec& spec) {
  for (const std::string* f : {&spec.x, &spec.y, &spec.color}) {
    if (!is_record_field(*f)) throw std::invalid_argument("unknown record field '" + *f + "'");
  }
  std::vector<double> xs, ys, cs;
  for (const InstanceRecord& r : records) {
    if (spec.time && r.T != *spec.time) continue;
    const double x = record_field(r, spec.x);
    const double y = record_field(r, spec.y);
    const double c = record_field(r, spec.color);
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(c)) continue;
    xs.push_back(x);
    ys.push_back(y);
    cs.push_back(c);
  }
  if (xs.empty()) throw std::invalid_argument("no plottable records");

  const Range xr = span_of(xs);
  const Range yr = span_of(ys);
  Range cr = span_of(cs);
  if (spec.color_min) cr.lo = *spec.color_min;
  if (spec.color_max) cr.hi = *spec.color_max;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth) + "\" height=\"" +
         fixed(kHeight) + "\" viewBox=\"0 0 " + fixed(kWidth) + " " + fixed(kHeight) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";

  if (spec.kind == PlotKind::kScatter) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double px = kLeft + xr.unit(xs[k]) * kPlotW;
      const double py = kTop + kPlotH - yr.unit(ys[k]) * kPlotH;
      svg += "<circle cx=\"" + fixed(px) + "\" cy=\"" + fixed(py) + "\" r=\"1.6\" fill=\"" +
             colour(cr.unit(cs[k])) + "\"/>\n";
    }
  } else {
    std::map<double, std::size_t> xi, yi;
    for (double v : xs) xi.emplace(v, 0);
    for (double v : ys) yi.emplace(v, 0);
    std::size_t k = 0;
    for (auto& [v, i] : xi) i = k++;
    k = 0;
    for (auto& [v, i] : yi) i = k++;
    const double cw = kPlotW / static_cast<double>(xi.size());
    const double ch = kPlotH / static_cast<double>(yi.size());
    for (std::size_t n = 0; n < xs.size(); ++n) {
      const double px = kLeft + static_cast<double>(xi[xs[n]]) * cw;
      const double py = kTop + kPlotH - static_cast<double>(yi[ys[n]] + 1) * ch;
      svg += "<rect x=\"" + fixed(px) + "\" y=\"" + fixed(py) + "\" width=\"" + fixed(cw + 0.3) +
             "\" height=\"" + fixed(ch + 0.3) + "\" fill=\"" + colour(cr.unit(cs[n])) + "\"/>\n";
    }
  }
  axes(svg, spec, xr, yr);
  colour_bar(svg, spec, cr);
  svg += "</svg>\n";
  return svg;
}

void emit_plot(std::span<const InstanceRecord> records, const PlotSpec& spec, const std::string& path) {
  const std::string svg = render_svg(records, spec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << svg;
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

}  // namespace aqc
