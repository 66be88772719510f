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


#include "aqc/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aqc/config.hpp"
#include "aqc/ensemble.hpp"
#include "aqc/metrics.hpp"
#include "aqc/plot.hpp"
#include "aqc/records_io.hpp"

namespace aqc {
namespace {

// Thrown for flag combinations CLI11 cannot check on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SettingsFlags {
  std::optional<double> ode_tol;
  std::optional<int> gap_grid;
  std::optional<double> refine_tol;
  std::optional<int> overlap_grid;
  std::optional<int> diagnostics_grid;
  std::optional<double> deg_tol;
  std::optional<double> norm_drift_ceiling;

  void attach(CLI::App& app) {
    app.add_option("--ode-tol", ode_tol, "ODE relative/absolute tolerance (1e-10)")->check(CLI::PositiveNumber);
    app.add_option("--gap-grid", gap_grid, "coarse gap grid points (1001)")->check(CLI::Range(3, 1 << 24));
    app.add_option("--refine-tol", refine_tol, "golden-section tolerance (1e-8)")->check(CLI::PositiveNumber);
    app.add_option("--overlap-grid", overlap_grid, "overlap grid points (501)")->check(CLI::Range(2, 1 << 24));
    app.add_option("--diagnostics-grid", diagnostics_grid, "matrix element grid points (501)")
        ->check(CLI::Range(2, 1 << 24));
    app.add_option("--deg-tol", deg_tol, "degeneracy tolerance (1e-9)")->check(CLI::PositiveNumber);
    app.add_option("--norm-drift-ceiling", norm_drift_ceiling, "norm drift flag threshold (1e-6)")
        ->check(CLI::PositiveNumber);
  }

  void apply(Settings& s) const {
    if (ode_tol) s.ode_tol = *ode_tol;
    if (gap_grid) s.gap_grid = *gap_grid;
    if (refine_tol) s.refine_tol = *refine_tol;
    if (overlap_grid) s.overlap_grid = *overlap_grid;
    if (diagnostics_grid) s.diagnostics_grid = *diagnostics_grid;
    if (deg_tol) s.deg_tol = *deg_tol;
    if (norm_drift_ceiling) s.norm_drift_ceiling = *norm_drift_ceiling;
  }
};

void print_record(const InstanceRecord& r, std::ostream& out) {
  out << "n=" << r.qubits() << '\n';
  for (std::size_t x = 1; x < r.couplings.size(); ++x) out << 'J' << x << '=' << format_real(r.couplings[x]) << '\n';
  out << "T=" << format_real(r.T) << '\n'
      << "min_gap=" << format_real(r.min_gap) << '\n'
      << "s_star=" << format_real(r.s_star) << '\n'
      << "P=" << format_real(r.success_prob) << '\n'
      << "delta_E=" << format_real(r.energy_error) << '\n'
      << "delta=" << format_real(r.avg_overlap) << '\n'
      << "abs_J_top=" << format_real(r.abs_J_top) << '\n'
      << "ground_dim=" << r.ground_subspace_dim << '\n'
      << "norm_drift=" << format_real(r.max_norm_drift) << '\n'
      << "M=" << format_real(r.matrix_element_max) << '\n'
      << "criterion_bound=" << format_real(r.criterion_bound) << '\n'
      << "flags=" << format_flags(r.flags) << '\n';
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  const std::string name = p.stem().string() + "_" + suffix + p.extension().string();
  return (p.parent_path() / name).string();
}

void emit_requested(const std::vector<InstanceRecord>& records, const PlotRequest& request, std::ostream& out) {
  PlotSpec spec;
  spec.kind = request.kind == "heatmap" ? PlotKind::kHeatmap : PlotKind::kScatter;
  spec.x = request.x;
  spec.y = request.y;
  for (const std::string& colour : request.colors) {
    spec.color = colour;
    spec.title = colour;
    const std::string path = request.colors.size() == 1 ? request.output : with_suffix(request.output, colour);
    emit_plot(records, spec, path);
    out << "wrote " << path << '\n';
  }
}

void report(const EnsembleSummary& summary, const std::string& path, std::ostream& out) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", summary.wall_seconds);
  out << "wrote " << summary.records << " records to " << path << " (" << summary.failures
      << " failed, " << buf << " s)\n";
}

// Streams records to CSV and keeps them when a plot was requested.
struct Collector {
  RecordWriter writer;
  bool keep;
  std::vector<InstanceRecord> records;

  Collector(const std::string& path, bool keep_records) : writer(path), keep(keep_records) {}

  void operator()(const InstanceRecord& r) {
    writer.write(r);
    if (keep) records.push_back(r);
  }
};

int run_single(int qubits, const std::vector<double>& couplings, const std::vector<double>& times,
               const SettingsFlags& flags, std::ostream& out) {
  CouplingVector cv = CouplingVector::zero(1);
  try {
    basis_size(qubits);
    cv = CouplingVector::from_nontrivial(qubits, couplings);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--J: ") + e.what());
  }
  Settings settings;
  flags.apply(settings);
  settings.validate();
  const PreparedInstance prepared = prepare_instance(cv, settings);
  bool first = true;
  for (double T : times) {
    if (!first) out << '\n';
    first = false;
    print_record(run_instance(prepared, T, settings), out);
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adiabatic quantum computation simulator", "aqc-sim"};
  app.require_subcommand(1);

  // single
  CLI::App* single = app.add_subcommand("single", "run one instance and print its record");
  int single_n = 1;
  std::vector<double> single_j;
  std::vector<double> single_t;
  SettingsFlags single_flags;
  single->add_option("--n", single_n, "qubit count")->required()->check(CLI::Range(1, kMaxQubits));
  single->add_option("--J", single_j, "couplings J1 .. J(2^n - 1)")->required()->expected(1, -1);
  single->add_option("--T", single_t, "computation times")->required()->expected(1, -1)->check(CLI::PositiveNumber);
  single_flags.attach(*single);

  // ensemble
  CLI::App* ensemble = app.add_subcommand("ensemble", "run a sampled ensemble from a config file");
  std::string ens_config;
  std::string ens_out;
  std::optional<unsigned> ens_threads;
  ensemble->add_option("--config", ens_config, "config file")->required();
  ensemble->add_option("--out", ens_out, "CSV output (overrides the config)");
  ensemble->add_option("--threads", ens_threads, "worker threads, 0 for all cores");

  // slice
  CLI::App* slice = app.add_subcommand("slice", "sweep the (J1, J2) plane at fixed J3");
  std::string slice_config;
  std::optional<double> slice_j3;
  std::optional<int> slice_points;
  std::optional<double> slice_half_width;
  std::vector<double> slice_t;
  std::string slice_out;
  std::optional<unsigned> slice_threads;
  SettingsFlags slice_flags;
  slice->add_option("--config", slice_config, "config file");
  slice->add_option("--J3", slice_j3, "fixed J3");
  slice->add_option("--points", slice_points, "lattice points per axis")->check(CLI::Range(2, 1 << 16));
  slice->add_option("--half-width", slice_half_width, "J1, J2 range [-a, a]")->check(CLI::PositiveNumber);
  slice->add_option("--T", slice_t, "computation times")->expected(1, -1)->check(CLI::PositiveNumber);
  slice->add_option("--out", slice_out, "CSV output (overrides the config)");
  slice->add_option("--threads", slice_threads, "worker threads, 0 for all cores");
  slice_flags.attach(*slice);

  // plot
  CLI::App* plot = app.add_subcommand("plot", "render an SVG from a records CSV");
  std::string plot_csv;
  PlotSpec plot_spec;
  std::string plot_kind = "scatter";
  std::string plot_out;
  plot->add_option("--csv", plot_csv, "records CSV")->required();
  plot->add_option("--x", plot_spec.x, "x field")->required();
  plot->add_option("--y", plot_spec.y, "y field")->required();
  plot->add_option("--color", plot_spec.color, "colour field")->required();
  plot->add_option("--out", plot_out, "SVG output")->required();
  plot->add_option("--kind", plot_kind, "scatter or heatmap")->check(CLI::IsMember({"scatter", "heatmap"}));
  plot->add_option("--T", plot_spec.time, "keep only this computation time");
  plot->add_option("--cmin", plot_spec.color_min, "colour scale minimum");
  plot->add_option("--cmax", plot_spec.color_max, "colour scale maximum");
  plot->add_option("--title", plot_spec.title, "plot title");

  auto usage = [&](const std::string& message) {
    err << "error: " << message << "\n\n";
    const auto chosen = app.get_subcommands();
    err << (chosen.empty() ? app.help() : chosen.front()->help());
    return 2;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  try {
    if (single->parsed()) return run_single(single_n, single_j, single_t, single_flags, out);

    if (ensemble->parsed()) {
      RunConfig config = load_config(ens_config, ConfigMode::kEnsemble);
      if (!ens_out.empty()) config.output = ens_out;
      if (ens_threads) config.ensemble.threads = *ens_threads;
      if (config.output.empty()) throw UsageError("no output path: set 'output' in the config or pass --out");
      Collector sink(config.output, config.plot.has_value());
      const EnsembleSummary summary = run_ensemble(config.ensemble, std::ref(sink));
      sink.writer.close();
      report(summary, config.output, out);
      if (config.plot) emit_requested(sink.records, *config.plot, out);
      return 0;
    }

    if (slice->parsed()) {
      RunConfig config;
      if (!slice_config.empty()) {
        config = load_config(slice_config, ConfigMode::kSlice);
      } else {
        if (!slice_j3) throw UsageError("--J3 is required without --config");
        if (slice_t.empty()) throw UsageError("--T is required without --config");
      }
      if (slice_j3) config.slice.j3 = *slice_j3;
      if (slice_points) config.slice.points_per_axis = *slice_points;
      if (slice_half_width) config.slice.half_width = *slice_half_width;
      if (!slice_t.empty()) config.ensemble.times = slice_t;
      if (!slice_out.empty()) config.output = slice_out;
      if (slice_threads) config.ensemble.threads = *slice_threads;
      slice_flags.apply(config.ensemble.settings);
      if (config.output.empty()) throw UsageError("no output path: set 'output' in the config or pass --out");
      Collector sink(config.output, config.plot.has_value());
      const EnsembleSummary summary = slice_sweep(config.slice, config.ensemble.times, config.ensemble.settings,
                                                  config.ensemble.threads, std::ref(sink));
      sink.writer.close();
      report(summary, config.output, out);
      if (config.plot) emit_requested(sink.records, *config.plot, out);
      return 0;
    }

    if (plot->parsed()) {
      plot_spec.kind = plot_kind == "heatmap" ? PlotKind::kHeatmap : PlotKind::kScatter;
      const std::vector<InstanceRecord> records = read_records(plot_csv);
      emit_plot(records, plot_spec, plot_out);
      out << "wrote " << plot_out << '\n';
      return 0;
    }
  } catch (const UsageError& e) {
    return usage(e.what());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return usage("no subcommand");
}

}  // namespace aqc
