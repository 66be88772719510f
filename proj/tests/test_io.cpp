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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "aqc/cli.hpp"
#include "aqc/config.hpp"
#include "aqc/plot.hpp"
#include "aqc/records_io.hpp"

using namespace aqc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("aqc_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "aqc-sim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

Settings quick() {
  Settings s;
  s.gap_grid = 101;
  s.overlap_grid = 51;
  s.diagnostics_grid = 51;
  return s;
}

}  // namespace

TEST_CASE("config defaults and required keys") {
  const auto c = parse_config("n = 2\ntimes = 5\nsampler = uniform(3)\n");
  CHECK(c.ensemble.qubits == 2);
  CHECK(c.ensemble.times == std::vector<double>{5.0});
  CHECK(c.ensemble.sample_count == 1);
  CHECK(c.ensemble.sampler.seed == 0);
  CHECK(c.ensemble.threads == 0);
  CHECK(c.ensemble.settings.ode_tol == 1e-10);
  CHECK(c.ensemble.settings.gap_grid == 1001);
  CHECK(c.ensemble.settings.refine_tol == 1e-8);
  CHECK(c.ensemble.settings.overlap_grid == 501);
  CHECK(c.ensemble.settings.diagnostics_grid == 501);
  CHECK(c.ensemble.settings.deg_tol == 1e-9);
  CHECK(c.ensemble.settings.norm_drift_ceiling == 1e-6);
  CHECK(c.slice.points_per_axis == 101);
  CHECK(c.slice.half_width == 3.0);
  CHECK_FALSE(c.plot.has_value());

  CHECK_THROWS_WITH_AS(parse_config(""), "missing required key 'n'", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("n = 2\nsampler = uniform(3)"), "missing required key 'times'", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("n = 2\ntimes = 5"), "missing required key 'sampler'", ConfigError);
}

TEST_CASE("config for a four-time ensemble") {
  const auto c = parse_config(
      "# two qubit ensemble\n"
      "n = 2\n"
      "times = 5, 10, 20, 40\n"
      "sampler = uniform(3)   # half width\n"
      "samples = 10000\n"
      "seed = 2024\n"
      "output = runs/fig2.csv\n");
  CHECK(c.ensemble.times == std::vector<double>{5.0, 10.0, 20.0, 40.0});
  CHECK(c.ensemble.sample_count == 10000);
  CHECK(c.ensemble.sampler.kind == SamplerSpec::Kind::kUniform);
  CHECK(c.ensemble.sampler.half_width == 3.0);
  CHECK(c.ensemble.sampler.seed == 2024);
  CHECK(c.output == "runs/fig2.csv");
}

TEST_CASE("config diagnostics") {
  const std::string base = "n = 2\ntimes = 5\nsampler = uniform(3)\n";
  CHECK_THROWS_WITH_AS(parse_config(base + "ode_tol = -1e-10\n"), "line 4: key 'ode_tol': must be positive", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(base + "deg_tol = 0\n"), "line 4: key 'deg_tol': must be positive", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(base + "colour = red\n"), "line 4: unknown key 'colour'", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(base + "n = 3\n"), "line 4: duplicate key 'n'", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(base + "just words\n"), "line 4: expected 'key = value'", ConfigError);
  CHECK_THROWS_AS(parse_config(base + "gap_grid = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "samples = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 2\ntimes = 5, -1\nsampler = uniform(3)\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 2\ntimes = 5\nsampler = grid(3,1)\nsamples = 28\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 40\ntimes = 5\nsampler = uniform(3)\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "plot_x = min_gap\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "seed = -4\n"), ConfigError);
}

TEST_CASE("slice config and plot keys") {
  const auto c = parse_config(
      "slice_j3 = 0.43\ntimes = 5\nslice_points = 11\n"
      "plot_kind = heatmap\nplot_x = J1\nplot_y = J2\nplot_color = min_gap, P\nplot_output = s.svg\n",
      ConfigMode::kSlice);
  CHECK(c.slice.j3 == 0.43);
  CHECK(c.slice.points_per_axis == 11);
  CHECK(c.ensemble.qubits == 2);
  REQUIRE(c.plot.has_value());
  CHECK(c.plot->kind == "heatmap");
  CHECK(c.plot->colors == std::vector<std::string>{"min_gap", "P"});
  CHECK_THROWS_AS(parse_config("times = 5\n", ConfigMode::kSlice), ConfigError);
  CHECK_THROWS_AS(parse_config("slice_j3 = 0.4\ntimes = 5\nn = 3\n", ConfigMode::kSlice), ConfigError);
  CHECK_THROWS_AS(parse_config("slice_j3 = 0.4\ntimes = 5\nplot_kind = pie\nplot_x = J1\nplot_y = J2\n"
                               "plot_color = P\nplot_output = a.svg\n",
                               ConfigMode::kSlice),
                  ConfigError);
}

TEST_CASE("record files") {
  TempDir dir;

  SUBCASE("header only") {
    const std::string path = dir.file("empty.csv");
    CHECK(write_records({}, path) == 0);
    CHECK(slurp(path) == std::string(kRecordHeader) + "\n");
    CHECK(read_records(path).empty());
  }

  SUBCASE("zero couplings row") {
    const auto r = run_instance(CouplingVector::zero(2), 5.0, Settings{});
    const std::string path = dir.file("zero.csv");
    write_records(std::span(&r, 1), path);
    std::istringstream rows(slurp(path));
    std::string header, row;
    std::getline(rows, header);
    std::getline(rows, row);
    CHECK(row.rfind("0,2,5,0,1,", 0) == 0);
    CHECK(row.find(",4,") != std::string::npos);
    CHECK(row.substr(row.rfind(',') + 1) == "degenerate|endpoint");
    CHECK(r.success_prob > 1.0 - 1e-8);
    CHECK(r.energy_error < 1e-8);
    CHECK(std::abs(r.avg_overlap - 1.0) < 1e-8);
    CHECK(slurp(couplings_path(path)) == "index,n,J0,J1,J2,J3\n0,2,0,0,0,0\n");
  }

  SUBCASE("round trip is bit exact") {
    std::vector<InstanceRecord> records;
    for (std::uint64_t i = 0; i < 3; ++i) {
      const auto cv = sample_couplings(SamplerSpec::uniform(3.0, 9), 2, i);
      for (double T : {5.0, 10.0}) {
        auto r = run_instance(cv, T, quick());
        r.index = i;
        records.push_back(r);
      }
    }
    records[1].flags |= flags::kNormDrift;
    const std::string path = dir.file("trip.csv");
    CHECK(write_records(records, path) == 6);
    const auto back = read_records(path);
    REQUIRE(back.size() == records.size());
    for (std::size_t k = 0; k < back.size(); ++k) {
      CHECK(back[k].index == records[k].index);
      CHECK(back[k].couplings == records[k].couplings);
      CHECK(back[k].T == records[k].T);
      CHECK(back[k].min_gap == records[k].min_gap);
      CHECK(back[k].s_star == records[k].s_star);
      CHECK(back[k].success_prob == records[k].success_prob);
      CHECK(back[k].energy_error == records[k].energy_error);
      CHECK(back[k].avg_overlap == records[k].avg_overlap);
      CHECK(back[k].abs_J_top == records[k].abs_J_top);
      CHECK(back[k].ground_subspace_dim == records[k].ground_subspace_dim);
      CHECK(back[k].max_norm_drift == records[k].max_norm_drift);
      CHECK(back[k].matrix_element_max == records[k].matrix_element_max);
      CHECK(back[k].criterion_bound == records[k].criterion_bound);
      CHECK(back[k].flags == records[k].flags);
    }
    write_records(back, dir.file("again.csv"));
    CHECK(slurp(dir.file("again.csv")) == slurp(path));
    CHECK(slurp(dir.file("again.couplings.csv")) == slurp(couplings_path(path)));
  }

  SUBCASE("malformed files") {
    spill(dir.file("bad.csv"), "index,n\n");
    CHECK_THROWS_AS(read_records(dir.file("bad.csv")), IoError);
    spill(dir.file("short.csv"), std::string(kRecordHeader) + "\n0,2,5\n");
    CHECK_THROWS_AS(read_records(dir.file("short.csv")), IoError);
    CHECK_THROWS_AS(read_records(dir.file("missing.csv")), IoError);
    CHECK_THROWS_AS(write_records({}, dir.file("no/such/dir/x.csv")), IoError);
  }

  CHECK(couplings_path("runs/out.csv") == "runs/out.couplings.csv");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(5.0) == "5");
}

TEST_CASE("svg rendering") {
  const auto records = slice_sweep(SliceSpec{0.43, 5, 3.0}, std::vector<double>{5.0}, quick(), 1);
  PlotSpec spec;
  spec.kind = PlotKind::kHeatmap;
  spec.x = "J1";
  spec.y = "J2";
  spec.color = "min_gap";
  const std::string svg = render_svg(records, spec);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("J1 [-3, 3]") != std::string::npos);
  CHECK(svg.find("J2 [-3, 3]") != std::string::npos);
  CHECK(svg == render_svg(records, spec));
  std::size_t cells = 0;
  for (auto at = svg.find("width=\"102.30\""); at != std::string::npos; at = svg.find("width=\"102.30\"", at + 1)) ++cells;
  CHECK(cells == 25);

  spec.kind = PlotKind::kScatter;
  spec.x = "min_gap";
  spec.y = "P";
  spec.color = "abs_J_top";
  const std::string scatter = render_svg(records, spec);
  std::size_t dots = 0;
  for (auto at = scatter.find("<circle"); at != std::string::npos; at = scatter.find("<circle", at + 1)) ++dots;
  CHECK(dots == 25);

  spec.time = 10.0;
  CHECK_THROWS_AS(render_svg(records, spec), std::invalid_argument);
  spec.time.reset();
  spec.color = "colour";
  CHECK_THROWS_WITH_AS(render_svg(records, spec), "unknown record field 'colour'", std::invalid_argument);
  spec.color = "J7";
  CHECK_THROWS_AS(render_svg(records, spec), std::invalid_argument);
  CHECK(is_record_field("J12"));
  CHECK_FALSE(is_record_field("Jx"));
  CHECK(record_field(records[0], "J3") == 0.43);
}

TEST_CASE("command line: single") {
  const auto r = cli({"single", "--n", "1", "--J", "1", "--T", "5"});
  CHECK(r.code == 0);
  CHECK(std::abs(std::stod(value_of(r.out, "min_gap")) - std::sqrt(2.0)) < 1e-6);
  CHECK(std::abs(std::stod(value_of(r.out, "s_star")) - 0.5) < 1e-6);
  CHECK(value_of(r.out, "J1") == "1");
  CHECK(value_of(r.out, "ground_dim") == "1");

  const auto two = cli({"single", "--n", "1", "--J", "1", "--T", "5", "40", "--gap-grid", "201"});
  CHECK(two.code == 0);
  CHECK(two.out.find("\n\nn=1\n") != std::string::npos);

  const auto wrong = cli({"single", "--n", "2", "--J", "1", "2", "--T", "5"});
  CHECK(wrong.code == 2);
  CHECK(wrong.err.find("2 qubits take 3 couplings, got 2") != std::string::npos);

  CHECK(cli({"single", "--n", "1", "--J", "1", "--T", "-5"}).code == 2);
  CHECK(cli({"single", "--n", "1", "--J", "1"}).code == 2);
  CHECK(cli({"single", "--n", "1", "--J", "1", "--T", "5", "--ode-tol", "-1"}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({}).code == 2);
  const auto help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("single") != std::string::npos);
}

TEST_CASE("command line: ensemble, slice and plot") {
  TempDir dir;
  const std::string csv = dir.file("ens.csv");
  spill(dir.file("ens.cfg"),
        "n = 2\ntimes = 5, 10\nsampler = uniform(3)\nsamples = 4\nseed = 3\ngap_grid = 101\n"
        "overlap_grid = 51\ndiagnostics_grid = 51\n"
        "plot_x = min_gap\nplot_y = P\nplot_color = abs_J_top, delta\nplot_output = " +
            dir.file("ens.svg") + "\n");

  auto r = cli({"ensemble", "--config", dir.file("ens.cfg"), "--out", csv, "--threads", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("wrote 8 records to " + csv + " (0 failed") != std::string::npos);
  CHECK(read_records(csv).size() == 8);
  CHECK(fs::exists(dir.file("ens_abs_J_top.svg")));
  CHECK(fs::exists(dir.file("ens_delta.svg")));
  const std::string first = slurp(csv);
  const std::string first_svg = slurp(dir.file("ens_delta.svg"));
  REQUIRE(cli({"ensemble", "--config", dir.file("ens.cfg"), "--out", csv, "--threads", "1"}).code == 0);
  CHECK(slurp(csv) == first);
  CHECK(slurp(dir.file("ens_delta.svg")) == first_svg);

  CHECK(cli({"ensemble", "--config", dir.file("ens.cfg")}).code == 2);
  CHECK(cli({"ensemble", "--config", dir.file("nothing.cfg"), "--out", csv}).code == 1);
  spill(dir.file("bad.cfg"), "n = 2\ntimes = 5\nsampler = uniform(3)\node_tol = -1\n");
  r = cli({"ensemble", "--config", dir.file("bad.cfg"), "--out", csv});
  CHECK(r.code == 1);
  CHECK(r.err.find("ode_tol") != std::string::npos);

  const std::string slice_csv = dir.file("slice.csv");
  r = cli({"slice", "--J3", "0.43", "--points", "5", "--T", "5", "--out", slice_csv, "--gap-grid", "101",
           "--overlap-grid", "51", "--diagnostics-grid", "51"});
  CHECK(r.code == 0);
  const auto slice = read_records(slice_csv);
  REQUIRE(slice.size() == 25);
  CHECK(slice[0].couplings == CouplingVector(2, {0.0, -3.0, -3.0, 0.43}));
  CHECK(cli({"slice", "--points", "5", "--T", "5", "--out", slice_csv}).code == 2);

  const std::string svg = dir.file("slice.svg");
  r = cli({"plot", "--csv", slice_csv, "--x", "J1", "--y", "J2", "--color", "s_star", "--kind", "heatmap", "--out",
           svg, "--title", "slice"});
  CHECK(r.code == 0);
  CHECK(slurp(svg).find(">slice</text>") != std::string::npos);
  CHECK(cli({"plot", "--csv", slice_csv, "--x", "J1", "--y", "J2", "--color", "nope", "--out", svg}).code == 1);
  CHECK(cli({"plot", "--csv", slice_csv, "--x", "J1", "--y", "J2", "--color", "P", "--kind", "pie", "--out", svg})
            .code == 2);
}
