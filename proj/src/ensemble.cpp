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

#include "aqc/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "aqc/random.hpp"

namespace aqc {

SamplerSpec SamplerSpec::uniform(double half_width, std::uint64_t seed) {
  SamplerSpec s;
  s.kind = Kind::kUniform;
  s.half_width = half_width;
  s.seed = seed;
  return s;
}

SamplerSpec SamplerSpec::gaussian(double sigma, std::uint64_t seed) {
  SamplerSpec s;
  s.kind = Kind::kGaussian;
  s.sigma = sigma;
  s.seed = seed;
  return s;
}

SamplerSpec SamplerSpec::grid(int points_per_axis, double half_width) {
  SamplerSpec s;
  s.kind = Kind::kGrid;
  s.points_per_axis = points_per_axis;
  s.half_width = half_width;
  return s;
}

void SamplerSpec::validate() const {
  switch (kind) {
    case Kind::kUniform:
      if (!(half_width > 0.0 && std::isfinite(half_width))) throw std::invalid_argument("uniform half-width must be positive");
      break;
    case Kind::kGaussian:
      if (!(sigma > 0.0 && std::isfinite(sigma))) throw std::invalid_argument("gaussian sigma must be positive");
      break;
    case Kind::kGrid:
      if (points_per_axis < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
      if (!(half_width > 0.0 && std::isfinite(half_width))) throw std::invalid_argument("grid half-width must be positive");
      break;
  }
}

namespace {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string SamplerSpec::describe() const {
  switch (kind) {
    case Kind::kUniform:
      return "uniform(" + format_number(half_width) + ")";
    case Kind::kGaussian:
      return "gaussian(" + format_number(sigma) + ")";
    case Kind::kGrid:
      return "grid(" + std::to_string(points_per_axis) + "," + format_number(half_width) + ")";
  }
  return {};
}

SamplerSpec SamplerSpec::parse(std::string_view text, std::uint64_t seed) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')') {
    throw std::invalid_argument("sampler must look like uniform(a), gaussian(sigma) or grid(k,a)");
  }
  const std::string_view name = text.substr(0, open);
  const std::string_view args = text.substr(open + 1, text.size() - open - 2);
  SamplerSpec spec;
  if (name == "uniform") {
    spec = uniform(parse_number(args), seed);
  } else if (name == "gaussian") {
    spec = gaussian(parse_number(args), seed);
  } else if (name == "grid") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("grid sampler needs grid(k,a)");
    const double k = parse_number(args.substr(0, comma));
    if (k != std::floor(k) || k > 1e6) throw std::invalid_argument("grid point count must be an integer");
    spec = grid(static_cast<int>(k), parse_number(args.substr(comma + 1)));
    spec.seed = seed;
  } else {
    throw std::invalid_argument("unknown sampler '" + std::string(name) + "'");
  }
  spec.validate();
  return spec;
}

double lattice_value(int i, int points, double half_width) {
  return half_width * static_cast<double>(2 * i - (points - 1)) / static_cast<double>(points - 1);
}

std::uint64_t lattice_size(const SamplerSpec& spec, int qubits) {
  const std::size_t axes = basis_size(qubits) - 1;
  std::uint64_t total = 1;
  for (std::size_t a = 0; a < axes; ++a) {
    const auto k = static_cast<std::uint64_t>(spec.points_per_axis);
    if (total > std::numeric_limits<std::uint64_t>::max() / k) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= k;
  }
  return total;
}

CouplingVector sample_couplings(const SamplerSpec& spec, int qubits, std::uint64_t index) {
  spec.validate();
  std::vector<double> j(basis_size(qubits), 0.0);
  switch (spec.kind) {
    case SamplerSpec::Kind::kUniform: {
      Xoshiro256pp rng = substream(spec.seed, index);
      for (std::size_t x = 1; x < j.size(); ++x) j[x] = spec.half_width * (2.0 * uniform01(rng) - 1.0);
      break;
    }
    case SamplerSpec::Kind::kGaussian: {
      Xoshiro256pp rng = substream(spec.seed, index);
      PolarGaussian normal;
      for (std::size_t x = 1; x < j.size(); ++x) j[x] = spec.sigma * normal(rng);
      break;
    }
    case SamplerSpec::Kind::kGrid: {
      if (index >= lattice_size(spec, qubits)) throw std::out_of_range("grid index beyond the lattice");
      const auto k = static_cast<std::uint64_t>(spec.points_per_axis);
      std::uint64_t rest = index;
      for (std::size_t x = j.size() - 1; x >= 1; --x) {
        j[x] = lattice_value(static_cast<int>(rest % k), spec.points_per_axis, spec.half_width);
        rest /= k;
      }
      break;
    }
  }
  return CouplingVector(qubits, std::move(j));
}

void EnsembleConfig::validate() const {
  basis_size(qubits);
  if (times.empty()) throw std::invalid_argument("at least one computation time is required");
  for (double T : times) {
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("computation times must be positive");
  }
  if (sample_count < 1) throw std::invalid_argument("sample count must be at least 1");
  sampler.validate();
  if (sampler.kind == SamplerSpec::Kind::kGrid && sample_count > lattice_size(sampler, qubits)) {
    throw std::invalid_argument("sample count exceeds the grid lattice size");
  }
  settings.validate();
}

EnsembleSummary run_instances(std::uint64_t count,
                              const std::function<CouplingVector(std::uint64_t)>& couplings_for,
                              std::span<const double> times, const Settings& settings,
                              unsigned threads, const RecordSink& sink) {
  const auto start = std::chrono::steady_clock::now();
  EnsembleSummary summary;

  auto compute = [&](std::uint64_t index) {
    std::vector<InstanceRecord> out;
    out.reserve(times.size());
    const PreparedInstance prepared = prepare_instance(couplings_for(index), settings);
    for (double T : times) out.push_back(run_instance(prepared, T, settings, index));
    return out;
  };
  auto emit = [&](const std::vector<InstanceRecord>& records) {
    for (const InstanceRecord& r : records) {
      ++summary.records;
      if (r.has(flags::kFailed)) ++summary.failures;
      sink(r);
    }
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  if (threads == 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) emit(compute(i));
  } else {
    // Workers finish out of order; the sequencer releases batches by index.
    std::atomic<std::uint64_t> next{0};
    std::mutex mutex;
    std::map<std::uint64_t, std::vector<InstanceRecord>> pending;
    std::uint64_t next_to_emit = 0;
    std::exception_ptr error;
    std::atomic<bool> abort{false};

    auto worker = [&] {
      while (!abort.load()) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          std::vector<InstanceRecord> batch = compute(i);
          const std::lock_guard lock(mutex);
          pending.emplace(i, std::move(batch));
          for (auto it = pending.find(next_to_emit); it != pending.end();
               it = pending.find(next_to_emit)) {
            emit(it->second);
            pending.erase(it);
            ++next_to_emit;
          }
        } catch (...) {
          const std::lock_guard lock(mutex);
          if (!error) error = std::current_exception();
          abort.store(true);
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const auto n_workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

EnsembleSummary run_ensemble(const EnsembleConfig& config, const RecordSink& sink) {
  config.validate();
  return run_instances(
      config.sample_count,
      [&](std::uint64_t index) { return sample_couplings(config.sampler, config.qubits, index); },
      config.times, config.settings, config.threads, sink);
}

CouplingVector slice_couplings(const SliceSpec& slice, std::uint64_t index) {
  const auto k = static_cast<std::uint64_t>(slice.points_per_axis);
  if (index >= k * k) throw std::out_of_range("slice index beyond the grid");
  const int i1 = static_cast<int>(index / k);
  const int i2 = static_cast<int>(index % k);
  return CouplingVector(2, {0.0, lattice_value(i1, slice.points_per_axis, slice.half_width),
                            lattice_value(i2, slice.points_per_axis, slice.half_width), slice.j3});
}

EnsembleSummary slice_sweep(const SliceSpec& slice, std::span<const double> times,
                            const Settings& settings, unsigned threads, const RecordSink& sink) {
  if (slice.points_per_axis < 2) throw std::invalid_argument("slice needs at least 2 points per axis");
  if (!(slice.half_width > 0.0)) throw std::invalid_argument("slice half-width must be positive");
  if (!std::isfinite(slice.j3)) throw std::invalid_argument("slice J3 must be finite");
  if (times.empty()) throw std::invalid_argument("at least one computation time is required");
  for (double T : times) {
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("computation times must be positive");
  }
  settings.validate();
  const auto k = static_cast<std::uint64_t>(slice.points_per_axis);
  return run_instances(
      k * k, [&](std::uint64_t index) { return slice_couplings(slice, index); }, times, settings,
      threads, sink);
}

std::vector<InstanceRecord> slice_sweep(const SliceSpec& slice, std::span<const double> times,
                                        const Settings& settings, unsigned threads) {
  std::vector<InstanceRecord> records;
  slice_sweep(slice, times, settings, threads, [&](const InstanceRecord& r) { records.push_back(r); });
  return records;
}

}  // namespace aqc
