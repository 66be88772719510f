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

#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aqc/metrics.hpp"

namespace aqc {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kRecordHeader =
    "index,n,T,min_gap,s_star,P,delta_E,delta,abs_J_top,ground_dim,norm_drift,M,criterion_bound,"
    "flags";

/// `runs/out.csv` -> `runs/out.couplings.csv`.
std::string couplings_path(const std::string& records_path);

/// Reals with 17 significant digits.
std::string format_real(double v);

/// Streams records to `path` and the coupling vectors, once per index, to the
/// sidecar at couplings_path(path).
class RecordWriter {
 public:
  explicit RecordWriter(const std::string& path);

  void write(const InstanceRecord& record);
  /// Flushes and checks both streams; throws IoError on failure.
  void close();

  std::uint64_t rows() const noexcept { return rows_; }

 private:
  std::string path_;
  std::ofstream records_;
  std::ofstream couplings_;
  std::uint64_t rows_ = 0;
  std::optional<std::uint64_t> last_index_;
  bool couplings_header_ = false;
};

/// Writes header plus one row per record; returns the row count.
std::uint64_t write_records(std::span<const InstanceRecord> records, const std::string& path);

/// Reads a file produced by RecordWriter. Couplings come from the sidecar
/// when it exists; otherwise each record carries n zero couplings.
std::vector<InstanceRecord> read_records(const std::string& path);

}  // namespace aqc
