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

#include "aqc/records_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

namespace aqc {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

double read_real(const std::string& text, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw IoError(where + ": bad number '" + text + "'");
  }
  return v;
}

std::uint64_t read_unsigned(const std::string& text, const std::string& where) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || text.front() == '-') {
    throw IoError(where + ": bad integer '" + text + "'");
  }
  return v;
}

}  // namespace

std::string couplings_path(const std::string& records_path) {
  std::filesystem::path p(records_path);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + ".couplings.csv")).string();
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RecordWriter::RecordWriter(const std::string& path)
    : path_(path), records_(path, std::ios::binary), couplings_(couplings_path(path), std::ios::binary) {
  if (!records_) throw IoError("cannot open '" + path + "' for writing");
  if (!couplings_) throw IoError("cannot open '" + couplings_path(path) + "' for writing");
  records_ << kRecordHeader << '\n';
}

void RecordWriter::write(const InstanceRecord& r) {
  records_ << r.index << ',' << r.qubits() << ',' << format_real(r.T) << ','
           << format_real(r.min_gap) << ',' << format_real(r.s_star) << ','
           << format_real(r.success_prob) << ',' << format_real(r.energy_error) << ','
           << format_real(r.avg_overlap) << ',' << format_real(r.abs_J_top) << ','
           << r.ground_subspace_dim << ',' << format_real(r.max_norm_drift) << ','
           << format_real(r.matrix_element_max) << ',' << format_real(r.criterion_bound) << ','
           << format_flags(r.flags) << '\n';
  ++rows_;

  if (last_index_ == r.index) return;
  last_index_ = r.index;
  if (!couplings_header_) {
    couplings_ << "index,n";
    for (std::size_t x = 0; x < r.couplings.size(); ++x) couplings_ << ",J" << x;
    couplings_ << '\n';
    couplings_header_ = true;
  }
  couplings_ << r.index << ',' << r.qubits();
  for (double j : r.couplings.values()) couplings_ << ',' << format_real(j);
  couplings_ << '\n';
}

void RecordWriter::close() {
  records_.flush();
  couplings_.flush();
  if (!records_ || !couplings_) throw IoError("write failure on '" + path_ + "'");
  records_.close();
  couplings_.close();
}

std::uint64_t write_records(std::span<const InstanceRecord> records, const std::string& path) {
  RecordWriter writer(path);
  for (const InstanceRecord& r : records) writer.write(r);
  writer.close();
  return writer.rows();
}

std::vector<InstanceRecord> read_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) throw IoError(path + ": unexpected header");

  std::map<std::uint64_t, CouplingVector> couplings;
  if (std::ifstream side(couplings_path(path), std::ios::binary); side) {
    std::string row;
    std::getline(side, row);  // header
    int line_no = 1;
    while (std::getline(side, row)) {
      ++line_no;
      if (row.empty()) continue;
      const auto f = split_csv(row);
      const std::string where = couplings_path(path) + ":" + std::to_string(line_no);
      if (f.size() < 3) throw IoError(where + ": too few fields");
      const std::uint64_t index = read_unsigned(f[0], where);
      const auto n = static_cast<int>(read_unsigned(f[1], where));
      std::vector<double> j;
      for (std::size_t k = 2; k < f.size(); ++k) j.push_back(read_real(f[k], where));
      try {
        couplings.insert_or_assign(index, CouplingVector(n, std::move(j)));
      } catch (const std::invalid_argument& e) {
        throw IoError(where + ": " + e.what());
      }
    }
  }

  std::vector<InstanceRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    const std::string where = path + ":" + std::to_string(line_no);
    if (f.size() != 14) throw IoError(where + ": expected 14 fields");
    InstanceRecord r;
    r.index = read_unsigned(f[0], where);
    const auto n = static_cast<int>(read_unsigned(f[1], where));
    if (const auto it = couplings.find(r.index); it != couplings.end()) {
      r.couplings = it->second;
    } else {
      try {
        r.couplings = CouplingVector::zero(n);
      } catch (const std::invalid_argument& e) {
        throw IoError(where + ": " + e.what());
      }
    }
    if (r.qubits() != n) throw IoError(where + ": qubit count disagrees with couplings sidecar");
    r.T = read_real(f[2], where);
    r.min_gap = read_real(f[3], where);
    r.s_star = read_real(f[4], where);
    r.success_prob = read_real(f[5], where);
    r.energy_error = read_real(f[6], where);
    r.avg_overlap = read_real(f[7], where);
    r.abs_J_top = read_real(f[8], where);
    r.ground_subspace_dim = read_unsigned(f[9], where);
    r.max_norm_drift = read_real(f[10], where);
    r.matrix_element_max = read_real(f[11], where);
    r.criterion_bound = read_real(f[12], where);
    try {
      r.flags = parse_flags(f[13]);
    } catch (const std::invalid_argument& e) {
      throw IoError(where + ": " + e.what());
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace aqc
