// Copyright 2026 The fogda-vi Authors
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

#include "fogda/trace_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fogda {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = fs::path(path + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw FormatError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw FormatError("cannot rename into '" + path + "'");
  }
}

std::optional<std::string> TraceFile::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::optional<std::size_t> TraceFile::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  return std::nullopt;
}

namespace {

std::string opt_real(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TraceFile make_trace_file(const TraceHeader& header,
                          const std::vector<ExtraColumn>& extra) {
  if (header.trace == nullptr) throw ConfigError("make_trace_file: no trace");
  const IterTrace& t = *header.trace;
  TraceFile file;
  auto put = [&file](std::string key, std::string value) {
    file.metadata.emplace_back(std::move(key), std::move(value));
  };
  put("algorithm", std::string(algorithm_name(t.algorithm)));
  put("gamma", format_real(t.gamma));
  put("alpha", format_real(t.alpha));
  put("stride", std::to_string(t.stride));
  put("seed", std::to_string(t.seed));
  put("m", std::to_string(header.m));
  put("n", std::to_string(header.n));
  put("iters", std::to_string(t.max_iters));
  put("L", format_real(t.lipschitz));
  put("delta0", t.delta0 ? format_real(*t.delta0) : std::string());
  put("stop_tol", format_real(t.stop_tolerance));
  put("cadence", header.cadence);
  put("start", header.start);
  put("instance", header.instance);
  put("reference", header.reference);
  put("status", std::string(to_string(t.status)));

  for (const char* c : kTraceColumns) file.columns.emplace_back(c);
  for (const ExtraColumn& e : extra) file.columns.push_back(e.name);

  for (const MetricRecord& r : t.records) {
    std::vector<std::string> row{std::to_string(r.k),
                                 format_real(r.res_natural),
                                 opt_real(r.gap),
                                 opt_real(r.tangent_ub),
                                 opt_real(r.dist_to_ref),
                                 format_real(r.step_norm),
                                 std::to_string(r.wall_ns)};
    for (const ExtraColumn& e : extra) {
      const auto it = e.values.find(r.k);
      row.push_back(it == e.values.end() ? std::string()
                                         : format_real(it->second));
    }
    file.rows.push_back(std::move(row));
  }
  return file;
}

std::string render_csv(const TraceFile& file) {
  std::ostringstream out;
  for (const auto& [k, v] : file.metadata) out << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < file.columns.size(); ++i) {
    out << (i ? "," : "") << file.columns[i];
  }
  out << '\n';
  for (const auto& row : file.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

void write_trace(const std::string& path, const TraceFile& file) {
  write_file_atomic(path, render_csv(file));
}

TraceFile read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open trace file '" + path + "'");
  TraceFile file;
  std::string line;
  bool have_header = false;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header && line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw FormatError("metadata line " + std::to_string(lineno) +
                          " lacks '='");
      }
      file.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (!have_header) {
      file.columns = split_csv(line);
      if (file.columns.empty() || file.columns.front() != "k") {
        throw FormatError("trace header must start with column 'k'");
      }
      have_header = true;
      continue;
    }
    auto row = split_csv(line);
    if (row.size() != file.columns.size()) {
      throw FormatError("line " + std::to_string(lineno) + " has " +
                        std::to_string(row.size()) + " fields, expected " +
                        std::to_string(file.columns.size()));
    }
    file.rows.push_back(std::move(row));
  }
  if (!have_header) throw FormatError("trace file has no column header");
  return file;
}

std::string render_summary(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "index,algorithm,alpha,gamma,status,final_k,initial_res,final_res";
  for (long c : kSummaryCheckpoints) out << ",res_at_" << c;
  for (long c : kSummaryCheckpoints) out << ",gap_at_" << c;
  out << ",wall_seconds,operator_evals,projections,message\n";
  for (const SummaryRow& r : rows) {
    out << r.index << ',' << algorithm_name(r.algorithm) << ','
        << format_real(r.alpha) << ',' << format_real(r.gamma) << ','
        << r.status << ',' << r.final_k << ',' << format_real(r.initial_res)
        << ',' << format_real(r.final_res);
    for (const auto& v : r.res_at) out << ',' << opt_real(v);
    for (const auto& v : r.gap_at) out << ',' << opt_real(v);
    std::string msg = r.message;
    for (char& ch : msg) {
      if (ch == ',' || ch == '\n') ch = ' ';
    }
    out << ',' << format_real(r.wall_seconds) << ',' << r.operator_evals << ','
        << r.projections << ',' << msg << '\n';
  }
  return out.str();
}

}  // namespace fogda
