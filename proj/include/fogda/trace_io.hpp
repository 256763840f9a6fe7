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

// CSV trace and summary files.
//
// A trace file starts with "# key=value" metadata lines, followed by the
// column header
//   k,res_natural,gap,tangent_ub,dist_to_ref,step_norm,wall_ns[,lyap_*...]
// and one row per record. Missing optional values are empty fields. Reals
// are written with 17 significant digits.

#ifndef FOGDA_TRACE_IO_HPP_
#define FOGDA_TRACE_IO_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fogda/gamebench.hpp"
#include "fogda/solvers.hpp"

namespace fogda {

// Thrown for unreadable or malformed files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_real(double value);

// Writes to a temporary file next to `path` and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

inline constexpr const char* kTraceColumns[] = {
    "k", "res_natural", "gap", "tangent_ub", "dist_to_ref", "step_norm",
    "wall_ns"};

struct TraceFile {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::string> meta(const std::string& key) const;
  // Index of a column, or nullopt.
  std::optional<std::size_t> column(const std::string& name) const;
};

// Metadata describing how a trace was produced, enough to rerun it.
struct TraceHeader {
  IterTrace const* trace;
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  std::string instance;  // "generated" or the instance path
  std::string start = "uniform";  // "uniform" or "random:<seed>"
  std::string cadence = "log";    // "log" or "every"
  std::string reference = "none";  // "none" or "presolve"
};

// Extra per-k columns, e.g. Lyapunov diagnostics. Each column maps k to a
// value; rows without an entry get an empty field.
struct ExtraColumn {
  std::string name;
  std::map<long, double> values;
};

TraceFile make_trace_file(const TraceHeader& header,
                          const std::vector<ExtraColumn>& extra = {});

std::string render_csv(const TraceFile& file);
void write_trace(const std::string& path, const TraceFile& file);
TraceFile read_trace(const std::string& path);

std::string render_summary(const std::vector<SummaryRow>& rows);

}  // namespace fogda

#endif  // FOGDA_TRACE_IO_HPP_
