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

#include "fogda/gamebench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "fogda/metrics.hpp"
#include "fogda/rng.hpp"
#include "fogda/trace_io.hpp"

namespace fogda {

GameInstance generate_game(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw ConfigError("generate_game: m and n must be >= 1");
  SplitMix64 rng(seed);
  Matrix a(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.uniform();
  }
  const double l = lipschitz_bilinear(a, seed);
  return GameInstance{std::move(a), m, n, seed, l};
}

GameInstance make_instance(Matrix a, std::uint64_t seed) {
  const double l = lipschitz_bilinear(a, seed);
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  return GameInstance{std::move(a), m, n, seed, l};
}

VIProblem game_problem(const GameInstance& instance,
                       std::optional<Point> reference) {
  VIProblem problem = make_game_problem(instance.a, instance.lipschitz);
  if (reference) {
    if (reference->size() != instance.m + instance.n) {
      throw DimensionError("game_problem: reference has wrong dimension");
    }
    if (!problem.set.contains(*reference)) {
      throw ConfigError("game_problem: reference solution is not feasible");
    }
    problem.reference_solution = std::move(reference);
  }
  return problem;
}

Point uniform_start(Eigen::Index m, Eigen::Index n) {
  Point z(m + n);
  z.head(m).setConstant(1.0 / static_cast<double>(m));
  z.tail(n).setConstant(1.0 / static_cast<double>(n));
  return z;
}

Point random_feasible_start(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  const FeasibleSet c = FeasibleSet::product(
      {FeasibleSet::simplex(m), FeasibleSet::simplex(n)});
  SplitMix64 rng(seed);
  return c.sample(uniform_start(m, n), rng);
}

PresolveResult presolve_reference(const GameInstance& instance, double tol,
                                  long max_iters) {
  if (!(tol > 0.0)) throw ConfigError("presolve_reference: tol must be > 0");
  const VIProblem problem = game_problem(instance);
  SolverConfig config;
  config.algorithm = Algorithm::kFOGDA_VI;
  config.alpha = kPresolveAlpha;
  config.max_iters = max_iters;
  config.seed = instance.seed;
  config.stop_tolerance = tol;

  double best = std::numeric_limits<double>::infinity();
  RunOptions options;
  options.on_record = [&best](const SolverState&, const MetricRecord& r) {
    best = std::min(best, r.res_natural);
  };
  const IterTrace trace =
      run(config, problem, uniform_start(instance.m, instance.n), options);
  const double achieved = trace.records.back().res_natural;
  if (trace.status != RunStatus::kConverged) {
    std::ostringstream msg;
    msg << "presolve_reference: residual " << std::min(best, achieved)
        << " after " << trace.steps << " iterations, tolerance " << tol;
    throw PresolveError(msg.str(), std::min(best, achieved));
  }
  return PresolveResult{trace.final_iterate, achieved, trace.steps};
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("VI_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

SummaryRow summarize(std::size_t index, const SolverConfig& config,
                     const IterTrace& trace, double seconds) {
  SummaryRow row;
  row.index = index;
  row.algorithm = config.algorithm;
  row.alpha = config.alpha;
  row.gamma = trace.gamma;
  row.status = std::string(to_string(trace.status));
  row.message = trace.diagnostic;
  row.final_k = trace.records.back().k;
  row.initial_res = trace.records.front().res_natural;
  row.final_res = trace.records.back().res_natural;
  for (const MetricRecord& r : trace.records) {
    for (std::size_t c = 0; c < kSummaryCheckpoints.size(); ++c) {
      if (r.k == kSummaryCheckpoints[c]) {
        row.res_at[c] = r.res_natural;
        row.gap_at[c] = r.gap;
      }
    }
  }
  row.wall_seconds = seconds;
  row.operator_evals = trace.operator_evals;
  row.projections = trace.projections;
  return row;
}

}  // namespace

ComparisonResult run_comparison(const RunSpec& spec) {
  const GameInstance& inst = spec.instance;
  const VIProblem problem = game_problem(inst, spec.reference);
  const Point start = spec.start.value_or(uniform_start(inst.m, inst.n));
  const std::size_t count = spec.configs.size();

  ComparisonResult result;
  result.traces.resize(count);
  result.rows.resize(count);

  auto execute = [&](std::size_t i) {
    const SolverConfig& config = spec.configs[i];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      RunOptions options;
      options.cadence = spec.cadence;
      IterTrace trace = run(config, problem, start, options);
      const double seconds = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
      result.rows[i] = summarize(i, config, trace, seconds);
      result.traces[i] = std::move(trace);
    } catch (const std::exception& e) {
      SummaryRow row;
      row.index = i;
      row.algorithm = config.algorithm;
      row.alpha = config.alpha;
      row.gamma = config.gamma.value_or(0.0);
      row.status = "error";
      row.message = e.what();
      result.rows[i] = std::move(row);
    }
  };

  const unsigned cap = spec.threads > 0 ? spec.threads : default_thread_count();
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(cap, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) execute(i);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) execute(i);
    });
  }
  pool.clear();  // joins
  return result;
}

void write_instance(const std::string& path, const GameInstance& instance) {
  std::ostringstream out;
  out << "# vi-game " << instance.m << ' ' << instance.n << ' '
      << instance.seed << ' ' << format_real(instance.lipschitz) << '\n';
  for (Eigen::Index i = 0; i < instance.m; ++i) {
    for (Eigen::Index j = 0; j < instance.n; ++j) {
      if (j > 0) out << ',';
      out << format_real(instance.a(i, j));
    }
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

GameInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open instance file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty instance file");
  std::istringstream header(line);
  std::string hash, tag;
  long m = 0, n = 0;
  std::uint64_t seed = 0;
  double l = 0.0;
  if (!(header >> hash >> tag >> m >> n >> seed >> l) || hash != "#" ||
      tag != "vi-game" || m < 1 || n < 1) {
    throw FormatError("instance header must read '# vi-game m n seed L'");
  }
  Matrix a(m, n);
  for (long i = 0; i < m; ++i) {
    if (!std::getline(in, line)) {
      throw FormatError("instance file has fewer than m rows");
    }
    std::istringstream row(line);
    std::string cell;
    for (long j = 0; j < n; ++j) {
      if (!std::getline(row, cell, ',')) {
        throw FormatError("instance row " + std::to_string(i) +
                          " has fewer than n values");
      }
      try {
        a(i, j) = std::stod(cell);
      } catch (const std::exception&) {
        throw FormatError("bad number '" + cell + "' in instance file");
      }
    }
  }
  return GameInstance{std::move(a), m, n, seed, l};
}

}  // namespace fogda
