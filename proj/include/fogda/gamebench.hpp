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

// Bilinear matrix-game benchmark: instance generation, reference solutions
// and solver comparisons.

#ifndef FOGDA_GAMEBENCH_HPP_
#define FOGDA_GAMEBENCH_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fogda/core.hpp"
#include "fogda/problem.hpp"
#include "fogda/solvers.hpp"

namespace fogda {

struct GameInstance {
  Matrix a;
  Eigen::Index m;
  Eigen::Index n;
  std::uint64_t seed;
  double lipschitz;
};

// Entries filled row-major from SplitMix64(seed), each (next_u64 >> 11) *
// 2^-53, so they lie in [0, 1). L is computed by power iteration seeded with
// the same seed.
GameInstance generate_game(Eigen::Index m, Eigen::Index n, std::uint64_t seed);

// Wraps a user-supplied payoff matrix.
GameInstance make_instance(Matrix a, std::uint64_t seed = 0);

VIProblem game_problem(const GameInstance& instance,
                       std::optional<Point> reference = std::nullopt);

// (1/m, ..., 1/m, 1/n, ..., 1/n).
Point uniform_start(Eigen::Index m, Eigen::Index n);

// Independent uniform draws from the two simplices.
Point random_feasible_start(Eigen::Index m, Eigen::Index n, std::uint64_t seed);

inline constexpr double kPresolveTolerance = 1e-10;
inline constexpr long kPresolveMaxIters = 10'000'000;
inline constexpr double kPresolveAlpha = 50.0;

struct PresolveResult {
  Point solution;
  double residual;
  long iterations;
};

// Thrown when presolve_reference misses its tolerance.
class PresolveError : public NumericalError {
 public:
  PresolveError(const std::string& what, double best_residual)
      : NumericalError(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

// Runs fOGDA-VI (alpha = 50, gamma = 0.99 / (4L)) from the uniform start
// until Res <= tol.
PresolveResult presolve_reference(const GameInstance& instance,
                                  double tol = kPresolveTolerance,
                                  long max_iters = kPresolveMaxIters);

inline constexpr std::array<long, 4> kSummaryCheckpoints = {100, 1000, 10000,
                                                             100000};

struct RunSpec {
  GameInstance instance;
  std::vector<SolverConfig> configs;
  RecordCadence cadence = RecordCadence::kLogarithmic;
  std::optional<Point> start;      // defaults to uniform_start
  std::optional<Point> reference;  // enables dist_to_ref and delta0
  // Upper bound on concurrent runs; 0 means VI_THREADS or the hardware count.
  unsigned threads = 0;
};

struct SummaryRow {
  std::size_t index = 0;
  Algorithm algorithm = Algorithm::kFOGDA_VI;
  double alpha = 0.0;
  double gamma = 0.0;
  std::string status;  // completed, converged, diverged or error
  std::string message;
  long final_k = 0;
  double initial_res = 0.0;
  double final_res = 0.0;
  std::array<std::optional<double>, 4> res_at{};
  std::array<std::optional<double>, 4> gap_at{};
  double wall_seconds = 0.0;
  long operator_evals = 0;
  long projections = 0;
};

struct ComparisonResult {
  // traces[i] is empty for configs that failed before producing a trace.
  std::vector<std::optional<IterTrace>> traces;
  std::vector<SummaryRow> rows;
};

// Runs every config (concurrently, up to the thread cap); failures are
// recorded in their row and the remaining runs continue.
ComparisonResult run_comparison(const RunSpec& spec);

// Thread cap from VI_THREADS, else the number of logical processors.
unsigned default_thread_count();

// Instance file: "# vi-game m n seed L" followed by m rows of n
// comma-separated values with 17 significant digits.
void write_instance(const std::string& path, const GameInstance& instance);
GameInstance read_instance(const std::string& path);

}  // namespace fogda

#endif  // FOGDA_GAMEBENCH_HPP_
