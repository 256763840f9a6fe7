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

// Iteration engine for monotone variational inequalities: fOGDA-VI and the
// reference methods (EG, Popov, FBF, FRB, RG, EAG, ARG, fOGDA) behind one
// state/step interface.

#ifndef FOGDA_SOLVERS_HPP_
#define FOGDA_SOLVERS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fogda/core.hpp"
#include "fogda/metrics.hpp"
#include "fogda/problem.hpp"

namespace fogda {

enum class Algorithm { kEG, kPopov, kFBF, kFRB, kRG, kEAG, kARG, kFOGDA, kFOGDA_VI };

inline constexpr std::array<Algorithm, 9> kAllAlgorithms = {
    Algorithm::kEG,  Algorithm::kPopov, Algorithm::kFBF,
    Algorithm::kFRB, Algorithm::kRG,    Algorithm::kEAG,
    Algorithm::kARG, Algorithm::kFOGDA, Algorithm::kFOGDA_VI};

// The methods that honour the constraint set (everything except fOGDA).
inline constexpr std::array<Algorithm, 8> kConstrainedAlgorithms = {
    Algorithm::kEG,  Algorithm::kPopov, Algorithm::kFBF, Algorithm::kFRB,
    Algorithm::kRG,  Algorithm::kEAG,   Algorithm::kARG, Algorithm::kFOGDA_VI};

// Command-line name, e.g. "fogda-vi".
std::string_view algorithm_name(Algorithm algorithm);
// Display label, e.g. "fOGDA-VI".
std::string_view algorithm_label(Algorithm algorithm);
// Accepts command-line names and display labels, case-insensitively.
Algorithm parse_algorithm(std::string_view name);

bool uses_momentum(Algorithm algorithm);

// gamma < factor / L, or gamma <= factor / L when `inclusive`.
struct StepSizeBound {
  double factor;
  bool inclusive;
  std::string_view description;  // e.g. "ARG requires γ ≤ 1/(12L)"
};

StepSizeBound step_size_bound(Algorithm algorithm);

// Operator evaluations and projections performed by one step.
struct CallCounts {
  int operator_evals;
  int projections;
  friend bool operator==(const CallCounts&, const CallCounts&) = default;
};

CallCounts calls_per_step(Algorithm algorithm);

struct SolverConfig {
  Algorithm algorithm = Algorithm::kFOGDA_VI;
  // Explicit step size; validated against the algorithm's bound.
  std::optional<double> gamma;
  // Momentum parameter of fOGDA / fOGDA-VI, must exceed 2.
  double alpha = 10.0;
  // Fraction of the bound used when gamma is derived from L. Unset means
  // 0.99 for open bounds and 1 for ARG's closed bound.
  std::optional<double> safety_fraction;
  // The momentum coefficients of fOGDA / fOGDA-VI see the counter
  // 1 + floor((k - 1) / stride) instead of k.
  long counter_stride = 1;
  long max_iters = 1000;
  std::uint64_t seed = 0;
  // Stop once the natural residual is at or below this value.
  double stop_tolerance = 0.0;
};

// Validates the config and returns the step size to use for Lipschitz
// constant `lipschitz`. Throws ConfigError naming the violated bound.
double resolve_gamma(const SolverConfig& config, double lipschitz);

void validate_config(const SolverConfig& config, double lipschitz);

struct SolverState {
  Algorithm algorithm;
  double gamma;
  double alpha;
  long stride;

  // Index of z_curr in the scheme's own numbering.
  long k;
  Point z_prev;    // z_{k-1}
  Point z_curr;    // z_k
  Point w_prev;    // w_{k-1}, the latest auxiliary iterate
  Point zeta;      // zeta_k in N_C(z_k) for fOGDA-VI, zero otherwise
  Point anchor;    // z_0 of the anchored methods
  Point F_w_prev;  // F(w_{k-1}) for Popov, fOGDA, fOGDA-VI
  Point F_z_prev;  // F(z_{k-1}) for FRB

  // Calls made by step(); initialisation is not counted.
  long operator_evals = 0;
  long projections = 0;
  long steps = 0;

  // Counter used inside the momentum coefficients.
  double effective_k() const;
};

SolverState init(const SolverConfig& config, const VIProblem& problem,
                 const Point& start);

void step_eg(SolverState& state, const VIProblem& problem);
void step_popov(SolverState& state, const VIProblem& problem);
void step_fbf(SolverState& state, const VIProblem& problem);
void step_frb(SolverState& state, const VIProblem& problem);
void step_rg(SolverState& state, const VIProblem& problem);
void step_eag(SolverState& state, const VIProblem& problem);
void step_arg(SolverState& state, const VIProblem& problem);
void step_fogda(SolverState& state, const VIProblem& problem);
void step_fogda_vi(SolverState& state, const VIProblem& problem);

// Dispatches on state.algorithm.
void step(SolverState& state, const VIProblem& problem);

// Divergence guard on ||z_k||.
inline constexpr double kDivergenceNorm = 1e12;

enum class RecordCadence { kLogarithmic, kEveryStep };

// True when k is the nearest integer to 10^(j/12) for some j >= 0.
bool on_log_cadence(long k);

struct RunOptions {
  RecordCadence cadence = RecordCadence::kLogarithmic;
  // Called after init and after every step.
  std::function<void(const SolverState&)> on_step;
  // Called for every emitted record.
  std::function<void(const SolverState&, const MetricRecord&)> on_record;
};

enum class RunStatus { kCompleted, kConverged, kDiverged };

std::string_view to_string(RunStatus status);

struct IterTrace {
  Algorithm algorithm;
  double gamma;
  double alpha;
  long stride;
  long max_iters;
  std::uint64_t seed;
  Eigen::Index dim;
  double lipschitz;
  double stop_tolerance;
  // ||z* - z_0|| when the problem carries a reference solution.
  std::optional<double> delta0;

  std::vector<MetricRecord> records;
  RunStatus status = RunStatus::kCompleted;
  std::string diagnostic;

  long steps = 0;
  long operator_evals = 0;
  long projections = 0;
  Point final_iterate;
};

IterTrace run(const SolverConfig& config, const VIProblem& problem,
              const Point& start, const RunOptions& options = {});

}  // namespace fogda

#endif  // FOGDA_SOLVERS_HPP_
