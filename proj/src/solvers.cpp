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

#include "fogda/solvers.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>

namespace fogda {

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kEG: return "eg";
    case Algorithm::kPopov: return "popov";
    case Algorithm::kFBF: return "fbf";
    case Algorithm::kFRB: return "frb";
    case Algorithm::kRG: return "rg";
    case Algorithm::kEAG: return "eag";
    case Algorithm::kARG: return "arg";
    case Algorithm::kFOGDA: return "fogda";
    case Algorithm::kFOGDA_VI: return "fogda-vi";
  }
  return "unknown";
}

std::string_view algorithm_label(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kEG: return "EG";
    case Algorithm::kPopov: return "Popov";
    case Algorithm::kFBF: return "FBF";
    case Algorithm::kFRB: return "FRB";
    case Algorithm::kRG: return "RG";
    case Algorithm::kEAG: return "EAG";
    case Algorithm::kARG: return "ARG";
    case Algorithm::kFOGDA: return "fOGDA";
    case Algorithm::kFOGDA_VI: return "fOGDA-VI";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  std::string lowered(name);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  std::replace(lowered.begin(), lowered.end(), '_', '-');
  for (Algorithm a : kAllAlgorithms) {
    if (lowered == algorithm_name(a)) return a;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

bool uses_momentum(Algorithm algorithm) {
  return algorithm == Algorithm::kFOGDA || algorithm == Algorithm::kFOGDA_VI;
}

StepSizeBound step_size_bound(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kEG: return {1.0, false, "EG requires γ < 1/L"};
    case Algorithm::kFBF: return {1.0, false, "FBF requires γ < 1/L"};
    case Algorithm::kPopov: return {0.5, false, "Popov requires γ < 1/(2L)"};
    case Algorithm::kFRB: return {0.5, false, "FRB requires γ < 1/(2L)"};
    case Algorithm::kRG:
      return {std::sqrt(2.0) - 1.0, false, "RG requires γ < (√2−1)/L"};
    case Algorithm::kEAG:
      return {1.0 / std::sqrt(3.0), false, "EAG requires γ < 1/(√3·L)"};
    case Algorithm::kARG: return {1.0 / 12.0, true, "ARG requires γ ≤ 1/(12L)"};
    case Algorithm::kFOGDA: return {0.25, false, "fOGDA requires γ < 1/(4L)"};
    case Algorithm::kFOGDA_VI:
      return {0.25, false, "fOGDA-VI requires γ < 1/(4L)"};
  }
  throw ConfigError("unknown algorithm");
}

CallCounts calls_per_step(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kEG: return {2, 2};
    case Algorithm::kPopov: return {1, 2};
    case Algorithm::kFBF: return {2, 1};
    case Algorithm::kFRB: return {1, 1};
    case Algorithm::kRG: return {1, 1};
    case Algorithm::kEAG: return {2, 2};
    case Algorithm::kARG: return {1, 1};
    case Algorithm::kFOGDA: return {1, 0};
    case Algorithm::kFOGDA_VI: return {1, 1};
  }
  throw ConfigError("unknown algorithm");
}

double resolve_gamma(const SolverConfig& config, double lipschitz) {
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
    throw ConfigError("Lipschitz constant must be positive and finite");
  }
  const StepSizeBound bound = step_size_bound(config.algorithm);
  const double limit = bound.factor / lipschitz;
  if (config.gamma) {
    const double gamma = *config.gamma;
    const bool ok = std::isfinite(gamma) && gamma > 0.0 &&
                    (bound.inclusive ? gamma <= limit : gamma < limit);
    if (!ok) {
      std::ostringstream msg;
      msg.precision(17);
      msg << bound.description << ", got γ = " << gamma << " with L = "
          << lipschitz << " (bound " << limit << ")";
      throw ConfigError(msg.str());
    }
    return gamma;
  }
  const double fraction =
      config.safety_fraction.value_or(bound.inclusive ? 1.0 : 0.99);
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw ConfigError("safety fraction must lie in (0, 1]");
  }
  if (fraction == 1.0 && !bound.inclusive) {
    throw ConfigError(std::string(bound.description) +
                      "; a safety fraction of 1 lands on the open bound");
  }
  return fraction * limit;
}

void validate_config(const SolverConfig& config, double lipschitz) {
  resolve_gamma(config, lipschitz);
  if (uses_momentum(config.algorithm) &&
      !(config.alpha > 2.0 && std::isfinite(config.alpha))) {
    throw ConfigError(std::string(algorithm_label(config.algorithm)) +
                      " requires α > 2");
  }
  if (config.counter_stride < 1) {
    throw ConfigError("counter stride must be a positive integer");
  }
  if (config.max_iters < 0) throw ConfigError("max_iters must be >= 0");
  if (!(config.stop_tolerance >= 0.0)) {
    throw ConfigError("stop tolerance must be >= 0");
  }
}

double SolverState::effective_k() const {
  return static_cast<double>(1 + (k - 1) / stride);
}

SolverState init(const SolverConfig& config, const VIProblem& problem,
                 const Point& start) {
  validate_config(config, problem.lipschitz());
  if (start.size() != problem.dim()) {
    throw DimensionError("init: start point has dimension " +
                         std::to_string(start.size()) + ", problem has " +
                         std::to_string(problem.dim()));
  }
  if (!all_finite(start)) throw ConfigError("init: start point is not finite");

  SolverState s;
  s.algorithm = config.algorithm;
  s.gamma = resolve_gamma(config, problem.lipschitz());
  s.alpha = config.alpha;
  s.stride = config.counter_stride;
  s.k = 0;
  const Eigen::Index d = problem.dim();
  s.zeta = Point::Zero(d);

  switch (config.algorithm) {
    case Algorithm::kFOGDA:
      // Unconstrained scheme: z_0 = w_0 = z_1 = start.
      s.k = 1;
      s.z_prev = start;
      s.z_curr = start;
      s.w_prev = start;
      s.F_w_prev = problem.op(start);
      return s;
    case Algorithm::kFOGDA_VI:
      // z_1 = P_C(start) and zeta_1 = start - z_1 lies in N_C(z_1); zeta_1 = 0
      // whenever the start is feasible.
      s.k = 1;
      s.z_prev = start;
      s.w_prev = start;
      s.z_curr = problem.set.project(start);
      s.zeta = start - s.z_curr;
      s.F_w_prev = problem.op(start);
      return s;
    default:
      break;
  }

  const Point p = problem.set.project(start);
  s.z_prev = p;
  s.z_curr = p;
  s.w_prev = p;
  s.anchor = p;
  switch (config.algorithm) {
    case Algorithm::kEG:
    case Algorithm::kFBF:
    case Algorithm::kEAG:
      s.k = 0;
      break;
    case Algorithm::kPopov:
      s.k = 1;
      s.F_w_prev = problem.op(p);
      break;
    case Algorithm::kFRB:
      s.k = 1;
      s.F_z_prev = problem.op(p);
      break;
    case Algorithm::kRG:
    case Algorithm::kARG:
      s.k = 1;
      break;
    default:
      break;
  }
  return s;
}

namespace {

// Shifts z_curr into z_prev and installs the new iterate.
void advance(SolverState& s, Point z_next) {
  s.z_prev = std::move(s.z_curr);
  s.z_curr = std::move(z_next);
  ++s.k;
  ++s.steps;
}

void expect(const SolverState& s, Algorithm algorithm) {
  if (s.algorithm != algorithm) {
    throw ConfigError("step_" + std::string(algorithm_name(algorithm)) +
                      " called on a state initialised for " +
                      std::string(algorithm_label(s.algorithm)));
  }
}

}  // namespace

void step_eg(SolverState& s, const VIProblem& problem) {
  expect(s, Algorithm::kEG);
  const Point f_z = problem.op(s.z_curr);
  Point w = problem.set.project(s.z_curr - s.gamma * f_z);
  const Point f_w = problem.op(w);
  Point z_next = problem.set.project(s.z_curr - s.gamma * f_w);
  s.operator_evals += 2;
  s.projections += 2;
  s.w_prev = std::move(w);
  advance(s, std::move(z_next));
}

void step_popov(SolverState& s, const VIProblem& problem) {
  expect(s, Algorithm::kPopov);
  Point w = problem.set.project(s.z_curr - s.gamma * s.F_w_prev);
  Point f_w = problem.op(w);
  Point z_next = problem.set.project(s.z_curr - s.gamma * f_w);
  s.operator_evals += 1;
  s.projections += 2;
  s.w_prev = std::move(w);
  s.F_w_prev = std::move(f_w);
  advance(s, std::move(z_next));
}

void step_fbf(SolverState& s, const VIProblem& problem) {
  expect(s, Algorithm::kFBF);
  const Point f_z = problem.op(s.z_curr);
  Point w = problem.set.project(s.z_curr - s.gamma * f_z);
  const Point f_w = problem.op(w);
  Point z_next = w - s.gamma * f_w + s.gamma * f_z;
  s.operator_evals += 2;
  s.projections += 1;
  s.w_prev = std::move(w);
  advance(s, std::move(z_next));
}

void step_frb(SolverState& s, const VIProblem& problem) {
  expect(s, Algorithm::kFRB);
  Point f_z = problem.op(s.z_curr);
  Point z_next = problem.set.project(s.z_curr - 2.0 * s.gamma * f_z +
                                     s.gamma * s.F_z_prev);
  s.operator_evals += 1;
  s.projections += 1;
  s.F_z_prev = std::move(f_z);
  advance(s, std::move(z_next));
}

void step_rg(SolverState& s, const VIProblem& problem) {
  expect(s, Algorithm::kRG);
  Point w = 2.0 * s.z_curr - s.z_prev;
  const Point f_w = problem.op(w);
  Point z_next = problem.set.project(s.z_curr - s.gamma * f_w);
  s.operator_evals += 1;
  s.projections += 1;
  s.w_prev = std::move(w);
  advance(s, std::move(z_next));
}

void step_eag(SolverState& s, const VIProblem& problem) {
  expect(s, Algorithm::kEAG);
  const double kk = static_cast<double>(s.k);
  const Point pull = (s.anchor - s.z_curr) / (kk + 1.0);
  const Point f_z = problem.op(s.z_curr);
  Point w = problem.set.project(s.z_curr - s.gamma * f_z + pull);
  const Point f_w = problem.op(w);
  Point z_next = problem.set.project(s.z_curr - s.gamma * f_w + pull);
  s.operator_evals += 2;
  s.projections += 2;
  s.w_prev = std::move(w);
  advance(s, std::move(z_next));
}

void step_arg(SolverState& s, const VIProblem& problem) {
  expect(s, Algorithm::kARG);
  const double kk = static_cast<double>(s.k);
  const Point pull = (s.anchor - s.z_curr) / (kk + 1.0);
  Point w = 2.0 * s.z_curr - s.z_prev + pull - (s.anchor - s.z_prev) / kk;
  const Point f_w = problem.op(w);
  Point z_next = problem.set.project(s.z_curr - s.gamma * f_w + pull);
  s.operator_evals += 1;
  s.projections += 1;
  s.w_prev = std::move(w);
  advance(s, std::move(z_next));
}

void step_fogda(SolverState& s, const VIProblem& problem) {
  expect(s, Algorithm::kFOGDA);
  const double kk = s.effective_k();
  const double a = s.alpha;
  Point w = s.z_curr + (kk / (kk + a)) * (s.z_curr - s.z_prev) -
            (s.gamma * a / (kk + a)) * s.F_w_prev;
  Point f_w = problem.op(w);
  Point z_next =
      w - (s.gamma * (2.0 * kk + a) / (kk + a)) * (f_w - s.F_w_prev);
  s.operator_evals += 1;
  s.w_prev = std::move(w);
  s.F_w_prev = std::move(f_w);
  advance(s, std::move(z_next));
}

void step_fogda_vi(SolverState& s, const VIProblem& problem) {
  expect(s, Algorithm::kFOGDA_VI);
  const double kk = s.effective_k();
  const double a = s.alpha;
  Point w = s.z_curr + (kk / (kk + a)) * (s.z_curr - s.z_prev) -
            (s.gamma * a / (kk + a)) * (s.F_w_prev + s.zeta);
  Point f_w = problem.op(w);
  const double scale = s.gamma * (2.0 * kk + a) / (kk + a);
  const Point direction = f_w - s.F_w_prev - s.zeta;
  Point z_next = problem.set.project(w - scale * direction);
  // The projection residual recovers the normal-cone element at z_{k+1}.
  s.zeta = (w - z_next) / scale - direction;
  s.operator_evals += 1;
  s.projections += 1;
  s.w_prev = std::move(w);
  s.F_w_prev = std::move(f_w);
  advance(s, std::move(z_next));
}

void step(SolverState& state, const VIProblem& problem) {
  switch (state.algorithm) {
    case Algorithm::kEG: return step_eg(state, problem);
    case Algorithm::kPopov: return step_popov(state, problem);
    case Algorithm::kFBF: return step_fbf(state, problem);
    case Algorithm::kFRB: return step_frb(state, problem);
    case Algorithm::kRG: return step_rg(state, problem);
    case Algorithm::kEAG: return step_eag(state, problem);
    case Algorithm::kARG: return step_arg(state, problem);
    case Algorithm::kFOGDA: return step_fogda(state, problem);
    case Algorithm::kFOGDA_VI: return step_fogda_vi(state, problem);
  }
}

bool on_log_cadence(long k) {
  if (k < 1) return false;
  // j ranges over a window around 12 log10(k); rounding 10^(j/12) is
  // monotone in j so checking the neighbours is enough.
  const long j0 = std::lround(12.0 * std::log10(static_cast<double>(k)));
  for (long j = std::max(0L, j0 - 1); j <= j0 + 1; ++j) {
    if (std::lround(std::pow(10.0, static_cast<double>(j) / 12.0)) == k) {
      return true;
    }
  }
  return false;
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kCompleted: return "completed";
    case RunStatus::kConverged: return "converged";
    case RunStatus::kDiverged: return "diverged";
  }
  return "unknown";
}

IterTrace run(const SolverConfig& config, const VIProblem& problem,
              const Point& start, const RunOptions& options) {
  SolverState state = init(config, problem, start);

  IterTrace trace;
  trace.algorithm = config.algorithm;
  trace.gamma = state.gamma;
  trace.alpha = config.alpha;
  trace.stride = config.counter_stride;
  trace.max_iters = config.max_iters;
  trace.seed = config.seed;
  trace.dim = problem.dim();
  trace.lipschitz = problem.lipschitz();
  trace.stop_tolerance = config.stop_tolerance;
  if (problem.reference_solution) {
    trace.delta0 = (*problem.reference_solution - state.z_curr).norm();
  }

  const bool has_certificate =
      config.algorithm == Algorithm::kFOGDA_VI ||
      (config.algorithm == Algorithm::kFOGDA &&
       problem.set.kind() == SetKind::kWholeSpace);
  const auto t0 = std::chrono::steady_clock::now();
  long last_recorded = -1;
  auto record = [&] {
    MetricRecord r = measure(problem, state.k, state.z_curr, state.z_prev,
                             has_certificate ? &state.zeta : nullptr);
    r.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    trace.records.push_back(r);
    last_recorded = state.k;
    if (options.on_record) options.on_record(state, r);
    return r.res_natural;
  };

  if (options.on_step) options.on_step(state);
  double residual = record();
  const long last_k = state.k + config.max_iters;

  if (residual <= config.stop_tolerance) {
    trace.status = RunStatus::kConverged;
  } else {
    while (state.k < last_k) {
      step(state, problem);
      if (!all_finite(state.z_curr) ||
          state.z_curr.norm() > kDivergenceNorm) {
        trace.status = RunStatus::kDiverged;
        std::ostringstream msg;
        msg << algorithm_label(config.algorithm) << " diverged at k = "
            << state.k << ": ||z_k|| = " << state.z_curr.norm();
        trace.diagnostic = msg.str();
        break;
      }
      if (options.on_step) options.on_step(state);
      const bool due = options.cadence == RecordCadence::kEveryStep ||
                       on_log_cadence(state.k) || state.k == last_k;
      if (due) {
        residual = record();
      } else {
        residual = natural_residual(problem, state.z_curr);
      }
      if (residual <= config.stop_tolerance) {
        if (last_recorded != state.k) record();
        trace.status = RunStatus::kConverged;
        break;
      }
    }
  }

  trace.steps = state.steps;
  trace.operator_evals = state.operator_evals;
  trace.projections = state.projections;
  trace.final_iterate = state.z_curr;
  return trace;
}

}  // namespace fogda
