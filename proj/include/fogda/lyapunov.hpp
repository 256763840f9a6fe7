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

// Energy functions of the fOGDA-VI convergence analysis, evaluated along a
// computed trace, and empirical checks of the inequalities they satisfy.
//
// Notation follows the iteration: v_k = F(w_{k-1}) + zeta_k, z* is a
// solution, lambda in (lambda_lower(alpha), lambda_upper(alpha)) and
// gamma = (1 - epsilon) / (4 L).

#ifndef FOGDA_LYAPUNOV_HPP_
#define FOGDA_LYAPUNOV_HPP_

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fogda/core.hpp"
#include "fogda/problem.hpp"
#include "fogda/solvers.hpp"

namespace fogda {

// Cap for the forward scans that locate k_lambda and k_epsilon.
inline constexpr long kThresholdScanCap = 1'000'000;

struct EnergyParams {
  double alpha;
  double gamma;
  double lipschitz;
  double epsilon;
  double lambda;
};

struct LambdaRange {
  double lower;
  double upper;
  double midpoint() const { return 0.5 * (lower + upper); }
};

struct EnergyConstants {
  double eta0;
  double eta1;
  double eta2;
  double eta3;
  double kappa0;
  double kappa1;
  double mu_k;
};

// epsilon = 1 - 4 gamma L; requires 0 < gamma < 1/(4L).
double epsilon_of(double gamma, double lipschitz);

Point v_of(const Point& f_w_prev, const Point& zeta);

// Open interval of admissible lambda for momentum alpha > 2.
LambdaRange lambda_range(double alpha);

EnergyConstants constants_of(double alpha, double lambda, long k,
                             double epsilon);

// Builds parameters with epsilon derived from (gamma, L) and lambda defaulting
// to the midpoint of lambda_range(alpha). lambda is only required to satisfy
// 0 <= lambda <= alpha - 1 so that out-of-range choices can be studied.
EnergyParams make_energy_params(double alpha, double gamma, double lipschitz,
                                std::optional<double> lambda = std::nullopt);

bool lambda_in_range(const EnergyParams& params);

Point u_lambda_of(const EnergyParams& params, long k, const Point& z_k,
                  const Point& z_prev, const Point& v_k, const Point& z_ref);

double energy_E(const EnergyParams& params, long k, const Point& z_k,
                const Point& z_prev, const Point& v_k, const Point& z_ref);

double energy_G(const EnergyParams& params, long k, const Point& z_k,
                const Point& z_prev, const Point& v_k, const Point& v_prev,
                const Point& f_z_k, const Point& f_w_prev, const Point& z_ref);

double lower_bound_G(const EnergyParams& params, long k, const Point& z_k,
                     const Point& z_prev, const Point& v_k, const Point& z_ref);

// Discriminant certificate b^2 - a c of the quadratic form R_k = a|x|^2 +
// 2b<x,y> + c|y|^2. A nonpositive value together with a < 0 shows R_k <= 0
// for all x, y.
double check_Rk(const EnergyParams& params, long k);

// Leading k^2 coefficient of the certificate divided by 4 gamma^2; negative
// exactly when lambda lies strictly inside lambda_range.
double rk_leading_coefficient(double alpha, double lambda);

// R_k evaluated at concrete vectors x = z_{k+1} - z_k, y = v_{k+1}.
double rk_value(const EnergyParams& params, long k, const Point& x,
                const Point& y);

// max{2, ceil(1 / (alpha - 2))}.
long descent_start(double alpha);

// Smallest k such that the certificate (with a < 0) is nonpositive on
// [k, cap]; nullopt when it is positive at the cap.
std::optional<long> scan_k_lambda(const EnergyParams& params,
                                  long cap = kThresholdScanCap);

// Smallest k such that mu_k >= (epsilon / 2)(k + 1)^2 on [k, cap].
std::optional<long> scan_k_epsilon(double alpha, double lambda, double epsilon,
                                   long cap = kThresholdScanCap);

// Iterate data needed by the energies at one value of k (k >= 1).
struct FogdaViSnapshot {
  long k;
  Point z;         // z_k
  Point z_prev;    // z_{k-1}
  Point zeta;      // zeta_k
  Point f_w_prev;  // F(w_{k-1})
  Point f_z;       // F(z_k), one evaluation outside the solver's accounting
  Point v() const { return f_w_prev + zeta; }
};

// Callback for RunOptions::on_step that appends a snapshot per iterate of an
// fOGDA-VI run. Throws ConfigError for other algorithms.
std::function<void(const SolverState&)> snapshot_recorder(
    const VIProblem& problem, std::vector<FogdaViSnapshot>& out);

struct EnergyRecord {
  long k;
  Point v_k;
  Point v_prev;
  Point u_lambda;
  double E;
  double G;
  double lower_bound;
  EnergyConstants constants;
  double rk_certificate;
};

// Energies for every snapshot with a predecessor (k >= 2, where v_{k-1} is
// defined).
std::vector<EnergyRecord> energy_records(std::span<const FogdaViSnapshot> trace,
                                         const EnergyParams& params,
                                         const Point& z_ref);

struct DescentRow {
  long k;      // inequality between G_{k+1} and G_k
  double lhs;  // G_{k+1} - G_k
  double rhs;
  double slack;  // rhs - lhs
  bool holds;
  double rk;  // R_k at the trace vectors
};

struct DescentReport {
  std::vector<DescentRow> rows;
  double worst_slack;
  // First k from which every later row holds; nullopt if the last row fails.
  std::optional<long> first_valid_k;
  bool all_hold;
};

// Checks G_{k+1} - G_k <= (displayed right-hand side) for k >= k_start. Rows
// hold when slack >= -1e-9 (1 + |G_k| + |G_{k+1}|).
DescentReport check_descent(std::span<const FogdaViSnapshot> trace,
                            const EnergyParams& params, const Point& z_ref,
                            long k_start);

struct LipschitzChainRow {
  long k;      // relation between steps k and k+1
  double lhs;  // ||zeta_{k+1} + F(z_{k+1}) - v_{k+1}||
  double rhs;  // gamma L ||v_{k+1} - v_k||
  double slack;  // rhs + 1e-10 - lhs
};

std::vector<LipschitzChainRow> check_lipschitz_chain(
    std::span<const FogdaViSnapshot> trace, const EnergyParams& params);

// Streaming partial sums of
//   sum k^2 ||v_{k+1} - v_k||^2,  sum k ||z_{k+1} - z_k||^2,
//   sum k ||F(w_k) + zeta_{k+1}||^2,
// plus the sequence k ||z_k - z_{k-1}||.
class SummabilityAccumulator {
 public:
  // Feed consecutive fOGDA-VI states (after init and after every step).
  void observe(const SolverState& state);
  void observe(long k, const Point& z, const Point& z_prev, const Point& v);

  struct Report {
    long last_k = 0;
    double sum_dv = 0.0;
    double sum_dz = 0.0;
    double sum_v = 0.0;
    // (S(K) - S(K/2)) / S(K); zero when S(K) = 0.
    double growth_dv = 0.0;
    double growth_dz = 0.0;
    double growth_v = 0.0;
    double max_k_step = 0.0;              // over all k
    double max_k_step_last_decade = 0.0;  // over k in [K/10, K]
  };

  Report report() const;

 private:
  struct Entry {
    long k;
    double sum_dv, sum_dz, sum_v, k_step;
  };
  std::vector<Entry> entries_;
  std::optional<Point> prev_v_;
  double sum_dv_ = 0.0;
  double sum_dz_ = 0.0;
  double sum_v_ = 0.0;
};

SummabilityAccumulator::Report summability_report(
    std::span<const FogdaViSnapshot> trace);

// (max - min) / max |value| over the window, zero for an all-zero window.
double relative_variation(std::span<const double> values);

// max_i |v_i - v_{i-1}| / |v_{i-1}| over consecutive entries.
double max_step_change(std::span<const double> values);

struct LyapunovReport {
  EnergyParams params;
  LambdaRange range;
  long k0;
  std::optional<long> k_lambda;
  std::optional<long> k_epsilon;
  double leading_coefficient;
  std::vector<EnergyRecord> energies;
  DescentReport descent;
  std::vector<LipschitzChainRow> lipschitz_chain;
  SummabilityAccumulator::Report summability;

  bool lower_bound_holds;      // G >= lower_bound >= 0 everywhere
  bool E_nonnegative;
  bool rk_certified;           // certificate <= 0 for scanned k >= k_lambda
  bool lipschitz_chain_holds;
  double E_final_variation;    // over the final tenth of the recorded k
  double G_final_variation;
  double E_final_step_change;  // max_step_change over the same window
  double G_final_step_change;
};

LyapunovReport analyze(std::span<const FogdaViSnapshot> trace,
                       const EnergyParams& params, const Point& z_ref);

}  // namespace fogda

#endif  // FOGDA_LYAPUNOV_HPP_
