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

// Convergence measures evaluated along solver traces.

#ifndef FOGDA_METRICS_HPP_
#define FOGDA_METRICS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fogda/core.hpp"
#include "fogda/problem.hpp"

namespace fogda {

struct MetricRecord {
  long k = 0;
  double res_natural = 0.0;
  std::optional<double> gap;
  std::optional<double> tangent_ub;
  std::optional<double> dist_to_ref;
  double step_norm = 0.0;  // ||z_k - z_{k-1}||
  std::int64_t wall_ns = 0;
};

// Res(z) = ||z - P_C[z - F(z)]||.
double natural_residual(const VIProblem& problem, const Point& z);
// Same, with F(z) supplied by the caller.
double natural_residual(const VIProblem& problem, const Point& z,
                        const Point& f_z);

// sup over the simplex product of <F(w), z - w> for the game x^T A y, which
// reduces to max_j (A^T x)_j - min_i (A y)_i. Throws std::domain_error when
// (x, y) is not in the simplex product.
//
// For skew F(x', y') = (A y', -A^T x') the pairing is
//   <F(w), z - w> = x^T A y' - x'^T A y,
// linear in w, so the supremum separates into two linear programs over the
// simplices. This is the gap without the ball restriction around z*; it
// equals the restricted gap once that ball covers C and bounds it otherwise.
double restricted_gap_bilinear(const Matrix& a, const Point& x, const Point& y);

// ||F(z) + zeta||. For zeta in N_C(z) this bounds the tangent residual r(z)
// from above and hence Res(z).
double tangent_residual_upper(const Point& f_z, const Point& zeta);

Point ergodic_average(std::span<const Point> points);

// Value of a named column ("res_natural", "gap", "tangent_ub", "dist_to_ref",
// "step_norm"); nullopt when the record does not carry it. Throws
// std::invalid_argument for unknown names.
std::optional<double> metric_value(const MetricRecord& record,
                                   std::string_view name);

// Least-squares slope of log(metric) against log(k) over records with
// k >= k_min. Needs at least 10 such records, all positive; throws
// std::domain_error otherwise.
double rate_slope(std::span<const MetricRecord> trace,
                  std::string_view metric_name, long k_min);

// All metrics at iterate z. `zeta` is the algorithm's normal-cone certificate
// when it has one. The gap is filled for game problems, dist_to_ref when a
// reference solution is present.
MetricRecord measure(const VIProblem& problem, long k, const Point& z,
                     const Point& z_prev, const Point* zeta);

}  // namespace fogda

#endif  // FOGDA_METRICS_HPP_
