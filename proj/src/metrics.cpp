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

#include "fogda/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fogda/sets.hpp"

namespace fogda {

double natural_residual(const VIProblem& problem, const Point& z) {
  return natural_residual(problem, z, problem.op(z));
}

double natural_residual(const VIProblem& problem, const Point& z,
                        const Point& f_z) {
  return (z - problem.set.project(z - f_z)).norm();
}

double restricted_gap_bilinear(const Matrix& a, const Point& x,
                               const Point& y) {
  if (a.rows() != x.size() || a.cols() != y.size()) {
    throw DimensionError("restricted_gap_bilinear: shape mismatch");
  }
  const FeasibleSet row_simplex = FeasibleSet::simplex(a.rows());
  const FeasibleSet col_simplex = FeasibleSet::simplex(a.cols());
  if (!row_simplex.contains(x) || !col_simplex.contains(y)) {
    throw std::domain_error(
        "restricted_gap_bilinear: (x, y) is not in the simplex product");
  }
  const double best_response_y = col_simplex.linear_maximize(a.transpose() * x).value;
  const double best_response_x = -row_simplex.linear_maximize(-(a * y)).value;
  // Exact arithmetic gives a nonnegative value.
  return std::max(0.0, best_response_y - best_response_x);
}

double tangent_residual_upper(const Point& f_z, const Point& zeta) {
  if (f_z.size() != zeta.size()) {
    throw DimensionError("tangent_residual_upper: dimension mismatch");
  }
  return (f_z + zeta).norm();
}

Point ergodic_average(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("ergodic_average: no points");
  Point sum = Point::Zero(points.front().size());
  for (const Point& p : points) {
    if (p.size() != sum.size()) {
      throw DimensionError("ergodic_average: dimension mismatch");
    }
    sum += p;
  }
  return sum / static_cast<double>(points.size());
}

std::optional<double> metric_value(const MetricRecord& record,
                                   std::string_view name) {
  if (name == "res_natural") return record.res_natural;
  if (name == "gap") return record.gap;
  if (name == "tangent_ub") return record.tangent_ub;
  if (name == "dist_to_ref") return record.dist_to_ref;
  if (name == "step_norm") return record.step_norm;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

double rate_slope(std::span<const MetricRecord> trace,
                  std::string_view metric_name, long k_min) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long n = 0;
  for (const MetricRecord& r : trace) {
    if (r.k < k_min || r.k <= 0) continue;
    const std::optional<double> value = metric_value(r, metric_name);
    if (!value || !(*value > 0.0) || !std::isfinite(*value)) {
      throw std::domain_error("rate_slope: metric '" +
                              std::string(metric_name) +
                              "' is missing or nonpositive at k = " +
                              std::to_string(r.k));
    }
    const double lx = std::log(static_cast<double>(r.k));
    const double ly = std::log(*value);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 10) {
    throw std::domain_error("rate_slope: need at least 10 records with k >= " +
                            std::to_string(k_min) + ", got " +
                            std::to_string(n));
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (denom <= 0.0) throw std::domain_error("rate_slope: degenerate k range");
  return (dn * sxy - sx * sy) / denom;
}

MetricRecord measure(const VIProblem& problem, long k, const Point& z,
                     const Point& z_prev, const Point* zeta) {
  MetricRecord record;
  record.k = k;
  const Point f_z = problem.op(z);
  record.res_natural = natural_residual(problem, z, f_z);
  if (zeta != nullptr) record.tangent_ub = tangent_residual_upper(f_z, *zeta);
  if (problem.payoff) {
    const Eigen::Index m = problem.payoff->rows();
    const Eigen::Index n = problem.payoff->cols();
    // Iterates of FBF and fOGDA may leave C; the gap is only defined on C.
    if (problem.set.contains(z)) {
      record.gap = restricted_gap_bilinear(*problem.payoff, z.head(m), z.tail(n));
    }
  }
  if (problem.reference_solution) {
    record.dist_to_ref = (z - *problem.reference_solution).norm();
  }
  record.step_norm = (z - z_prev).norm();
  return record;
}

}  // namespace fogda
