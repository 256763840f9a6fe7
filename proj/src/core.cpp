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

#include "fogda/core.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "fogda/rng.hpp"

namespace fogda {

double inner(const Point& a, const Point& b) {
  if (a.size() != b.size()) {
    throw DimensionError("inner: dimension mismatch (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

bool all_finite(const Point& p) { return p.allFinite(); }

Point evaluate_game_operator(const Matrix& a, const Point& x, const Point& y) {
  if (a.rows() != x.size() || a.cols() != y.size()) {
    throw DimensionError("game operator: A is " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " but x has " +
                         std::to_string(x.size()) + " and y has " +
                         std::to_string(y.size()) + " entries");
  }
  Point out(a.rows() + a.cols());
  out.head(a.rows()).noalias() = a * y;
  out.tail(a.cols()).noalias() = -(a.transpose() * x);
  return out;
}

double lipschitz_bilinear(const Matrix& a, std::uint64_t seed,
                          const PowerIterationOptions& options) {
  if (a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0) {
    throw ConfigError("lipschitz_bilinear: A must be nonzero");
  }
  SplitMix64 rng(seed);
  Point v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform() + 0.5;
  v.normalize();

  Point av(a.rows());
  Point next(a.cols());
  for (int it = 0; it < options.max_iterations; ++it) {
    av.noalias() = a * v;
    next.noalias() = a.transpose() * av;
    // Rayleigh quotient of A^T A; residual-based stopping keeps the error in
    // the eigenvalue at or below the requested relative tolerance.
    const double theta = v.dot(next);
    if (theta <= 0.0) {
      // Start vector orthogonal to the row space; restart from fresh noise.
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform() - 0.5;
      v.normalize();
      continue;
    }
    const double residual = (next - theta * v).norm();
    const double next_norm = next.norm();
    v = next / next_norm;
    if (residual <= options.relative_tolerance * theta) {
      return std::sqrt(theta);
    }
  }
  throw NumericalError("lipschitz_bilinear: power iteration did not converge "
                       "within " + std::to_string(options.max_iterations) +
                       " iterations");
}

MonotoneOperator::MonotoneOperator(EvalFn eval, double lipschitz,
                                   Eigen::Index dim)
    : eval_(std::move(eval)), lipschitz_(lipschitz), dim_(dim) {
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
    throw ConfigError("operator Lipschitz constant must be positive and finite");
  }
  if (dim <= 0) throw DimensionError("operator dimension must be positive");
}

Point MonotoneOperator::operator()(const Point& z) const {
  if (z.size() != dim_) {
    throw DimensionError("operator: expected dimension " +
                         std::to_string(dim_) + ", got " +
                         std::to_string(z.size()));
  }
  return eval_(z);
}

MonotoneOperator make_game_operator(Matrix a, std::uint64_t seed) {
  const double l = lipschitz_bilinear(a, seed);
  return make_game_operator(std::move(a), l);
}

MonotoneOperator make_game_operator(Matrix a, double lipschitz) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  auto shared = std::make_shared<const Matrix>(std::move(a));
  return MonotoneOperator(
      [shared, m, n](const Point& z) {
        Point out(m + n);
        out.head(m).noalias() = (*shared) * z.tail(n);
        out.tail(n).noalias() = -(shared->transpose() * z.head(m));
        return out;
      },
      lipschitz, m + n);
}

MonotoneOperator make_linear_operator(Matrix m, std::uint64_t seed) {
  if (m.rows() != m.cols()) {
    throw DimensionError("linear operator matrix must be square");
  }
  const double l = lipschitz_bilinear(m, seed);
  auto shared = std::make_shared<const Matrix>(std::move(m));
  const Eigen::Index d = shared->rows();
  return MonotoneOperator(
      [shared](const Point& z) -> Point { return (*shared) * z; }, l, d);
}

MonotoneOperator make_zero_operator(Eigen::Index dim) {
  return MonotoneOperator([dim](const Point&) -> Point {
    return Point::Zero(dim);
  }, 1.0, dim);
}

}  // namespace fogda
