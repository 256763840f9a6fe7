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

// Ambient vector arithmetic and operator abstractions shared by the solvers,
// metrics and diagnostics.

#ifndef FOGDA_CORE_HPP_
#define FOGDA_CORE_HPP_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace fogda {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Raised when vector or matrix shapes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised for invalid user-supplied configuration (step sizes, parameters).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an iteration produces non-finite or diverging values, or an
// inner numerical routine fails to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double inner(const Point& a, const Point& b);

bool all_finite(const Point& p);

// F(x, y) = (A y, -A^T x), the saddle operator of the bilinear game x^T A y.
Point evaluate_game_operator(const Matrix& a, const Point& x, const Point& y);

struct PowerIterationOptions {
  double relative_tolerance = 1e-10;
  int max_iterations = 10000;
};

// Largest singular value of `a`, i.e. the Lipschitz constant of the game
// operator. Power iteration on A^T A, started from a vector drawn from
// `seed`. Throws ConfigError for the zero matrix and NumericalError when the
// iteration cap is hit.
double lipschitz_bilinear(const Matrix& a, std::uint64_t seed = 0,
                          const PowerIterationOptions& options = {});

// A monotone, Lipschitz continuous operator given by explicit evaluation.
// Copies share the evaluation function; evaluation must be deterministic.
class MonotoneOperator {
 public:
  using EvalFn = std::function<Point(const Point&)>;

  MonotoneOperator(EvalFn eval, double lipschitz, Eigen::Index dim);

  Point operator()(const Point& z) const;

  double lipschitz() const { return lipschitz_; }
  Eigen::Index dim() const { return dim_; }

 private:
  EvalFn eval_;
  double lipschitz_;
  Eigen::Index dim_;
};

// Operator of the game min_x max_y x^T A y on R^(m+n); L is computed with
// lipschitz_bilinear unless supplied.
MonotoneOperator make_game_operator(Matrix a, std::uint64_t seed = 0);
MonotoneOperator make_game_operator(Matrix a, double lipschitz);

// z -> M z for a square M, with L = ||M||_2 (largest singular value).
MonotoneOperator make_linear_operator(Matrix m, std::uint64_t seed = 0);

// The zero operator on R^dim. Its Lipschitz constant is reported as 1 so that
// step-size rules stay defined.
MonotoneOperator make_zero_operator(Eigen::Index dim);

}  // namespace fogda

#endif  // FOGDA_CORE_HPP_
