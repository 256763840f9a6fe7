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

#ifndef FOGDA_PROBLEM_HPP_
#define FOGDA_PROBLEM_HPP_

#include <optional>

#include "fogda/core.hpp"
#include "fogda/sets.hpp"

namespace fogda {

// Find z* in C with <F(z*), z - z*> >= 0 for all z in C.
struct VIProblem {
  MonotoneOperator op;
  FeasibleSet set;
  std::optional<Point> reference_solution;
  // Payoff matrix when the problem is the bilinear game min_x max_y x^T A y
  // over a product of two simplices; enables the closed-form gap.
  std::optional<Matrix> payoff;

  Eigen::Index dim() const { return op.dim(); }
  double lipschitz() const { return op.lipschitz(); }
};

// Checks that operator, set and reference solution agree in dimension and
// that the reference solution (if any) is feasible.
VIProblem make_problem(MonotoneOperator op, FeasibleSet set,
                       std::optional<Point> reference_solution = std::nullopt);

// The game over the simplex product with operator (A y, -A^T x).
VIProblem make_game_problem(const Matrix& a, double lipschitz);

}  // namespace fogda

#endif  // FOGDA_PROBLEM_HPP_
