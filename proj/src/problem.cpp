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

#include "fogda/problem.hpp"

#include <utility>

namespace fogda {

VIProblem make_problem(MonotoneOperator op, FeasibleSet set,
                       std::optional<Point> reference_solution) {
  if (op.dim() != set.dim()) {
    throw DimensionError("problem: operator acts on R^" +
                         std::to_string(op.dim()) + " but the set lives in R^" +
                         std::to_string(set.dim()));
  }
  if (reference_solution) {
    if (reference_solution->size() != op.dim()) {
      throw DimensionError("problem: reference solution has wrong dimension");
    }
    if (!set.contains(*reference_solution)) {
      throw ConfigError("problem: reference solution is not feasible");
    }
  }
  return VIProblem{std::move(op), std::move(set), std::move(reference_solution),
                   std::nullopt};
}

VIProblem make_game_problem(const Matrix& a, double lipschitz) {
  VIProblem problem = make_problem(
      make_game_operator(a, lipschitz),
      FeasibleSet::product({FeasibleSet::simplex(a.rows()),
                            FeasibleSet::simplex(a.cols())}));
  problem.payoff = a;
  return problem;
}

}  // namespace fogda
