# Copyright 2026 The fogda-vi Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Monotone VI solvers with fOGDA-VI and bilinear game benchmarks."""

from ._core import (
    FormatError,
    GameInstance,
    NumericalError,
    algorithms,
    calls_per_step,
    check_Rk,
    compare,
    descent_start,
    game_gap,
    game_operator,
    game_residual,
    generate_game,
    lambda_range,
    lipschitz_bilinear,
    make_instance,
    presolve_reference,
    project_simplex,
    random_feasible_start,
    read_instance,
    read_trace,
    solve_game,
    step_size_bound,
    uniform_start,
    write_instance,
)

__all__ = [
    "FormatError",
    "GameInstance",
    "NumericalError",
    "algorithms",
    "calls_per_step",
    "check_Rk",
    "compare",
    "descent_start",
    "game_gap",
    "game_operator",
    "game_residual",
    "generate_game",
    "lambda_range",
    "lipschitz_bilinear",
    "make_instance",
    "presolve_reference",
    "project_simplex",
    "random_feasible_start",
    "read_instance",
    "read_trace",
    "solve_game",
    "step_size_bound",
    "uniform_start",
    "write_instance",
]
