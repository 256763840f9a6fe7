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

import math

import numpy as np
import pytest

import fogda_vi as fv


def simplex_projection_by_bisection(v):
    # Threshold tau with sum(max(v - tau, 0)) = 1.
    lo, hi = v.min() - 1.0, v.max()
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if np.maximum(v - mid, 0.0).sum() > 1.0:
            lo = mid
        else:
            hi = mid
    return np.maximum(v - 0.5 * (lo + hi), 0.0)


def test_algorithm_list():
    names = fv.algorithms()
    assert len(names) == 9
    assert "fogda-vi" in names
    assert fv.calls_per_step("eg") == (2, 2)
    assert fv.calls_per_step("fogda-vi") == (1, 1)


def test_project_simplex_matches_bisection():
    rng = np.random.default_rng(3)
    for _ in range(20):
        v = rng.normal(size=6) * 3
        np.testing.assert_allclose(
            fv.project_simplex(v), simplex_projection_by_bisection(v), atol=1e-12
        )


def test_lipschitz_matches_numpy_svd():
    g = fv.generate_game(7, 4, 11)
    assert g.a.shape == (7, 4)
    assert g.lipschitz == pytest.approx(np.linalg.svd(g.a, compute_uv=False)[0], rel=1e-9)


def test_generate_game_is_deterministic():
    a = fv.generate_game(3, 5, 42).a
    b = fv.generate_game(3, 5, 42).a
    assert np.array_equal(a, b)
    assert ((a >= 0) & (a < 1)).all()


def test_gap_matches_vertex_formula():
    g = fv.generate_game(4, 3, 5)
    z = fv.random_feasible_start(4, 3, 9)
    x, y = z[:4], z[4:]
    expected = (g.a.T @ x).max() - (g.a @ y).min()
    assert fv.game_gap(g.a, x, y) == pytest.approx(expected, abs=1e-14)


def test_identity_game_converges_to_center():
    g = fv.make_instance(np.eye(2))
    start = fv.random_feasible_start(2, 2, 1)
    out = fv.solve_game(g, "fogda-vi", iters=100000, start=start, stop_tol=1e-6,
                        reference=np.full(4, 0.5))
    assert out["status"] == "converged"
    assert out["res"][-1] <= 1e-6
    np.testing.assert_allclose(out["final_iterate"], np.full(4, 0.5), atol=1e-4)


def test_fogda_vi_beats_extragradient_on_random_game():
    g = fv.generate_game(10, 10, 2)
    runs = {a: fv.solve_game(g, a, iters=5000)["res"][-1] for a in ("fogda-vi", "eg")}
    assert runs["fogda-vi"] < runs["eg"]


def test_records_follow_log_cadence():
    out = fv.solve_game(fv.generate_game(3, 3, 1), "eg", iters=1000)
    ks = out["k"]
    on_grid = {int(math.floor(10 ** (j / 12) + 0.5)) for j in range(0, 37)}
    # The starting point is recorded too.
    assert ks == [0] + sorted(on_grid)


def test_gamma_above_bound_is_rejected():
    g = fv.generate_game(3, 3, 1)
    with pytest.raises(ValueError):
        fv.solve_game(g, "fogda-vi", gamma=1.0 / g.lipschitz)


def test_compare_returns_summary_csv():
    g = fv.generate_game(4, 4, 3)
    traces, summary = fv.compare(g, ["eg", "fogda-vi"], iters=200, threads=1)
    assert len(traces) == 2
    lines = summary.strip().splitlines()
    assert len(lines) == 3
    assert lines[0].split(",")[0] == "index"


def test_lambda_range_alpha_four():
    lo, hi = fv.lambda_range(4.0)
    assert lo == pytest.approx(5 / 3, abs=1e-15)
    assert hi == pytest.approx(5 / 2, abs=1e-15)
    assert fv.descent_start(4.0) >= 1


def test_instance_round_trip(tmp_path):
    g = fv.generate_game(3, 2, 8)
    path = str(tmp_path / "g.csv")
    fv.write_instance(path, g)
    h = fv.read_instance(path)
    assert np.array_equal(g.a, h.a)
    assert h.lipschitz == g.lipschitz
    assert math.isfinite(h.lipschitz)
