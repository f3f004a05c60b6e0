# Copyright 2026 The pensim Authors
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

"""Smoke tests for the python bindings: every exported entry point is called
once on a small problem and the returned shapes are checked."""

import math

import pytest

import pensim


def small_config(t_f=5.0, grid=21):
    cfg = pensim.default_config()
    cfg.t_f = t_f
    cfg.grid = grid
    return cfg


def test_code_and_gap():
    code = pensim.build_code("422")
    assert (code.n, code.k, code.d) == (4, 2, 2)
    assert pensim.penalty_gap(code) == pytest.approx(2.0)


def test_default_config_fields():
    cfg = pensim.default_config()
    assert cfg.eta_p == pytest.approx(4.0)
    assert cfg.beta == pytest.approx(1.0)
    assert cfg.t_f == pytest.approx(50.0)
    assert cfg.v == 1
    assert cfg.grid == 201


def test_parse_config_roundtrip():
    cfg = pensim.parse_config('{"eta_p": 2.5, "schedule": {"t_f": 12.0}}')
    assert cfg.eta_p == pytest.approx(2.5)
    assert cfg.t_f == pytest.approx(12.0)


def test_parse_config_rejects_unknown_key():
    with pytest.raises(ValueError, match="kapa"):
        pensim.parse_config('{"bath": {"kapa": 1e-3}}')


def test_spectral_rate_kms():
    beta, omega = 1.3, 0.8
    up = pensim.spectral_rate(beta, 8.0, 1e-3, omega)
    down = pensim.spectral_rate(beta, 8.0, 1e-3, -omega)
    assert down == pytest.approx(math.exp(-beta * omega) * up, rel=1e-12)


def test_run_shapes():
    result = pensim.run(small_config())
    traj = result["trajectory"]
    report = result["report"]
    assert len(traj["t"]) == 21
    assert traj["t"][0] == pytest.approx(0.0)
    assert traj["t"][-1] == pytest.approx(5.0)
    for column in ("p_perp", "rate_total", "coherence_norm", "trace_error"):
        assert len(traj[column]) == 21
    assert report["t_f"] == pytest.approx(5.0)
    assert report["penalty_gap"] == pytest.approx(2.0)
    assert report["bound_value"] >= report["p_perp_measured"] >= 0.0
    assert report["bound_relaxed"] >= report["bound_value"]
    assert max(traj["trace_error"]) < 1e-8


def test_sweep_shapes():
    result = pensim.sweep(small_config(), "t_f", [4.0, 8.0])
    assert [p["value"] for p in result["points"]] == [4.0, 8.0]
    assert result["fit"] is None or "slope" in result["fit"]
    for point in result["points"]:
        assert point["report"]["t_f"] == pytest.approx(point["value"])


def test_verify_battery():
    checks = pensim.verify(small_config())
    assert len(checks) >= 5
    assert all(c["passed"] for c in checks)
    flipped = pensim.verify(small_config(), mutate="kms_sign_flip")
    assert any(not c["passed"] for c in flipped)
