# Copyright 2026 The CAFE Simulator Authors
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

import json
import math

import numpy as np
import pytest

import cafe_sim


def test_gates():
    assert np.allclose(cafe_sim.fsim(), np.diag([1, 1, 1, -1]))
    assert np.allclose(cafe_sim.fsim_delta(0.1, 0.2, 0.3), cafe_sim.fsim(theta=0.1, gamma=0.2, phi=0.3))
    assert np.allclose(cafe_sim.x_delta(0.0), [[0, -1j], [-1j, 0]])


def test_models():
    assert cafe_sim.model_cz(1, p_depol=0.04) == pytest.approx(0.97, abs=1e-15)
    assert cafe_sim.model_cz(1, dphi=0.1) == pytest.approx(0.25 + (10 + 6 * math.cos(0.1) - 1) / 20, abs=1e-15)
    assert cafe_sim.model_1q(1, 0.0, 0.02, 0.0) == pytest.approx(0.99, abs=1e-15)


def test_avg_gate_fidelity():
    cz = cafe_sim.cz()
    assert cafe_sim.avg_gate_fidelity(np.eye(4), cz) == pytest.approx(0.4)
    assert cafe_sim.avg_gate_fidelity(cz, cz, p_depol=0.01) == pytest.approx(0.25 + 0.75 * 0.99)


def test_simulate_matches_closed_form():
    u = cafe_sim.fsim_delta(0.02, 0.01, 0.03)
    data = cafe_sim.simulate(u, shots=None, p_depol=0.005)
    for n, f in zip(data["n"], data["f_hat"]):
        assert f == pytest.approx(cafe_sim.model_cz(n, 0.02, 0.01, 0.03, 0.005), abs=1e-9)
    assert data["sigma"] == [0.0] * 5


def test_simulate_is_seeded():
    u = cafe_sim.fsim_delta(0.02, 0.01, 0.03)
    a = cafe_sim.simulate(u, seed=4, p_depol=0.01)
    b = cafe_sim.simulate(u, seed=4, p_depol=0.01)
    assert a == b


def test_decaf_cancels_phase():
    data = cafe_sim.simulate(cafe_sim.fsim(gamma=0.05), shots=None, decaf=True)
    assert max(1 - f for f in data["f_hat"]) < 1e-12


def test_fit_and_budget():
    depths = [0, 2, 4, 6, 8]
    f = [cafe_sim.model_cz(n, 0.02, 0.01, 0.03, 0.005, 0.002) for n in depths]
    r = cafe_sim.fit(depths, f)
    assert r["converged"]
    assert r["params"]["p_depol"] == pytest.approx(0.005, abs=1e-6)
    b = cafe_sim.budget(depths, [cafe_sim.model_cz(n, p_depol=0.01) for n in depths])
    assert b["total_infidelity"] == pytest.approx(0.0075, abs=1e-9)
    with pytest.raises(ValueError):
        cafe_sim.fit([0, 2], [1.0, 1.0])


def test_prep_state():
    bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
    r = cafe_sim.prep_state(bell)
    assert r["entanglers"] == 1
    assert r["alpha"] == pytest.approx(math.pi / 2)
    out = np.asarray(r["unitary"]) @ np.array([1, 0, 0, 0])
    assert abs(np.vdot(bell, out)) ** 2 == pytest.approx(1.0, abs=1e-10)


def test_design_and_cliffords():
    assert cafe_sim.verify_2design(1) < 1e-12
    assert cafe_sim.verify_2design(2) < 1e-8
    assert cafe_sim.NUM_CLIFFORDS_2Q == 11520
    assert cafe_sim.clifford_index(cafe_sim.clifford_element(1234)) == 1234


def test_cli(tmp_path):
    code, out, err = cafe_sim.run_cli(["run", "--exact", "--out", str(tmp_path)])
    assert code == 0, err
    assert "run:" in out
    assert (tmp_path / "dataset.csv").read_text().startswith("# cafe run")
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"unknown": 1}))
    code, _, err = cafe_sim.run_cli(["run", "--config", str(cfg)])
    assert code == 2
    assert "unknown" in err
