import math

import numpy as np
import pytest

import ppmhd


def test_problem_ids():
    ids = ppmhd.problem_ids()
    for name in ("smooth_sine", "smooth_vortex", "blast_standard", "jet", "rotated_tube"):
        assert name in ids


def test_state_round_trip():
    u = ppmhd.conserved_from_primitive(1.2, [0.3, -0.1, 0.2], [0.5, 1.0, -0.4], 0.7, 5.0 / 3.0)
    rho, v, b, p = ppmhd.primitive_from_conserved(u, 5.0 / 3.0)
    assert rho == pytest.approx(1.2)
    assert v == pytest.approx([0.3, -0.1, 0.2])
    assert b == pytest.approx([0.5, 1.0, -0.4])
    assert p == pytest.approx(0.7)
    assert ppmhd.is_admissible(u)
    bad = list(u)
    bad[7] = 0.0
    assert not ppmhd.is_admissible(bad)


def test_alpha_exceeds_the_flow_speed():
    u = ppmhd.conserved_from_primitive(1.0, [2.0, 0.0, 0.0], [0.0, 0.0, 0.0], 1.0, 1.4)
    assert ppmhd.pp_viscosity_alpha(u, u, 0, 1.4) >= 2.0


def test_rates_and_schlieren():
    rates = ppmhd.convergence_rates([8.0, 1.0, 0.125])
    assert rates == pytest.approx([3.0, 3.0])
    s = ppmhd.schlieren(np.ones((4, 5)), 0.1, 0.1)
    assert s.shape == (4, 5)
    assert np.all(s == 1.0)


def test_theory_check_is_clean():
    counts = ppmhd.theory_check(seed=3, trials=2000)
    assert len(counts) == 9
    assert all(n == 0 for n in counts.values())
    assert sum(ppmhd.theory_check(seed=3, trials=2000, alpha_factor=0.5).values()) > 0


def test_pressure_probe():
    assert ppmhd.pressure_probe(0.01) == pytest.approx(-2 * (2.0 / 3.0) * 0.01, rel=0.2)


def test_simulation_constant_state_is_steady():
    sim = ppmhd.Simulation("constant", nx=6, ny=6)
    before = sim.averages()
    assert before.shape == (6, 6, 8)
    for _ in range(3):
        rec = sim.step()
        assert 0.0 < rec["theta"] <= 1.0
    assert sim.steps == 3
    np.testing.assert_allclose(sim.averages(), before, rtol=1e-12, atol=1e-12)


def test_simulation_sine_error_is_small():
    sim = ppmhd.Simulation("smooth_sine", nx=10, ny=10)
    records = sim.run(0.02)
    assert records and records[-1]["t"] == pytest.approx(0.02)
    err = sim.errors()
    assert err["rho"]["l1"] < 1e-2
    assert math.isfinite(err["rho"]["linf"])


def test_run_writes_outputs(tmp_path):
    res = ppmhd.run("smooth_vortex", str(tmp_path / "v"), nx=10, ny=10, t_end=0.005)
    assert res["exit_code"] == 0
    assert res["errors"] is not None
    assert (tmp_path / "v" / "report.csv").exists()
    assert any(f.endswith(".vtk") for f in res["files"])


def test_errors_are_exceptions():
    with pytest.raises(ppmhd.Error):
        ppmhd.Simulation("nope")
    with pytest.raises(ppmhd.Error):
        ppmhd.run("constant", "out", degree=7)
