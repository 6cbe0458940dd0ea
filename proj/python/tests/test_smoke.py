import math

import numpy as np
import pytest

import qolct


def general_plan(grid):
    A1 = qolct.OffsetParams(1, 1, 1, 2, tau=0.3, eta=-0.2)
    A2 = qolct.OffsetParams(0.5, 1.5, -0.5, 0.5, tau=-0.6, eta=0.4)
    return qolct.Plan(A1, A2, lam=[1, 2, -2], mu=[0, 0, 3], grid=grid)


def test_forward_matches_direct():
    grid = qolct.Grid.centered(16, 4.0)
    plan = general_plan(grid)
    f = np.random.default_rng(3).uniform(-1, 1, size=(16, 16, 4))
    assert np.max(np.abs(qolct.forward(f, plan) - qolct.direct(f, plan))) < 1e-9


def test_plancherel_and_inversion():
    grid = qolct.Grid.centered(128, 16.0)
    plan = general_plan(grid)
    f = qolct.gaussian(grid, 0.75, 0.6, beta=[0.8, -0.6, 0.3, 1.1], lam=plan.lam, mu=plan.mu, gamma=0.4)
    assert qolct.quartet_norm(f, plan) / qolct.l2_norm(f, grid) == pytest.approx(1.0, abs=1e-6)
    back = qolct.inverse(qolct.forward(f, plan), plan)
    assert np.linalg.norm(back - f) / np.linalg.norm(f) < 1e-7


def test_closed_form():
    grid = qolct.Grid.centered(256, 16.0)
    plan = general_plan(grid)
    f = qolct.gaussian(grid, 1.0, 0.5, beta=[0.8, -0.6, 0.3, 1.1], lam=plan.lam, mu=plan.mu)
    exact = qolct.gaussian_closed_form(plan, 1.0, 0.5, beta=[0.8, -0.6, 0.3, 1.1])
    assert np.max(np.abs(qolct.forward(f, plan) - exact)) / np.max(np.abs(exact)) < 1e-6


def test_qft_plancherel_factor():
    grid = qolct.Grid.centered(128, 16.0)
    f = qolct.gaussian(grid)
    spectrum, sgrid = qolct.qft(f, grid)
    ratio = (qolct.l2_norm(spectrum, sgrid) / qolct.l2_norm(f, grid)) ** 2
    assert ratio / (4 * math.pi**2) == pytest.approx(1.0, abs=1e-6)


def test_uncertainty():
    grid = qolct.Grid.centered(256, 16.0)
    plan = qolct.Plan(qolct.OffsetParams.qft_case(), qolct.OffsetParams.qft_case(), grid=grid)
    f = qolct.gaussian(grid)
    assert qolct.log_up_constant() == pytest.approx(-np.euler_gamma - math.log(2), abs=1e-12)
    zero = qolct.pitt(f, plan, 0.0)
    assert abs(zero["slack"]) <= 1e-6 * zero["rhs"]
    assert qolct.log_up(f, plan)["slack"] >= 0
    h = qolct.heisenberg(f, plan, 1)
    assert abs(h["gap"]) <= 1e-2 * h["rhs"]


def test_signal_file_round_trip(tmp_path):
    grid = qolct.Grid(6, 5, 0.25, -0.5, 0.3, 0.4)
    f = np.random.default_rng(5).normal(size=(6, 5, 4))
    path = tmp_path / "s.qsig"
    qolct.write_signal(str(path), f, grid)
    assert path.stat().st_size == 46 + 32 * 30
    g, back_grid = qolct.read_signal(str(path))
    assert back_grid == grid
    assert np.array_equal(g, f)


def test_verify_algebra_and_errors():
    report = qolct.verify("algebra", 1)
    assert report and all(c["pass"] for c in report)
    with pytest.raises(ValueError):
        qolct.OffsetParams(1, 1, 1, 1)
    with pytest.raises(ValueError):
        qolct.verify("nonsense")
    with pytest.raises(ValueError):
        qolct.forward(np.zeros((3, 3, 4)), general_plan(qolct.Grid.centered(16, 4.0)))
