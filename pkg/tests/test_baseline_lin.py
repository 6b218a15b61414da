import numpy as np
import pytest

from conftest import random_instance
from phasequbo.baseline_lin import (
    LinRelaxConfig,
    box_descent,
    box_objective,
    lin_relax_solve,
    threshold,
)
from phasequbo.instances import gen_random
from phasequbo.qubo_core import SpinQuboInstance, brute_force_solve, energy


def test_threshold_zero_goes_up():
    assert threshold([-0.2, 0.0, 0.7]).tolist() == [-1, 1, 1]


def test_zero_instance():
    rep = lin_relax_solve(SpinQuboInstance.from_triples(4, []))
    assert rep.best_energy == 0.0


def test_pair_reaches_corner(pair_instance):
    rep = lin_relax_solve(pair_instance)
    assert rep.best_energy == brute_force_solve(pair_instance)[1] == -1.0
    assert np.all(np.abs(rep.best_theta) == 1.0)


@pytest.mark.parametrize("kwargs", [dict(step_size=0), dict(max_iters=0), dict(restarts=0)])
def test_invalid_config(kwargs):
    with pytest.raises(ValueError):
        LinRelaxConfig(**kwargs)


def test_iterates_stay_in_box_and_descend():
    rng = np.random.default_rng(2)
    for _ in range(20):
        inst = random_instance(rng, 8, diag=False)
        q = inst.dense()
        s = rng.uniform(-1, 1, 8)
        step = 0.5 / max(np.abs(np.linalg.eigvalsh(q)).max(), 1e-12)
        for _ in range(100):
            s_new = np.clip(s + step * (q @ s), -1, 1)
            assert np.all(np.abs(s_new) <= 1.0)
            assert box_objective(inst, s_new) <= box_objective(inst, s) + 1e-12
            s = s_new
        _, trace, _ = box_descent(inst, rng.uniform(-1, 1, 8), step, 100)
        assert np.all(np.diff(trace) <= 1e-12)


def test_report_fields():
    inst = gen_random(8, seed=5)
    rep = lin_relax_solve(inst, LinRelaxConfig(restarts=4, seed=1))
    assert rep.method == "linear"
    assert rep.best_energy == energy(inst, rep.best_assignment) == min(rep.restart_energies)
    assert np.all(np.abs(rep.best_theta) <= 1.0)
    assert rep.best_cost == box_objective(inst, rep.best_theta)


def test_deterministic():
    inst = gen_random(8, seed=6)
    a = lin_relax_solve(inst, LinRelaxConfig(seed=4))
    b = lin_relax_solve(inst, LinRelaxConfig(seed=4))
    assert a.restart_costs == b.restart_costs


@pytest.mark.parametrize("n", range(2, 13))
def test_relaxation_lower_bounds_optimum(n):
    for k in range(3):
        inst = gen_random(n, density=0.8, seed=700 + 13 * n + k)
        rep = lin_relax_solve(inst)
        assert min(rep.restart_costs) <= brute_force_solve(inst)[1] + 1e-6
