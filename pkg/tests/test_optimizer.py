import numpy as np
import pytest

from conftest import random_instance
from phasequbo import optimizer
from phasequbo.instances import gen_random
from phasequbo.optimizer import NumericalFailure, OptimizerConfig, descend, restart_rng, solve
from phasequbo.phase_relax import ClampedLinear, Logistic, cost, decode
from phasequbo.qubo_core import SpinQuboInstance, brute_force_solve, energy


class TestConfig:
    @pytest.mark.parametrize("kwargs", [
        dict(step_size=0), dict(step_decay=0), dict(noise_decay=1.5), dict(noise_sigma=-1),
        dict(max_iters=0), dict(restarts=0), dict(init_half_width=0), dict(seed=-1),
        dict(seed=2**64),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            OptimizerConfig(**kwargs)

    def test_defaults(self):
        c = OptimizerConfig()
        assert (c.step_size, c.step_decay, c.noise_sigma, c.noise_decay) == (0.1, 0.999, 0.5, 0.995)
        assert (c.max_iters, c.restarts, c.grad_tol) == (2000, 16, 1e-6)


class TestDescend:
    def test_constant_cost_leaves_theta(self):
        inst = SpinQuboInstance.from_dense(np.diag([1.0, -2.0, 0.5]))
        theta0 = np.array([0.1, -0.2, 0.3])
        cfg = OptimizerConfig(noise_sigma=0.0, max_iters=1)
        theta, trace = descend(inst, Logistic(), theta0, cfg, restart_rng(0, 0))
        assert np.array_equal(theta, theta0)
        assert len(trace) == 1

    def test_stops_at_tolerance(self):
        inst = SpinQuboInstance.from_dense(np.diag([1.0, 2.0]))
        cfg = OptimizerConfig(noise_sigma=0.0, max_iters=50)
        _, trace = descend(inst, Logistic(), np.zeros(2), cfg, restart_rng(0, 0))
        assert len(trace) == 1

    def test_monotone_without_noise(self, pair_instance):
        p = ClampedLinear(1.0)
        cfg = OptimizerConfig(noise_sigma=0.0, step_decay=1.0, step_size=0.05, max_iters=300)
        theta, trace = descend(pair_instance, p, np.array([0.3, -0.1]), cfg, restart_rng(0, 0))
        assert np.all(np.diff(trace.cost) <= 1e-12)
        assert trace.cost[-1] == pytest.approx(-1.0)
        # aligned phases anywhere are optimal, so the end point need not be a corner
        assert energy(pair_instance, decode(theta, p)) == -1.0

    def test_monotone_random_instances(self):
        rng = np.random.default_rng(4)
        p = ClampedLinear(2.0)
        for _ in range(10):
            inst = random_instance(rng, 6, diag=False)
            cfg = OptimizerConfig(noise_sigma=0.0, step_decay=1.0, step_size=0.01, max_iters=200)
            _, trace = descend(inst, p, rng.uniform(-1, 1, 6), cfg, restart_rng(0, 0))
            assert np.all(np.diff(trace.cost) <= 1e-12)

    def test_deterministic_trace(self):
        inst = gen_random(8, seed=3)
        cfg = OptimizerConfig(max_iters=300)
        a = descend(inst, Logistic(), np.zeros(8), cfg, restart_rng(5, 2))
        b = descend(inst, Logistic(), np.zeros(8), cfg, restart_rng(5, 2))
        assert np.array_equal(a[0], b[0])
        assert a[1] == b[1]

    def test_block_noise_matches_sequential_draws(self):
        # the noise stream must not depend on the internal block size
        inst = gen_random(5, seed=1)
        cfg = OptimizerConfig(max_iters=40)
        ref = descend(inst, Logistic(), np.zeros(5), cfg, restart_rng(1, 0))[0]
        old = optimizer._NOISE_BLOCK
        try:
            optimizer._NOISE_BLOCK = 7
            other = descend(inst, Logistic(), np.zeros(5), cfg, restart_rng(1, 0))[0]
        finally:
            optimizer._NOISE_BLOCK = old
        assert np.array_equal(ref, other)

    def test_numerical_failure(self):
        inst = SpinQuboInstance.from_dense([[0.0, 1e308], [1e308, 0.0]])
        cfg = OptimizerConfig(noise_sigma=0.0, step_size=1e10)
        with pytest.raises(NumericalFailure) as info:
            descend(inst, ClampedLinear(), np.array([0.3, -0.2]), cfg, restart_rng(0, 0))
        assert info.value.iteration >= 0

    def test_shape_check(self, pair_instance):
        with pytest.raises(ValueError):
            descend(pair_instance, Logistic(), np.zeros(3), OptimizerConfig(), restart_rng(0, 0))


class TestSolve:
    def test_zero_instance(self):
        rep = solve(SpinQuboInstance.from_triples(3, []), config=OptimizerConfig(max_iters=20))
        assert rep.best_energy == 0.0

    @pytest.mark.parametrize("profile", [ClampedLinear(1.0), Logistic(4.0)], ids=repr)
    def test_pair_reaches_oracle(self, pair_instance, profile):
        rep = solve(pair_instance, profile)
        assert rep.best_energy == brute_force_solve(pair_instance)[1] == -1.0

    def test_report_invariants(self):
        inst = gen_random(9, seed=8)
        rep = solve(inst, ClampedLinear(), OptimizerConfig(restarts=5, max_iters=400, seed=3))
        assert rep.best_energy == energy(inst, rep.best_assignment)
        assert rep.best_energy == min(rep.restart_energies)
        assert rep.best_restart == rep.restart_energies.index(rep.best_energy)
        assert len(rep.iterations_used) == 5
        assert np.array_equal(decode(rep.best_theta, ClampedLinear()), rep.best_assignment)
        assert rep.best_cost == cost(inst, rep.best_theta, ClampedLinear())
        if rep.saturation > 0.999:
            assert abs(rep.best_cost - rep.best_energy) <= 1e-8
        assert rep.config["seed"] == 3 and rep.config["profile"] == "clamped:1.0"

    def test_deterministic(self):
        inst = gen_random(7, seed=2)
        cfg = OptimizerConfig(restarts=3, max_iters=200, seed=99)
        a, b = solve(inst, Logistic(), cfg), solve(inst, Logistic(), cfg)
        assert a.restart_energies == b.restart_energies
        assert np.array_equal(a.best_theta, b.best_theta)

    def test_restart_streams_do_not_depend_on_count(self):
        # restart k sees the same stream whether 2 or 4 restarts are run
        inst = gen_random(6, seed=4)
        a = solve(inst, config=OptimizerConfig(restarts=2, max_iters=100, seed=1))
        b = solve(inst, config=OptimizerConfig(restarts=4, max_iters=100, seed=1))
        assert a.restart_costs == b.restart_costs[:2]

    def test_tie_goes_to_earliest_restart(self, pair_instance):
        rep = solve(pair_instance, config=OptimizerConfig(restarts=6))
        assert rep.best_restart == 0

    def test_partial_failure_continues(self, monkeypatch, pair_instance):
        real = optimizer.descend
        calls = []

        def flaky(inst, profile, theta0, cfg, rng):
            calls.append(1)
            if len(calls) == 1:
                raise NumericalFailure("boom", 3)
            return real(inst, profile, theta0, cfg, rng)

        monkeypatch.setattr(optimizer, "descend", flaky)
        rep = solve(pair_instance, config=OptimizerConfig(restarts=3, max_iters=200))
        assert rep.failed_restarts == [0]
        assert np.isnan(rep.restart_energies[0])
        assert rep.best_restart in (1, 2) and rep.best_energy == -1.0

    def test_all_fail(self, monkeypatch, pair_instance):
        def broken(*args):
            raise NumericalFailure("boom", 0)

        monkeypatch.setattr(optimizer, "descend", broken)
        with pytest.raises(NumericalFailure, match="all restarts"):
            solve(pair_instance, config=OptimizerConfig(restarts=2))

    def test_random_dense_n10(self):
        hits = 0
        for k in range(20):
            inst = gen_random(10, seed=300 + k)
            rep = solve(inst, ClampedLinear(), OptimizerConfig(restarts=16, seed=k))
            hits += rep.best_energy <= brute_force_solve(inst)[1] + 1e-9
        assert hits >= 18
