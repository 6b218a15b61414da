import itertools

import numpy as np
import pytest

from phasequbo.qubo_core import SpinQuboInstance


def random_symmetric(rng, n, diag=True, density=1.0):
    q = rng.uniform(-1.0, 1.0, size=(n, n))
    q = (q + q.T) / 2
    if density < 1.0:
        mask = np.triu(rng.random((n, n)) < density, 1)
        mask = mask | mask.T | np.eye(n, dtype=bool)
        q = np.where(mask, q, 0.0)
    if not diag:
        np.fill_diagonal(q, 0.0)
    return q


def random_instance(rng, n, diag=True, density=1.0):
    return SpinQuboInstance.from_dense(random_symmetric(rng, n, diag, density))


def enumerate_energies(q):
    """Independent oracle: plain double loop over every spin vector."""
    q = np.asarray(q, dtype=float)
    n = q.shape[0]
    out = {}
    for s in itertools.product((-1, 1), repeat=n):
        out[s] = -0.5 * sum(s[i] * q[i, j] * s[j] for i in range(n) for j in range(n))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def pair_instance():
    return SpinQuboInstance.from_dense([[0.0, 1.0], [1.0, 0.0]])


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
