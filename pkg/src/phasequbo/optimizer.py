"""Perturbed gradient descent with random restarts over the phase parameters."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import phase_relax
from .phase_relax import PhaseProfile
from .qubo_core import SpinQuboInstance, energy

log = logging.getLogger(__name__)

_NOISE_BLOCK = 256


class NumericalFailure(RuntimeError):
    """Non-finite cost or gradient during descent."""

    def __init__(self, message: str, iteration: int, restart: int | None = None):
        super().__init__(message)
        self.iteration = iteration
        self.restart = restart


@dataclass(frozen=True)
class OptimizerConfig:
    """Hyperparameters of the perturbed descent.

    ``init_half_width=None`` picks the profile's high-slope default.
    Step size and noise scale shrink geometrically every iteration.
    """

    step_size: float = 0.1
    step_decay: float = 0.999
    noise_sigma: float = 0.5
    noise_decay: float = 0.995
    max_iters: int = 2000
    restarts: int = 16
    init_half_width: float | None = None
    grad_tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if not self.step_size > 0:
            raise ValueError("step_size must be positive")
        for name in ("step_decay", "noise_decay"):
            val = getattr(self, name)
            if not 0 < val <= 1:
                raise ValueError(f"{name} must lie in (0, 1], got {val}")
        if self.noise_sigma < 0 or self.grad_tol < 0:
            raise ValueError("noise_sigma and grad_tol must be non-negative")
        if self.max_iters < 1 or self.restarts < 1:
            raise ValueError("max_iters and restarts must be >= 1")
        if self.init_half_width is not None and not self.init_half_width > 0:
            raise ValueError("init_half_width must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Trace:
    """Per-iteration record of one descent."""

    cost: list[float] = field(default_factory=list)
    grad_inf: list[float] = field(default_factory=list)
    saturation: list[float] = field(default_factory=list)

    def __len__(self):
        return len(self.cost)


@dataclass
class SolveReport:
    """Outcome of a multi-restart solve.

    ``best_theta`` holds the phase parameters for the phase solver and the
    continuous box point for the linear baseline. ``restart_energies`` uses
    ``nan`` for restarts that failed numerically.
    """

    method: str
    best_assignment: np.ndarray
    best_energy: float
    best_cost: float
    best_theta: np.ndarray
    saturation: float
    best_restart: int
    iterations_used: list[int]
    restart_energies: list[float]
    restart_costs: list[float]
    failed_restarts: list[int]
    elapsed: float
    config: dict


def restart_rng(seed: int, restart_index: int) -> np.random.Generator:
    """Independent stream per restart, fixed by ``(seed, restart_index)`` alone."""
    return np.random.default_rng(np.random.SeedSequence([seed, restart_index]))


def descend(
    instance: SpinQuboInstance,
    profile: PhaseProfile,
    theta0,
    config: OptimizerConfig,
    rng: np.random.Generator,
) -> tuple[np.ndarray, Trace]:
    """Run one perturbed gradient descent from ``theta0``.

    Each iteration records the cost, sup-norm of the gradient and saturation
    at the current point, then takes ``theta - step * grad + noise`` with
    ``noise ~ N(0, sigma^2 I)``. Stops after ``max_iters`` or once both the
    gradient sup-norm and ``sigma`` fall below ``grad_tol``.
    """
    theta = np.array(theta0, dtype=np.float64)
    if theta.shape != (instance.n,):
        raise ValueError(f"theta0 must have shape ({instance.n},), got {theta.shape}")
    step, sigma = config.step_size, config.noise_sigma
    trace = Trace()
    n = instance.n
    noise = np.empty((0, n))
    for it in range(config.max_iters):
        with np.errstate(over="ignore", invalid="ignore"):
            c, g, r = phase_relax._cost_and_gradient(instance, theta, profile)
        g_inf = float(np.abs(g).max(initial=0.0))
        if not (math.isfinite(c) and math.isfinite(g_inf)):
            raise NumericalFailure(f"non-finite cost or gradient at iteration {it}", it)
        trace.cost.append(c)
        trace.grad_inf.append(g_inf)
        trace.saturation.append(float(np.abs(r - 0.5).sum()) * 2.0 / n)
        if g_inf < config.grad_tol and sigma < config.grad_tol:
            break
        with np.errstate(over="ignore", invalid="ignore"):
            theta = theta - step * g
        if sigma > 0:
            # block draws consume the stream exactly like per-iteration draws
            k = it % _NOISE_BLOCK
            if k == 0:
                noise = rng.standard_normal((min(_NOISE_BLOCK, config.max_iters - it), instance.n))
            theta = theta + sigma * noise[k]
        if not np.isfinite(theta).all():
            raise NumericalFailure(f"non-finite parameters after iteration {it}", it)
        step *= config.step_decay
        sigma *= config.noise_decay
    return theta, trace


def _select(energies: list[float]) -> int:
    """Index of the lowest energy, earliest restart on ties; -1 if all failed."""
    best = -1
    for k, e in enumerate(energies):
        if np.isnan(e):
            continue
        if best < 0 or e < energies[best]:
            best = k
    return best


def solve(
    instance: SpinQuboInstance,
    profile: PhaseProfile | None = None,
    config: OptimizerConfig | None = None,
) -> SolveReport:
    """Multi-restart phase relaxation, selecting by decoded discrete energy."""
    profile = profile or phase_relax.ClampedLinear()
    config = config or OptimizerConfig()
    width = config.init_half_width or profile.default_init_half_width()
    t0 = time.perf_counter()

    thetas, energies, costs, iters, failed = [], [], [], [], []
    for k in range(config.restarts):
        rng = restart_rng(config.seed, k)
        theta0 = rng.uniform(-width, width, size=instance.n)
        try:
            theta, trace = descend(instance, profile, theta0, config, rng)
        except NumericalFailure as exc:
            exc.restart = k
            log.warning("restart %d failed: %s", k, exc)
            failed.append(k)
            thetas.append(None)
            energies.append(float("nan"))
            costs.append(float("nan"))
            iters.append(exc.iteration)
            continue
        thetas.append(theta)
        energies.append(energy(instance, phase_relax.decode(theta, profile)))
        costs.append(phase_relax.cost(instance, theta, profile))
        iters.append(len(trace))

    best = _select(energies)
    if best < 0:
        raise NumericalFailure("all restarts failed", iters[-1] if iters else 0)
    theta = thetas[best]
    return SolveReport(
        method="phase",
        best_assignment=phase_relax.decode(theta, profile),
        best_energy=energies[best],
        best_cost=costs[best],
        best_theta=theta,
        saturation=phase_relax.saturation(theta, profile),
        best_restart=best,
        iterations_used=iters,
        restart_energies=energies,
        restart_costs=costs,
        failed_restarts=failed,
        elapsed=time.perf_counter() - t0,
        config={"profile": profile.spec(), "init_half_width_used": width, **config.to_dict()},
    )
