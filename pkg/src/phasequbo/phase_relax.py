"""Phase relaxation of spin-QUBO problems.

Each spin becomes a unit-modulus complex number ``f_i = exp(-i pi R(theta_i))``
where ``R`` maps the real line into ``[0, 1]``. The relaxed cost

    C(theta) = -1/2 sum_{i,j} conj(f_i) Q_ij f_j
             = -[ sum_{i<j} Q_ij cos(pi (R_i - R_j)) + 1/2 tr(Q) ]

is real for every ``theta`` and equals the discrete energy whenever every
``R_i`` sits at 0 or 1 (``R = 0`` decodes to ``-1``, ``R = 1`` to ``+1``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .qubo_core import SpinQuboInstance


class PhaseProfile:
    """Map ``theta -> R(theta) in [0, 1]`` together with its derivative.

    Subclasses implement vectorized :meth:`value` and :meth:`derivative`.
    A profile must stay inside ``[0, 1]`` and may only have a vanishing
    derivative where its value is already 0 or 1.
    """

    def value(self, theta):
        raise NotImplementedError

    def derivative(self, theta):
        raise NotImplementedError

    def default_init_half_width(self) -> float:
        """Half-width of the uniform start box, inside the high-slope region."""
        raise NotImplementedError

    def spec(self) -> str:
        """Compact ``kind:param`` string, the inverse of :func:`parse_profile`."""
        raise NotImplementedError

    def kinks(self) -> tuple[float, ...]:
        return ()


@dataclass(frozen=True)
class Logistic(PhaseProfile):
    """Sigmoid ``1 / (1 + exp(-k theta))``; reaches 0 and 1 only asymptotically."""

    k: float = 4.0

    def __post_init__(self):
        if not (self.k > 0 and np.isfinite(self.k)):
            raise ValueError(f"steepness must be positive, got {self.k}")

    def value(self, theta):
        return expit(self.k * np.asarray(theta, dtype=np.float64))

    def derivative(self, theta):
        sig = self.value(theta)
        return self.k * sig * (1.0 - sig)

    def default_init_half_width(self) -> float:
        return 2.0 / self.k

    def spec(self) -> str:
        return f"logistic:{self.k!r}"


@dataclass(frozen=True)
class ClampedLinear(PhaseProfile):
    """Ramp from 0 at ``-a`` to 1 at ``+a``, flat outside.

    At the kinks ``theta = +-a`` the derivative takes the interior value
    ``1 / (2a)``.
    """

    a: float = 1.0

    def __post_init__(self):
        if not (self.a > 0 and np.isfinite(self.a)):
            raise ValueError(f"half-width must be positive, got {self.a}")

    def value(self, theta):
        theta = np.asarray(theta, dtype=np.float64)
        return np.minimum(np.maximum((theta + self.a) / (2.0 * self.a), 0.0), 1.0)

    def derivative(self, theta):
        theta = np.asarray(theta, dtype=np.float64)
        inside = np.abs(theta) <= self.a
        return np.where(inside, 1.0 / (2.0 * self.a), 0.0)

    def default_init_half_width(self) -> float:
        return self.a / 2.0

    def spec(self) -> str:
        return f"clamped:{self.a!r}"

    def kinks(self) -> tuple[float, ...]:
        return (-self.a, self.a)


def parse_profile(text: str) -> PhaseProfile:
    """Parse ``logistic:<k>`` or ``clamped:<a>`` (parameter optional)."""
    kind, _, param = text.strip().partition(":")
    kind = kind.lower()
    try:
        if kind == "logistic":
            return Logistic(float(param)) if param else Logistic()
        if kind == "clamped":
            return ClampedLinear(float(param)) if param else ClampedLinear()
    except ValueError as exc:
        raise ValueError(f"bad profile {text!r}: {exc}") from None
    raise ValueError(f"unknown profile kind {kind!r}; expected 'logistic' or 'clamped'")


def profile_value(profile: PhaseProfile, theta):
    return profile.value(theta)


def profile_derivative(profile: PhaseProfile, theta):
    return profile.derivative(theta)


@dataclass(frozen=True)
class RelaxedState:
    """Profile values and the real/imaginary parts of the unit phases."""

    r: np.ndarray
    f_re: np.ndarray
    f_im: np.ndarray

    @property
    def f(self) -> np.ndarray:
        return self.f_re + 1j * self.f_im


def _as_theta(params, n: int | None = None) -> np.ndarray:
    theta = np.asarray(params, dtype=np.float64)
    if theta.ndim != 1:
        raise ValueError("theta must be one-dimensional")
    if n is not None and theta.shape[0] != n:
        raise ValueError(f"expected {n} parameters, got {theta.shape[0]}")
    if not np.all(np.isfinite(theta)):
        raise ValueError("theta must be finite")
    return theta


def relax(profile: PhaseProfile, params) -> RelaxedState:
    r = profile.value(_as_theta(params))
    return RelaxedState(r=r, f_re=np.cos(np.pi * r), f_im=-np.sin(np.pi * r))


def _cost_and_gradient(instance: SpinQuboInstance, theta: np.ndarray, profile: PhaseProfile):
    r = profile.value(theta)
    i, j, v, diag = instance.split()
    diff = np.pi * (r[i] - r[j])
    c = -(float(np.dot(v, np.cos(diff))) + 0.5 * float(diag.sum()))
    pair = v * np.sin(diff)
    n = instance.n
    acc = np.bincount(i, weights=pair, minlength=n) - np.bincount(j, weights=pair, minlength=n)
    return c, np.pi * profile.derivative(theta) * acc, r


def cost(instance: SpinQuboInstance, params, profile: PhaseProfile) -> float:
    """Cosine-coupled relaxed cost; ``O(nnz)``."""
    r = profile.value(_as_theta(params, instance.n))
    i, j, v, diag = instance.split()
    return -(float(np.dot(v, np.cos(np.pi * (r[i] - r[j])))) + 0.5 * float(diag.sum()))


def bilinear_cost(instance: SpinQuboInstance, params, profile: PhaseProfile) -> complex:
    """``-1/2 f^H Q f`` in complex arithmetic through the dense matrix.

    Independent of :func:`cost`; the imaginary part should vanish.
    """
    state = relax(profile, _as_theta(params, instance.n))
    f = state.f
    return complex(-0.5 * (np.conj(f) @ (instance.dense() @ f)))


def gradient(instance: SpinQuboInstance, params, profile: PhaseProfile) -> np.ndarray:
    """Analytic gradient of :func:`cost` with respect to ``theta``.

    Component ``k`` is ``pi R'(theta_k) sum_{j != k} Q_kj sin(pi (R_k - R_j))``.
    """
    return _cost_and_gradient(instance, _as_theta(params, instance.n), profile)[1]


def cost_and_gradient(instance: SpinQuboInstance, params, profile: PhaseProfile):
    """``(cost, gradient)`` sharing one pass over the couplings."""
    c, g, _ = _cost_and_gradient(instance, _as_theta(params, instance.n), profile)
    return c, g


def decode(params, profile: PhaseProfile) -> np.ndarray:
    """Spins from phases: ``R < 0.5`` gives ``-1``, otherwise ``+1``."""
    r = profile.value(_as_theta(params))
    return np.where(r < 0.5, -1, 1).astype(np.int8)


def saturation(params, profile: PhaseProfile) -> float:
    """Mean of ``2 |R - 1/2|``: 1 at corners, 0 when every phase sits mid-way."""
    r = profile.value(_as_theta(params))
    if r.size == 0:
        return 1.0
    return float(np.mean(2.0 * np.abs(r - 0.5)))


def corner_theta(s, profile: ClampedLinear, margin: float = 1.0) -> np.ndarray:
    """Parameters whose clamped profile values are exactly the corner encoding ``s``."""
    s = np.asarray(s, dtype=np.float64)
    return s * (profile.a + margin)
