"""Spin-QUBO instances, discrete energy, binary conversion and an exhaustive oracle.

The objective over spins ``s in {-1, +1}^n`` is

    E(s) = -1/2 * sum_{i,j} s_i Q_ij s_j

with ``Q`` symmetric. Instances keep the upper triangle as sorted coordinate
triples; the dense matrix is built on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

BRUTE_FORCE_CAP = 24
_CHUNK_BITS = 16


class CapacityError(ValueError):
    """Raised when an instance is too large for an exhaustive/dense routine."""


@dataclass(frozen=True, eq=False)
class SpinQuboInstance:
    """Symmetric spin-QUBO coefficient matrix in canonical coordinate form.

    Parameters
    ----------
    n : int
        Number of spin variables.
    rows, cols, vals : np.ndarray
        Upper-triangle triples (``rows <= cols``), sorted by ``(row, col)``,
        duplicates already summed. Use :meth:`from_triples` or
        :meth:`from_dense` rather than building these by hand.
    name : str, optional
        Free-form label carried into reports.
    """

    n: int
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray
    name: str | None = None
    _dense: np.ndarray | None = field(default=None, repr=False, compare=False)
    _split: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if int(self.n) < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not (len(self.rows) == len(self.cols) == len(self.vals)):
            raise ValueError("rows, cols and vals must have equal length")
        if len(self.rows):
            if self.rows.min() < 0 or self.cols.max() >= self.n:
                raise IndexError(f"index out of range [0, {self.n})")
            if np.any(self.rows > self.cols):
                raise ValueError("triples must satisfy i <= j")
        if not np.all(np.isfinite(self.vals)):
            raise ValueError("coefficients must be finite")
        for arr in (self.rows, self.cols, self.vals):
            arr.flags.writeable = False

    @classmethod
    def from_triples(
        cls, n: int, triples: Iterable[tuple[int, int, float]], name: str | None = None
    ) -> "SpinQuboInstance":
        """Canonicalize ``(i, j, value)`` triples.

        Pairs are mirrored into the upper triangle and duplicates are summed.
        Entries that sum to exactly zero are kept out of the canonical form.
        """
        acc: dict[tuple[int, int], float] = {}
        for i, j, v in triples:
            i, j = int(i), int(j)
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"index ({i}, {j}) out of range [0, {n})")
            v = float(v)
            if not np.isfinite(v):
                raise ValueError(f"non-finite coefficient at ({i}, {j})")
            key = (i, j) if i <= j else (j, i)
            acc[key] = acc.get(key, 0.0) + v
        keys = sorted(k for k, v in acc.items() if v != 0.0)
        rows = np.array([k[0] for k in keys], dtype=np.int64)
        cols = np.array([k[1] for k in keys], dtype=np.int64)
        vals = np.array([acc[k] for k in keys], dtype=np.float64)
        return cls(int(n), rows, cols, vals, name)

    @classmethod
    def from_dense(cls, q, name: str | None = None, atol: float = 0.0) -> "SpinQuboInstance":
        """Build from a dense symmetric matrix (asymmetry beyond ``atol`` is an error)."""
        q = np.asarray(q, dtype=np.float64)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {q.shape}")
        if not np.all(np.isfinite(q)):
            raise ValueError("coefficients must be finite")
        if np.max(np.abs(q - q.T), initial=0.0) > atol:
            raise ValueError("matrix is not symmetric")
        rows, cols = np.nonzero(np.triu(q))
        return cls(q.shape[0], rows.astype(np.int64), cols.astype(np.int64),
                   q[rows, cols].copy(), name)

    @property
    def nnz(self) -> int:
        return len(self.vals)

    @property
    def triples(self) -> list[tuple[int, int, float]]:
        return [(int(i), int(j), float(v)) for i, j, v in zip(self.rows, self.cols, self.vals)]

    def dense(self) -> np.ndarray:
        """Full symmetric ``n x n`` matrix (read-only, cached)."""
        if self._dense is None:
            q = np.zeros((self.n, self.n))
            q[self.rows, self.cols] = self.vals
            q[self.cols, self.rows] = self.vals
            q.flags.writeable = False
            object.__setattr__(self, "_dense", q)
        return self._dense

    def split(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Return ``(i, j, v)`` of strictly off-diagonal triples and the diagonal vector."""
        if self._split is None:
            off = self.rows != self.cols
            diag = np.zeros(self.n)
            diag[self.rows[~off]] = self.vals[~off]
            parts = (self.rows[off], self.cols[off], self.vals[off], diag)
            for arr in parts:
                arr.flags.writeable = False
            object.__setattr__(self, "_split", parts)
        return self._split

    def same_as(self, other: "SpinQuboInstance") -> bool:
        """Semantic equality on the canonical triples."""
        return (
            self.n == other.n
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
            and np.array_equal(self.vals, other.vals)
        )


@dataclass(frozen=True)
class BinaryQubo:
    """Quadratic form ``x^T A x`` over ``x in {0,1}^n``; diagonal holds linear terms."""

    a: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("coefficients must be finite")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not symmetric")
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=np.float64)
        return float(x @ self.a @ x)


def as_spins(s, n: int | None = None) -> np.ndarray:
    """Validate and return a spin vector as ``int8``."""
    arr = np.asarray(s)
    if arr.ndim != 1:
        raise ValueError("spin assignment must be one-dimensional")
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"expected {n} spins, got {arr.shape[0]}")
    if not np.all((arr == 1) | (arr == -1)):
        raise ValueError("spin entries must be -1 or +1")
    return arr.astype(np.int8)


def energy(instance: SpinQuboInstance, s) -> float:
    """Discrete objective ``-1/2 s^T Q s`` (diagonal included)."""
    s = as_spins(s, instance.n).astype(np.float64)
    i, j, v, diag = instance.split()
    return -(float(np.dot(v, s[i] * s[j])) + 0.5 * float(diag.sum()))


def energy_dense(instance: SpinQuboInstance, s) -> float:
    """Same value as :func:`energy`, evaluated through the dense matrix."""
    s = as_spins(s, instance.n).astype(np.float64)
    return -0.5 * float(s @ instance.dense() @ s)


def global_flip(s) -> np.ndarray:
    return -as_spins(s)


def from_binary(binary: BinaryQubo) -> tuple[SpinQuboInstance, float]:
    """Rewrite ``x^T A x`` as a spin-QUBO plus a constant.

    Substituting ``x = (s + 1) / 2`` produces couplings ``-A_ij / 2`` and
    linear fields ``h_i = (row sum of A)_i / 2``. Linear fields are carried by
    an extra spin (index ``n``) coupled with ``-h_i``; with that spin fixed to
    +1 the energy reproduces the binary objective up to ``offset``. The extra
    spin is only added when some field is nonzero.

    Returns
    -------
    instance, offset
        ``x^T A x == energy(instance, embed(x, instance.n)) + offset``.
    """
    a = binary.a
    n = binary.n
    off = a - np.diag(np.diag(a))
    h = a.sum(axis=1) / 2.0
    offset = off.sum() / 4.0 + np.trace(a) / 2.0
    triples = [(i, j, -off[i, j] / 2.0) for i in range(n) for j in range(i + 1, n)]
    if np.any(h != 0.0):
        triples += [(i, n, -h[i]) for i in range(n)]
        size = n + 1
    else:
        size = n
    return SpinQuboInstance.from_triples(size, triples), float(offset)


def embed(x, n_spins: int) -> np.ndarray:
    """Map binary ``x`` to spins; pads with the auxiliary +1 spin when needed."""
    x = np.asarray(x)
    if not np.all((x == 0) | (x == 1)):
        raise ValueError("binary entries must be 0 or 1")
    s = 2 * x.astype(np.int8) - 1
    if n_spins == len(s) + 1:
        s = np.append(s, np.int8(1))
    elif n_spins != len(s):
        raise ValueError(f"cannot embed {len(s)} binaries into {n_spins} spins")
    return s.astype(np.int8)


def gauge_fix(s, index: int = -1) -> np.ndarray:
    """Flip ``s`` globally if needed so that ``s[index] == +1``."""
    s = as_spins(s)
    return s if s[index] == 1 else -s


def index_to_spins(k, n: int) -> np.ndarray:
    """Spin vectors for enumeration indices ``k``; bit ``n-1-i`` set means ``s_i = +1``.

    Index order coincides with lexicographic order under ``-1 < +1``.
    """
    k = np.atleast_1d(np.asarray(k, dtype=np.int64))
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (k[:, None] >> shifts) & 1
    return (2 * bits - 1).astype(np.int8)


def brute_force_solve(
    instance: SpinQuboInstance, cap: int = BRUTE_FORCE_CAP
) -> tuple[np.ndarray, float]:
    """Exhaustive global minimum.

    Ties go to the lexicographically smallest assignment with ``-1`` before
    ``+1``. Raises :class:`CapacityError` when ``instance.n > cap``.
    """
    n = instance.n
    if n > cap:
        raise CapacityError(f"brute force is capped at n <= {cap}, got n = {n}")
    q = np.array(instance.dense())
    total = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)
    best_k, best_e = -1, np.inf
    for start in range(0, total, chunk):
        spins = index_to_spins(np.arange(start, min(start + chunk, total)), n).astype(np.float64)
        e = -0.5 * np.einsum("ki,ki->k", spins @ q, spins)
        k = int(np.argmin(e))
        if e[k] < best_e:
            best_k, best_e = start + k, e[k]
    s = index_to_spins(best_k, n)[0]
    return s, energy(instance, s)


def all_energies(instance: SpinQuboInstance) -> np.ndarray:
    """Energy of every assignment in enumeration order (small ``n`` only)."""
    n = instance.n
    if n > 16:
        raise CapacityError(f"all_energies is capped at n <= 16, got n = {n}")
    spins = index_to_spins(np.arange(1 << n), n).astype(np.float64)
    return -0.5 * np.einsum("ki,ki->k", spins @ instance.dense(), spins)
