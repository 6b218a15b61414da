"""Instance files, random generators and the MaxCut mapping.

File format (0-based indices, ``i <= j``, duplicates summed)::

    # optional comments
    squbo <n> <m>
    <i> <j> <value>     (m lines)
"""

from __future__ import annotations

import hashlib
import math
import os
from pathlib import Path
from typing import Iterable

import numpy as np

from .qubo_core import SpinQuboInstance


class InstanceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, path=None):
        where = f"{path}:" if path is not None else ""
        where += f"{line}: " if line is not None else (": " if where else "")
        super().__init__(where + message)
        self.line = line
        self.path = path


def parse_instance(text: str, name: str | None = None, path=None) -> SpinQuboInstance:
    header = None
    triples = []
    expected = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "squbo":
                raise InstanceFormatError("expected header 'squbo <n> <m>'", lineno, path)
            try:
                n, expected = int(parts[1]), int(parts[2])
            except ValueError:
                raise InstanceFormatError("header sizes must be integers", lineno, path) from None
            if n < 1 or expected < 0:
                raise InstanceFormatError("need n >= 1 and m >= 0", lineno, path)
            header = n
            continue
        if len(parts) != 3:
            raise InstanceFormatError("expected '<i> <j> <value>'", lineno, path)
        try:
            i, j, v = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise InstanceFormatError(f"cannot parse {line!r}", lineno, path) from None
        if not (0 <= i < header and 0 <= j < header):
            raise InstanceFormatError(
                f"index ({i}, {j}) out of range [0, {header})", lineno, path)
        if i > j:
            raise InstanceFormatError(f"entry ({i}, {j}) must have i <= j", lineno, path)
        if not math.isfinite(v):
            raise InstanceFormatError(f"non-finite value {parts[2]!r}", lineno, path)
        triples.append((i, j, v))
    if header is None:
        raise InstanceFormatError("missing 'squbo' header", None, path)
    if len(triples) != expected:
        raise InstanceFormatError(
            f"header announces {expected} entries, found {len(triples)}", None, path)
    return SpinQuboInstance.from_triples(header, triples, name=name)


def read_instance(path) -> SpinQuboInstance:
    path = Path(path)
    return parse_instance(path.read_text(), name=path.stem, path=path)


def format_instance(instance: SpinQuboInstance) -> str:
    lines = [f"squbo {instance.n} {instance.nnz}"]
    lines += [f"{i} {j} {v!r}" for i, j, v in instance.triples]
    return "\n".join(lines) + "\n"


def write_instance(instance: SpinQuboInstance, path) -> None:
    Path(path).write_text(format_instance(instance))


def instance_hash(instance: SpinQuboInstance) -> str:
    return hashlib.sha256(format_instance(instance).encode()).hexdigest()


def gen_random(
    n: int,
    density: float = 1.0,
    coeff_range: tuple[float, float] = (-1.0, 1.0),
    seed: int = 0,
    name: str | None = None,
) -> SpinQuboInstance:
    """Random couplings on ``i < j``, each present with probability ``density``.

    Values are uniform on ``coeff_range``; the diagonal is zero.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 < density <= 1:
        raise ValueError(f"density must lie in (0, 1], got {density}")
    lo, hi = map(float, coeff_range)
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValueError(f"invalid coefficient range ({lo}, {hi})")
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < density
    vals = rng.uniform(lo, hi, size=rows.size)
    triples = zip(rows[keep], cols[keep], vals[keep])
    return SpinQuboInstance.from_triples(n, triples, name=name)


def maxcut_to_squbo(
    edges: Iterable[tuple], n: int | None = None, name: str | None = None
) -> SpinQuboInstance:
    """Spin-QUBO whose minimum energy is a maximum cut.

    Each edge ``(i, j[, w])`` contributes ``Q_ij = -w`` so that
    ``energy(s) = sum_edges w s_i s_j`` and
    ``cut(s) = (W_total - energy(s)) / 2``.
    """
    triples = []
    top = -1
    for edge in edges:
        i, j = int(edge[0]), int(edge[1])
        w = float(edge[2]) if len(edge) > 2 else 1.0
        if i == j:
            raise ValueError(f"self-loop on node {i}")
        if not math.isfinite(w):
            raise ValueError(f"non-finite weight on edge ({i}, {j})")
        triples.append((i, j, -w))
        top = max(top, i, j)
    size = n if n is not None else top + 1
    if size < 1:
        raise ValueError("graph has no nodes")
    return SpinQuboInstance.from_triples(size, triples, name=name)


def cut_value(edges: Iterable[tuple], s) -> float:
    s = np.asarray(s)
    total = 0.0
    for edge in edges:
        w = float(edge[2]) if len(edge) > 2 else 1.0
        total += w * (1 - s[int(edge[0])] * s[int(edge[1])]) / 2
    return float(total)


def cut_from_energy(edges: Iterable[tuple], e: float) -> float:
    w_total = sum(float(edge[2]) if len(edge) > 2 else 1.0 for edge in edges)
    return (w_total - e) / 2


def list_instances(directory) -> list[Path]:
    """Instance files (``*.squbo``) in a directory, sorted by name."""
    return sorted(Path(directory).glob("*.squbo"), key=lambda p: os.fspath(p.name))
