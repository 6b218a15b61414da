"""Versioned JSON run records."""

from __future__ import annotations

import json
import math

import numpy as np

from . import __version__
from .instances import instance_hash
from .optimizer import SolveReport
from .qubo_core import SpinQuboInstance

RECORD_VERSION = 1


def _clean(x):
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def run_record(
    instance: SpinQuboInstance, report: SolveReport, include_timing: bool = False
) -> dict:
    """Structured record of a solve.

    Wall time is left out unless ``include_timing`` is set, so that repeated
    runs with the same seed serialize to identical bytes.
    """
    rec = {
        "record_version": RECORD_VERSION,
        "artifact_version": __version__,
        "instance": {"name": instance.name, "n": instance.n, "sha256": instance_hash(instance)},
        "method": report.method,
        "seed": report.config.get("seed"),
        "config": report.config,
        "best_energy": report.best_energy,
        "best_cost": report.best_cost,
        "best_assignment": report.best_assignment,
        "best_restart": report.best_restart,
        "saturation": report.saturation,
        "restart_energies": report.restart_energies,
        "restart_costs": report.restart_costs,
        "iterations_used": report.iterations_used,
        "failed_restarts": report.failed_restarts,
    }
    if include_timing:
        rec["wall_time_s"] = report.elapsed
    return _clean(rec)


def brute_record(instance: SpinQuboInstance, s, e: float, elapsed: float | None = None) -> dict:
    rec = {
        "record_version": RECORD_VERSION,
        "artifact_version": __version__,
        "instance": {"name": instance.name, "n": instance.n, "sha256": instance_hash(instance)},
        "method": "brute",
        "seed": None,
        "config": {},
        "best_energy": e,
        "best_assignment": s,
    }
    if elapsed is not None:
        rec["wall_time_s"] = elapsed
    return _clean(rec)


def dumps(record: dict) -> str:
    return json.dumps(_clean(record), indent=2, sort_keys=True) + "\n"
