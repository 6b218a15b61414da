"""Dense statevector check of the phase cost against the amplitude-encoded form.

The amplitude-encoded cost is

    C_q(theta) = -2^(N-2) <psi|L|psi>,   psi_i = f(theta_i) / n,
    L = (1/n) sum_k Tr(J_k Q) J_k

over all ``4^N`` Pauli strings ``J_k`` on ``N = ceil(log2 n)`` qubits. With
``L == Q`` this is ``cost / (2n)``; the routines below compute both sides
independently so that the ratio is measured, not assumed. Non-power-of-two
sizes are zero-padded and every ``n`` above means the padded size.
Verification scale only (``n <= 16``).
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from functools import reduce

import numpy as np

from . import phase_relax
from .phase_relax import ClampedLinear, PhaseProfile
from .qubo_core import CapacityError, SpinQuboInstance

QUANTUM_CAP = 16
COEFF_ATOL = 1e-12
IMAG_TOL = 1e-8

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class NumericalFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class PauliTerm:
    label: str
    coeff: float


def num_qubits(n: int) -> int:
    return max(0, int(n - 1).bit_length())


def _check_cap(n: int, cap: int = QUANTUM_CAP):
    if n > cap:
        raise CapacityError(f"dense statevector routines are capped at n <= {cap}, got n = {n}")


def padded_matrix(instance: SpinQuboInstance) -> np.ndarray:
    _check_cap(instance.n)
    size = 1 << num_qubits(instance.n)
    q = np.zeros((size, size))
    q[: instance.n, : instance.n] = instance.dense()
    return q


def pauli_matrix(label: str) -> np.ndarray:
    if not label:
        return np.ones((1, 1), dtype=complex)
    return reduce(np.kron, (PAULI[c] for c in label))


def pauli_decompose(instance: SpinQuboInstance) -> list[PauliTerm]:
    """Nonzero terms ``Tr(J_k Q) / n`` of the padded matrix, in ``IXYZ`` label order."""
    q = padded_matrix(instance)
    size = q.shape[0]
    terms = []
    for letters in itertools.product("IXYZ", repeat=num_qubits(instance.n)):
        label = "".join(letters)
        c = np.trace(pauli_matrix(label) @ q) / size
        if abs(c.imag) > COEFF_ATOL:
            raise NumericalFailure(f"complex coefficient {c} for {label} on a real symmetric Q")
        if abs(c.real) > COEFF_ATOL:
            terms.append(PauliTerm(label, float(c.real)))
    return terms


def assemble(terms: list[PauliTerm], n_qubits: int) -> np.ndarray:
    size = 1 << n_qubits
    out = np.zeros((size, size), dtype=complex)
    for t in terms:
        out += t.coeff * pauli_matrix(t.label)
    return out


def build_state(params, profile: PhaseProfile, n: int) -> np.ndarray:
    """Amplitudes ``f(theta_i) / n_padded`` on the first ``n`` basis states, zeros elsewhere."""
    _check_cap(n)
    theta = np.asarray(params, dtype=np.float64)
    if theta.shape != (n,):
        raise ValueError(f"expected {n} parameters, got shape {theta.shape}")
    size = 1 << num_qubits(n)
    psi = np.zeros(size, dtype=complex)
    psi[:n] = phase_relax.relax(profile, theta).f / size
    return psi


def quantum_cost(
    instance: SpinQuboInstance,
    params,
    profile: PhaseProfile,
    terms: list[PauliTerm] | None = None,
) -> float:
    """``-2^(N-2) <psi|L|psi>`` with ``L`` rebuilt from its Pauli terms."""
    nq = num_qubits(instance.n)
    if terms is None:
        terms = pauli_decompose(instance)
    lop = assemble(terms, nq)
    psi = build_state(params, profile, instance.n)
    val = -(2.0 ** (nq - 2)) * (np.conj(psi) @ lop @ psi)
    if abs(val.imag) > IMAG_TOL:
        raise NumericalFailure(f"expectation value has imaginary part {val.imag:.3e}")
    return float(val.real)


@dataclass
class QuantumCheckReport:
    n: int
    n_padded: int
    n_qubits: int
    trials: int
    term_count: int
    term_bound: int
    within_bound: bool
    reconstruction_error: float
    max_deviation: float | None
    max_ratio_error: float | None

    def to_dict(self) -> dict:
        return asdict(self)

    def passed(self, tol: float = 1e-10) -> bool:
        return (
            self.within_bound
            and self.reconstruction_error <= tol
            and (self.max_deviation is None or self.max_deviation < tol)
        )


def equivalence_report(
    instance: SpinQuboInstance,
    trials: int,
    seed: int = 0,
    profile: PhaseProfile | None = None,
    theta_half_width: float = 2.0,
) -> QuantumCheckReport:
    """Compare ``quantum_cost`` with ``cost / (2 n_padded)`` on random parameters.

    ``max_ratio_error`` is ``max |quantum_cost / cost * 2 n_padded - 1|`` over
    draws where the classical cost is not negligible.
    """
    if trials < 0:
        raise ValueError("trials must be non-negative")
    profile = profile or ClampedLinear()
    nq = num_qubits(instance.n)
    size = 1 << nq
    terms = pauli_decompose(instance)
    recon = np.max(np.abs(assemble(terms, nq) - padded_matrix(instance)), initial=0.0)
    bound = (size * size + size) // 2

    max_dev = max_ratio = None
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        theta = rng.uniform(-theta_half_width, theta_half_width, size=instance.n)
        qc = quantum_cost(instance, theta, profile, terms)
        cc = phase_relax.cost(instance, theta, profile)
        dev = abs(qc - cc / (2 * size))
        max_dev = dev if max_dev is None else max(max_dev, dev)
        if abs(cc) > 1e-9:
            ratio_err = abs(qc / cc * 2 * size - 1.0)
            max_ratio = ratio_err if max_ratio is None else max(max_ratio, ratio_err)
    return QuantumCheckReport(
        n=instance.n,
        n_padded=size,
        n_qubits=nq,
        trials=trials,
        term_count=len(terms),
        term_bound=bound,
        within_bound=len(terms) <= bound,
        reconstruction_error=float(recon),
        max_deviation=max_dev,
        max_ratio_error=max_ratio,
    )
