"""Phase-relaxation heuristic for spin-QUBO problems, with a linear baseline,
an exhaustive oracle and a statevector cross-check."""

__version__ = "0.1.0"
