"""
The amplitude-encoded cost is the phase cost, rescaled
======================================================

Build the Pauli expansion of Q, the N-qubit state with amplitudes f(theta_i)/n,
and compare -2^(N-2) <psi|L|psi> with the cosine-coupled cost.
"""

import numpy as np

from phasequbo.instances import gen_random
from phasequbo.phase_relax import ClampedLinear, cost
from phasequbo.quantum_equiv import equivalence_report, pauli_decompose, quantum_cost

profile = ClampedLinear(1.0)
inst = gen_random(4, seed=5)

for term in pauli_decompose(inst):
    print(f"  {term.label}  {term.coeff:+.6f}")

rng = np.random.default_rng(0)
theta = rng.uniform(-2, 2, size=4)
qc = quantum_cost(inst, theta, profile)
cc = cost(inst, theta, profile)
print("quantum cost:", qc)
print("classical cost / (2n):", cc / 8)

# %%
# Same check over many draws and sizes, including padded ones.
for n in (2, 3, 4, 6, 8, 16):
    rep = equivalence_report(gen_random(n, seed=n), trials=50, seed=n)
    print(f"n={n:2d} padded={rep.n_padded:2d} terms={rep.term_count:3d}/{rep.term_bound:3d} "
          f"max deviation={rep.max_deviation:.1e}")
