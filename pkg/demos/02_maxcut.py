"""
MaxCut through the spin-QUBO mapping
====================================

Edge weights enter as Q_ij = -w, so the minimum energy is the maximum cut and
cut(s) = (W_total - energy(s)) / 2.
"""

import numpy as np

from phasequbo.instances import cut_from_energy, cut_value, maxcut_to_squbo
from phasequbo.optimizer import OptimizerConfig, solve
from phasequbo.qubo_core import brute_force_solve

graphs = {
    "5-cycle": [(i, (i + 1) % 5) for i in range(5)],
    "triangle": [(0, 1), (1, 2), (0, 2)],
    "petersen": [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)],
}

for name, edges in graphs.items():
    inst = maxcut_to_squbo(edges)
    s_opt, e_opt = brute_force_solve(inst)
    rep = solve(inst, config=OptimizerConfig(restarts=16, seed=1))
    print(f"{name:9s} optimum cut {cut_from_energy(edges, e_opt):g}, "
          f"phase solver cut {cut_value(edges, rep.best_assignment):g}")

# %%
# Weighted random graph on 18 nodes
rng = np.random.default_rng(3)
edges = [(i, j, float(rng.uniform(0.5, 2.0)))
         for i in range(18) for j in range(i + 1, 18) if rng.random() < 0.3]
inst = maxcut_to_squbo(edges, n=18)
_, e_opt = brute_force_solve(inst)
rep = solve(inst)
print(f"random weighted: optimum {cut_from_energy(edges, e_opt):.4f}, "
      f"phase {cut_value(edges, rep.best_assignment):.4f}")
