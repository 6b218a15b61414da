"""
Watching one perturbed descent
==============================

Early iterations are noise dominated; as the noise decays the phases slide to
the flat ends of the profile and saturation climbs to 1.
"""

import numpy as np

from phasequbo.instances import gen_random
from phasequbo.optimizer import OptimizerConfig, descend, restart_rng
from phasequbo.phase_relax import ClampedLinear, Logistic, decode
from phasequbo.qubo_core import brute_force_solve, energy

inst = gen_random(14, seed=11)
_, opt = brute_force_solve(inst)
cfg = OptimizerConfig()

for profile in (ClampedLinear(1.0), Logistic(4.0)):
    rng = restart_rng(cfg.seed, 0)
    width = profile.default_init_half_width()
    theta, trace = descend(inst, profile, rng.uniform(-width, width, inst.n), cfg, rng)
    print(profile)
    for it in (0, 100, 250, 500, 1000, len(trace) - 1):
        print(f"  iter {it:5d}  cost {trace.cost[it]:9.4f}  "
              f"|grad| {trace.grad_inf[it]:.2e}  saturation {trace.saturation[it]:.4f}")
    print(f"  decoded energy {energy(inst, decode(theta, profile)):.4f} (optimum {opt:.4f})")

# %%
# Count restarts that decode to the optimum, with and without the noise.
profile = ClampedLinear(1.0)
for label, config in (("perturbed", cfg), ("noise-free", OptimizerConfig(noise_sigma=0.0))):
    ends = []
    for k in range(16):
        rng = restart_rng(0, k)
        theta, _ = descend(inst, profile, rng.uniform(-0.5, 0.5, inst.n), config, rng)
        ends.append(energy(inst, decode(theta, profile)))
    print(f"{label:10s} restarts reaching the optimum: {int(np.sum(np.isclose(ends, opt)))} / 16")
