"""
Excited-state population
========================

``|b1(t)|**2`` for the same parameters.  With strong background decay the
population rises once and decays; with weak decay it undergoes damped
oscillations between the emitter and the band-edge reservoir.
"""

import numpy as np

from bandedge import SystemParams, TimeGrid, solve_closed_form
from bandedge.diagnostics import envelope, local_maxima

grid = TimeGrid(t_max=50.0, n_steps=5000)
long_grid = TimeGrid(t_max=210.0, n_steps=21000)
pops = {}

for gamma in (5.0, 1.0, 0.5, 0.2):
    params = SystemParams(gamma=gamma)
    pop = np.abs(solve_closed_form(params, grid).b1) ** 2
    pops[gamma] = pop
    b1_long = solve_closed_form(params, long_grid).b1
    ratio = envelope(long_grid.t, b1_long, 20.0) / envelope(long_grid.t, b1_long, 200.0)
    print(f"gamma={gamma:4}: {len(local_maxima(pop))} population maxima on (0, 50], |b1| envelope t=20 / t=200: {ratio:.2f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    raise SystemExit(0)

fig, ax = plt.subplots(figsize=(6, 4))
for gamma, pop in pops.items():
    ax.plot(grid.t, pop / 0.01**2, label=f"$\\gamma={gamma}$")
ax.set_xlabel(r"$\beta t$")
ax.set_ylabel(r"$|b_1(t)|^2 / \Omega^2$")
ax.legend()
fig.tight_layout()
fig.savefig("upper_population.png", dpi=150)
print("wrote upper_population.png")
