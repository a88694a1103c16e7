"""
Transient absorption at the transparency point
==============================================

The probe is tuned to the band-edge transparency point ``delta = delta_g = 0``
and the background decay ``gamma`` of the excited level is varied.  Strong
background decay gives smooth absorption; weak background decay lets the
reservoir drive damped oscillations, and ``-Im chi`` dips below zero
(transient gain without inversion) before everything relaxes to
transparency.
"""

import numpy as np

from bandedge import SystemParams, TimeGrid, eval_susceptibility, solve_closed_form
from bandedge.diagnostics import has_gain, settle_time

grid = TimeGrid(t_max=50.0, n_steps=5000)
curves = {}

for gamma in (5.0, 1.0, 0.5, 0.2):
    params = SystemParams(gamma=gamma)
    sus = eval_susceptibility(params, solve_closed_form(params, grid))
    curves[gamma] = sus.neg_im_chi
    print(
        f"gamma={gamma:4}: max(-Im chi)={sus.neg_im_chi.max():.3f}  "
        f"min(-Im chi)={sus.neg_im_chi.min():+.3f}  gain={has_gain(sus.neg_im_chi)!s:5}  "
        f"last turning point t={settle_time(grid.t, sus.neg_im_chi):.1f}"
    )

# the same curves do not depend on the (weak) probe strength
p_weak, p_weaker = SystemParams(gamma=0.2, omega_rabi=0.01), SystemParams(gamma=0.2, omega_rabi=0.001)
chi_a = eval_susceptibility(p_weak, solve_closed_form(p_weak, grid)).chi
chi_b = eval_susceptibility(p_weaker, solve_closed_form(p_weaker, grid)).chi
print("max |chi(0.01) - chi(0.001)| =", np.max(np.abs(chi_a - chi_b)))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    raise SystemExit(0)

fig, ax = plt.subplots(figsize=(6, 4))
for (gamma, y), style in zip(curves.items(), ("--", "-.", "-", "-")):
    ax.plot(grid.t, y, style, lw=2.0 if gamma == 0.2 else 1.0, label=f"$\\gamma={gamma}$")
ax.axhline(0.0, color="k", lw=0.5)
ax.set_xlabel(r"$\beta t$")
ax.set_ylabel(r"$-\mathrm{Im}\,\chi(t)$ (arb. units)")
ax.legend()
fig.tight_layout()
fig.savefig("transient_susceptibility.png", dpi=150)
print("wrote transient_susceptibility.png")
