"""
Closed form against direct time stepping
========================================

The closed-form amplitude comes from the roots of a quintic and the scaled
complementary error function.  Here it is compared with a direct numerical
solution of the amplitude equation with its singular memory kernel, on and
off the transparency point, and the observed convergence order of the
time stepper is measured.
"""

import numpy as np

from bandedge import KernelSpec, SolverConfig, SystemParams, TimeGrid, solve_closed_form, solve_perturbative, steady_state_value


def compare(params, h, t_max=50.0):
    grid = TimeGrid.from_step(t_max, h)
    closed = solve_closed_form(params, grid).b1
    direct = solve_perturbative(params, cfg=SolverConfig(grid)).b1
    return np.max(np.abs(closed - direct)) / np.max(np.abs(closed))


# {{{ agreement and convergence

print("delta = delta_g = 0")
for gamma in (5.0, 1.0, 0.5, 0.2):
    errors = [compare(SystemParams(gamma=gamma), h) for h in (0.02, 0.01, 0.005)]
    orders = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
    print(f"  gamma={gamma:4}: rel. errors {', '.join(f'{e:.2e}' for e in errors)}  observed order {orders.round(2)}")

print("off the transparency point (gamma = 1)")
for delta_g in (-1.0, -0.3, 0.3, 1.0):
    print(f"  delta'={delta_g:+.1f}: rel. error {compare(SystemParams(gamma=1.0, delta_g=delta_g), 0.005):.2e}")

# }}}

# {{{ long-time limit

params = SystemParams(gamma=1.0, delta_g=1.0)
grid = TimeGrid.from_step(200.0, 0.02)
direct = solve_perturbative(params, cfg=SolverConfig(grid)).b1
print(f"steady state {steady_state_value(params):.6f}, direct solution at t=200 {direct[-1]:.6f}")

# }}}

# {{{ memoryless reservoir

params = SystemParams(gamma=0.2)
grid = TimeGrid.from_step(10.0, 0.001)
flat = solve_perturbative(params, KernelSpec.flat(2.0), SolverConfig(grid)).b1
rate = 0.5j * (0.2 + 2.0)
exact = (params.omega_rabi / rate) * (1 - np.exp(1j * rate * grid.t))
print(f"flat reservoir vs exponential relaxation: rel. error {np.max(np.abs(flat - exact)) / np.max(np.abs(exact)):.1e}")

# }}}
