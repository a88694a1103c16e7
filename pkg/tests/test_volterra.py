import numpy as np
import pytest

from bandedge import KernelSpec, Mode, SolverConfig, SystemParams, TimeGrid, solve_full_system, solve_perturbative
from bandedge.errors import StepTooLarge
from bandedge.volterra import abel_weights, depletion

from .conftest import DECAY_SWEEP, oracle_trace


def relaxation(omega, rate, t):
    """Exact b1 of i b1' = omega - rate b1, b1(0) = 0."""
    return (omega / rate) * (1 - np.exp(1j * rate * t))


def test_abel_weights_integrate_polynomials_exactly():
    # int_0^t u / sqrt(pi (t - u)) du = (4/3) t^1.5 / sqrt(pi), exact for linear data
    h, n = 0.01, 300
    A, B = abel_weights(n, h)
    t = n * h
    u = np.arange(n + 1) * h
    approx = np.dot(A, u[::-1][:-1]) + np.dot(B, u[::-1][1:])
    assert approx == pytest.approx(4 / 3 * t**1.5 / np.sqrt(np.pi), rel=1e-12)
    # constant data: sum(A + B) = 2 sqrt(t / pi)
    assert np.sum(A + B) == pytest.approx(2 * np.sqrt(t / np.pi), rel=1e-13)


def test_first_step():
    p = SystemParams(gamma=1.0)
    for h in (0.01, 0.001):
        tr = solve_perturbative(p, cfg=SolverConfig(TimeGrid(10 * h, 10)))
        assert tr.b1[0] == 0
        assert abs(tr.b1[1] - (-1j * p.omega_rabi * h)) < 2 * p.omega_rabi * h**1.5


@pytest.mark.parametrize("gamma, gamma_flat, delta", [(0.2, 2.0, 0.0), (1.0, 0.0, 0.0), (0.5, 1.0, 0.7)])
def test_markovian_limit(gamma, gamma_flat, delta):
    p = SystemParams(gamma=gamma, delta=delta)
    grid = TimeGrid.from_step(10.0, 0.001)
    tr = solve_perturbative(p, KernelSpec.flat(gamma_flat), SolverConfig(grid))
    exact = relaxation(p.omega_rabi, delta + 0.5j * (gamma + gamma_flat), grid.t)
    assert np.max(np.abs(tr.b1 - exact)) <= 1e-8 * np.max(np.abs(exact))


def test_kernel_off():
    p = SystemParams(gamma=1.0)
    grid = TimeGrid.from_step(10.0, 0.01)
    tr = solve_perturbative(p, KernelSpec(beta=0.0), SolverConfig(grid))
    exact = relaxation(p.omega_rabi, 0.5j, grid.t)
    assert np.max(np.abs(tr.b1 - exact)) <= 1e-10 * np.max(np.abs(exact))


def test_convergence_order():
    ref = oracle_trace(1.0, 0.005, t_max=20.0)
    errors = []
    for h in (0.04, 0.02, 0.01):
        tr = oracle_trace(1.0, h, t_max=20.0)
        stride = int(round(h / 0.005))
        errors.append(np.max(np.abs(tr.b1 - ref.b1[::stride])))
    ratios = [errors[i] / errors[i + 1] for i in range(2)]
    assert min(ratios) >= 2.5, ratios


def test_linear_in_probe():
    grid = TimeGrid.from_step(10.0, 0.01)
    a = solve_perturbative(SystemParams(gamma=0.2, omega_rabi=0.01), cfg=SolverConfig(grid)).b1
    b = solve_perturbative(SystemParams(gamma=0.2, omega_rabi=0.02), cfg=SolverConfig(grid)).b1
    assert np.array_equal(b, 2 * a)


@pytest.mark.parametrize("gamma", DECAY_SWEEP)
def test_refinement_stability_and_bound(gamma):
    coarse = oracle_trace(gamma, 0.01)
    fine = oracle_trace(gamma, 0.005)
    scale = np.max(np.abs(fine.b1))
    assert np.max(np.abs(coarse.b1 - fine.b1[::2])) <= 1e-3 * scale
    assert scale <= 5 * 0.01 / 1.0


def test_step_too_large():
    with pytest.raises(StepTooLarge):
        solve_perturbative(SystemParams(), cfg=SolverConfig(TimeGrid.from_step(10.0, 0.1)))


def test_coarse_phase_warns():
    p = SystemParams(gamma=1.0, delta_g=10.0)
    with pytest.warns(UserWarning, match="under-resolved"):
        solve_perturbative(p, cfg=SolverConfig(TimeGrid.from_step(1.0, 0.05)))


def test_full_system_stays_perturbative():
    p = SystemParams(gamma=0.2, omega_rabi=0.01)
    cfg = SolverConfig(TimeGrid.from_step(50.0, 0.005), mode=Mode.FULL_SYSTEM)
    full = solve_full_system(p, cfg=cfg)
    pert = oracle_trace(0.2, 0.005)
    assert depletion(full) < 1e-3
    assert np.max(np.abs(full.b1 - pert.b1)) <= 1e-3 * np.max(np.abs(pert.b1))


def test_full_system_without_probe():
    p = SystemParams(gamma=0.2, omega_rabi=0.0)
    full = solve_full_system(p, cfg=SolverConfig(TimeGrid(10.0, 1000), mode="full_system"))
    assert np.all(full.b0 == 1) and np.all(full.b1 == 0)


def test_full_system_trivial_state_without_decay():
    p = SystemParams(gamma=0.0, omega_rabi=0.0)
    full = solve_full_system(p, cfg=SolverConfig(TimeGrid(10.0, 1000), mode="full_system"))
    assert np.all(full.b0 == 1) and np.all(full.b1 == 0)


def test_full_system_conserves_norm_without_losses():
    # no background decay and a flat reservoir with Gamma = 0: |b0|^2 + |b1|^2 = 1
    p = SystemParams(gamma=0.0, omega_rabi=0.3)
    full = solve_full_system(p, KernelSpec.flat(0.0), SolverConfig(TimeGrid(10.0, 2000), mode="full_system"))
    norm = np.abs(full.b0) ** 2 + np.abs(full.b1) ** 2
    assert np.max(np.abs(norm - 1)) < 1e-10
