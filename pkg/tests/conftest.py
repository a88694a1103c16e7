import functools
import warnings

import numpy as np
import pytest

from bandedge import SolverConfig, SystemParams, TimeGrid, solve_closed_form, solve_perturbative

DECAY_SWEEP = (5.0, 1.0, 0.5, 0.2)


@functools.lru_cache(maxsize=None)
def closed_trace(gamma, t_max=50.0, n_steps=5000, delta=0.0, delta_g=0.0, omega=0.01):
    p = SystemParams(gamma=gamma, delta=delta, delta_g=delta_g, omega_rabi=omega)
    return solve_closed_form(p, TimeGrid(t_max, n_steps))


@functools.lru_cache(maxsize=None)
def oracle_trace(gamma, h, t_max=50.0, delta=0.0, delta_g=0.0, omega=0.01):
    p = SystemParams(gamma=gamma, delta=delta, delta_g=delta_g, omega_rabi=omega)
    return solve_perturbative(p, cfg=SolverConfig(TimeGrid.from_step(t_max, h)))


def rel_max_error(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))) / np.max(np.abs(b)))


@pytest.fixture(autouse=True)
def _quiet_perturbative_warning():
    from bandedge import PerturbativeWarning

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PerturbativeWarning)
        yield


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
