"""Closed-form transient amplitude and susceptibility.

With ``x = sqrt(s + i delta')`` the Laplace-domain amplitude is

    b1(s) = Omega / (s [delta + i gamma/2 + i K(s) + i s]) = -i Omega x / P(x)

where ``P`` is the monic quintic built by :func:`polyroots.build_quintic`.
Partial fractions over its roots ``x_i`` give
``x / P(x) = sum_i A_i / (x - x_i)`` with ``A_i = x_i / P'(x_i)``, and the
shifted pair

    L^-1[1 / (sqrt(s) - x_i)] = 1/sqrt(pi t) + x_i exp(x_i**2 t) erfc(-x_i sqrt(t))

inverts each term (the ``1/sqrt(pi t)`` pieces cancel since ``sum A_i = 0``).
With ``alpha_i = i Omega x_i / P'(x_i)`` this is

    b1(t) = -exp(-i delta' t) sum_i alpha_i x_i exp(x_i**2 t) erfc(-x_i sqrt(t)).

To evaluate without overflow each term is split with ``y_i = +-x_i``, the
root of ``x_i**2`` with ``Re(y_i) >= 0``.  Using ``erfc(-z) = 2 - erfc(z)``
when ``y_i = x_i``, both cases collapse to

    x_i exp(x_i**2 t) erfc(-x_i sqrt t)
        = (x_i + y_i) exp(x_i**2 t) - y_i erfcx(y_i sqrt t),

where ``erfcx(y_i sqrt t)`` is bounded (``Re(y_i) >= 0``) and the first term
is only present for roots with ``Re(x_i) > 0``, i.e. genuine poles with
``Re(x_i**2 - i delta') <= 0``, so ``exp((x_i**2 - i delta') t)`` is bounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateRoots, OverflowDetected, UndefinedLimit
from .kernels import KernelSpec, kernel_laplace
from .params import SystemParams, TimeGrid, derive
from .polyroots import build_quintic, find_roots
from .specfun import erfcx_checked


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    VOLTERRA_PERTURBATIVE = "volterra_perturbative"
    VOLTERRA_FULL = "volterra_full"


@dataclass(frozen=True)
class AmplitudeTrace:
    grid: TimeGrid
    b1: np.ndarray
    b0: np.ndarray
    method: Method

    @property
    def t(self) -> np.ndarray:
        return self.grid.t


@dataclass(frozen=True)
class SusceptibilityTrace:
    grid: TimeGrid
    chi: np.ndarray
    neg_im_chi: np.ndarray
    population1: np.ndarray

    @property
    def t(self) -> np.ndarray:
        return self.grid.t


@dataclass(frozen=True)
class RootSystem:
    x: np.ndarray
    y: np.ndarray
    alpha: np.ndarray
    contributing: np.ndarray
    delta_prime: float
    residuals: np.ndarray


def zero_threshold(params: SystemParams) -> float:
    scale = max(abs(c) for c in build_quintic(params).coefficients)
    return 1e-12 * (1.0 + scale)


def branch_root(x: complex) -> complex:
    """``y = +-x`` with ``Re(y) > 0``; on the imaginary axis ``Im(y) >= 0``.

    This is the principal square root of ``x**2``.
    """
    if x.real > 0 or (x.real == 0 and x.imag >= 0):
        return x
    return -x


def build_root_system(params: SystemParams) -> RootSystem:
    """Roots, branch-resolved ``y_i`` and expansion coefficients ``alpha_i``."""
    found = find_roots(build_quintic(params))
    x = found.roots
    tol = zero_threshold(params)
    contributing = np.abs(x) > tol
    for i, j in found.degenerate_pairs:
        if contributing[i] and contributing[j]:
            raise DegenerateRoots(f"roots x[{i}]={x[i]:.6g} and x[{j}]={x[j]:.6g} coincide")

    alpha = np.zeros(5, dtype=complex)
    for i in np.flatnonzero(contributing):
        others = np.delete(x, i)
        alpha[i] = 1j * params.omega_rabi * x[i] / np.prod(x[i] - others)
    y = np.array([branch_root(complex(xi)) for xi in x])
    return RootSystem(
        x=x,
        y=y,
        alpha=alpha,
        contributing=contributing,
        delta_prime=derive(params).delta_prime,
        residuals=found.residuals,
    )


def eval_b1(rs: RootSystem, grid: TimeGrid | np.ndarray) -> AmplitudeTrace | np.ndarray:
    """Closed-form ``b1`` on a grid (returns a trace) or on raw times (array)."""
    t = grid.t if isinstance(grid, TimeGrid) else np.asarray(grid, dtype=float)
    sqrt_t = np.sqrt(t)
    shift = np.exp(-1j * rs.delta_prime * t)
    b1 = np.zeros(t.shape, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        for xi, yi, ai, on in zip(rs.x, rs.y, rs.alpha, rs.contributing):
            if not on:
                continue
            scaled, overflowed = erfcx_checked(yi * sqrt_t)
            if np.any(overflowed):
                raise OverflowDetected(f"erfcx overflow for root {xi:.6g}")
            term = -yi * shift * scaled
            if xi + yi != 0:
                term = term + (xi + yi) * np.exp((xi * xi - 1j * rs.delta_prime) * t)
            b1 -= ai * term
    if not np.all(np.isfinite(b1)):
        raise OverflowDetected("closed-form amplitude is not finite")
    if isinstance(grid, TimeGrid):
        return AmplitudeTrace(grid, b1, np.ones_like(b1), Method.CLOSED_FORM)
    return b1


def solve_closed_form(params: SystemParams, grid: TimeGrid | None = None) -> AmplitudeTrace:
    grid = TimeGrid() if grid is None else grid
    if params.omega_rabi == 0:
        zeros = np.zeros(grid.n_steps + 1, dtype=complex)
        return AmplitudeTrace(grid, zeros, np.ones_like(zeros), Method.CLOSED_FORM)
    return eval_b1(build_root_system(params), grid)


def eval_susceptibility(params: SystemParams, amp: AmplitudeTrace) -> SusceptibilityTrace:
    """``chi = -(prefactor/Omega) b0 conj(b1)``; zero when the probe is off."""
    b1 = np.asarray(amp.b1)
    if params.omega_rabi == 0:
        chi = np.zeros_like(b1)
    else:
        chi = -(params.chi_prefactor / params.omega_rabi) * amp.b0 * np.conj(b1)
    return SusceptibilityTrace(amp.grid, chi, -chi.imag, np.abs(b1) ** 2)


def steady_state_value(params: SystemParams) -> complex:
    """``lim b1(t)`` for ``t -> infinity`` from the ``s = 0`` pole."""
    d = derive(params)
    if d.delta_prime == 0:
        # K(s) diverges as s -> 0+, suppressing the residue
        return 0j
    k0 = kernel_laplace(KernelSpec.band_edge(params), 0j)
    denom = params.delta + 0.5j * params.gamma + 1j * k0
    if abs(denom) <= 1e-14 * (abs(params.delta) + params.gamma + abs(k0)):
        raise UndefinedLimit("denominator of the s=0 residue vanishes")
    return params.omega_rabi / denom
