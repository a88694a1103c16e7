"""Direct time stepping of the amplitude equations with memory.

The oscillating factor of the band-edge kernel is moved onto the amplitude,
``c(t) = exp(i delta' t) b1(t)``, which turns the memory term into an Abel
convolution with the bare weight ``1/sqrt(pi tau)``:

    dc/dt = -i Omega b0 exp(i delta' t) + i (delta_g + i gamma/2) c - C M(t)
    M(t)  = int_0^t c(u) / sqrt(pi (t - u)) du,      C = beta**1.5 exp(-i pi/4)
    db0/dt = -i Omega exp(-i delta' t) c            (full system only)

``M`` is evaluated by product integration (``c`` piecewise linear, weight
moments integrated exactly).  The local linear term is integrated exactly
through its exponential, and the remainder ``g`` (drive plus memory) is
interpolated linearly over each step, so a memoryless problem with a
constant drive is reproduced to rounding error.  The new node enters with a
finite weight, which makes every step one small linear solve.  Global error
is O(h**1.5) or better.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .closedform import AmplitudeTrace, Method
from .errors import NonFinite, StepTooLarge
from .kernels import KernelKind, KernelSpec
from .params import SystemParams, TimeGrid

MAX_STEP = 0.05
MAX_PHASE_PER_STEP = 0.3


class Mode(str, Enum):
    PERTURBATIVE = "perturbative"
    FULL_SYSTEM = "full_system"


@dataclass(frozen=True)
class SolverConfig:
    grid: TimeGrid = TimeGrid(50.0, 10000)
    scheme: str = "product_trapezoid"
    mode: Mode = Mode.PERTURBATIVE

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.scheme != "product_trapezoid":
            raise ValueError(f"unknown scheme {self.scheme!r}")

    def check(self) -> None:
        if self.grid.h > MAX_STEP:
            raise StepTooLarge(f"step h={self.grid.h:g} exceeds {MAX_STEP}")


def abel_weights(n: int, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Product-integration weights for ``int c(u)/sqrt(pi (t-u)) du``.

    On the subinterval ``tau in [k h, (k+1) h]`` (``tau = t - u``) with ``c``
    linear, the integral is ``A[k] c(t - k h) + B[k] c(t - (k+1) h)``.
    """
    k = np.arange(n, dtype=float)
    u = np.sqrt(k)
    v = np.sqrt(k + 1.0)
    d2 = 1.0 / (u + v) ** 2  # (v - u)**2 without cancellation
    scale = (2.0 / 3.0) * math.sqrt(h / math.pi)
    return scale * d2 * (2 * v + u), scale * d2 * (v + 2 * u)


def _coefficients(params: SystemParams, spec: KernelSpec):
    """Return ``(phase_rate, local_rate, memory_strength)`` for the c-equation."""
    if spec.kind is KernelKind.MARKOVIAN_FLAT:
        gamma = params.gamma + spec.gamma_flat
        return 0.0, 1j * (params.delta + 0.5j * gamma), 0j
    # delta_g = delta + delta'
    detune = params.delta + spec.delta_prime
    return spec.delta_prime, 1j * (detune + 0.5j * params.gamma), spec.strength


def _phi_weights(z: complex, h: float) -> tuple[complex, complex, complex]:
    """``exp(z)`` and the weights of ``int_0^h exp(a (h - r)) g(r) dr``.

    For ``g`` linear between ``g_n`` (r=0) and ``g_{n+1}`` (r=h) the integral
    is ``w0 g_n + w1 g_{n+1}`` with ``w1 = h phi2(z)``, ``w0 = h (phi1 - phi2)``,
    ``phi1 = (e^z - 1)/z``, ``phi2 = (e^z - 1 - z)/z**2``, ``z = a h``.
    """
    if abs(z) < 0.1:
        phi1 = phi2 = 0j
        term = 1.0 + 0j
        for k in range(14):
            # term = z**k / k!
            phi1 += term / (k + 1)
            phi2 += term / ((k + 1) * (k + 2))
            term *= z / (k + 1)
    else:
        em1 = np.exp(z) - 1.0
        phi1 = em1 / z
        phi2 = (em1 - z) / (z * z)
    return np.exp(z), h * (phi1 - phi2), h * phi2


def _solve(params: SystemParams, spec: KernelSpec, cfg: SolverConfig, full: bool):
    cfg.check()
    grid = cfg.grid
    n, h = grid.n_steps, grid.h
    t = grid.t
    phi, a, strength = _coefficients(params, spec)
    if abs(phi) * h > MAX_PHASE_PER_STEP:
        warnings.warn(f"h*|delta'|={abs(phi) * h:.3g} > {MAX_PHASE_PER_STEP}; memory term is under-resolved")
    omega = params.omega_rabi
    drive = np.exp(1j * phi * t)
    decay, w0, w1 = _phi_weights(a * h, h)

    A, B = abel_weights(n + 1, h)
    # weight of c_{n-m} in M_{n+1} for m = 0..n-1
    D = A[1:] + B[:-1]

    c = np.zeros(n + 1, dtype=complex)
    b0 = np.ones(n + 1, dtype=complex)
    memory = 0j  # M_0
    half = 0.5 * h
    diag_c = 1.0 + w1 * strength * A[0]
    for j in range(n):
        # g = everything except the local linear term a*c
        g_now = -1j * omega * b0[j] * drive[j] - strength * memory
        known = B[j] * c[0]
        if j and strength != 0:
            known += np.dot(D[:j], c[j:0:-1])
        rhs_c = decay * c[j] + w0 * g_now - w1 * strength * known
        if full:
            rhs_b = b0[j] + half * (-1j * omega * np.conj(drive[j]) * c[j])
            cb = w1 * 1j * omega * drive[j + 1]
            bc = half * 1j * omega * np.conj(drive[j + 1])
            c[j + 1] = (rhs_c - cb * rhs_b) / (diag_c - cb * bc)
            b0[j + 1] = rhs_b - bc * c[j + 1]
        else:
            rhs_c -= w1 * 1j * omega * drive[j + 1]
            c[j + 1] = rhs_c / diag_c
        memory = A[0] * c[j + 1] + known

    b1 = c * np.conj(drive)
    if not (np.all(np.isfinite(b1)) and np.all(np.isfinite(b0))):
        raise NonFinite("time stepping produced non-finite amplitudes")
    return b0, b1


def solve_perturbative(params: SystemParams, spec: KernelSpec | None = None, cfg: SolverConfig | None = None) -> AmplitudeTrace:
    """Integrate the weak-probe equation (``b0 = 1``) for ``b1(t)``."""
    spec = KernelSpec.band_edge(params) if spec is None else spec
    cfg = SolverConfig() if cfg is None else cfg
    b0, b1 = _solve(params, spec, cfg, full=False)
    return AmplitudeTrace(cfg.grid, b1, b0, Method.VOLTERRA_PERTURBATIVE)


def solve_full_system(params: SystemParams, spec: KernelSpec | None = None, cfg: SolverConfig | None = None) -> AmplitudeTrace:
    """Co-advance ``b0`` and ``b1`` without the weak-probe approximation."""
    spec = KernelSpec.band_edge(params) if spec is None else spec
    cfg = SolverConfig(mode=Mode.FULL_SYSTEM) if cfg is None else cfg
    b0, b1 = _solve(params, spec, cfg, full=True)
    return AmplitudeTrace(cfg.grid, b1, b0, Method.VOLTERRA_FULL)


def depletion(trace: AmplitudeTrace) -> float:
    """``max_t |1 - b0(t)|``, the size of the weak-probe error."""
    return float(np.max(np.abs(1.0 - trace.b0)))
