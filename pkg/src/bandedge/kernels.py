"""Reservoir memory kernels in the time and Laplace domains.

For a density of modes ``rho(w) = Theta(w - w_g) / (pi sqrt(w - w_g))`` the
kernel is

    K(tau) = beta**1.5 exp(-i pi/4) exp(-i delta' tau) / sqrt(pi tau)

with Laplace transform ``beta**1.5 exp(-i pi/4) / sqrt(s + i delta')``.
The flat (Markovian) reservoir has ``K(tau) = (Gamma/2) delta(tau)`` with the
memory integral taking the full weight of the delta, so it only adds
``Gamma/2`` to the amplitude decay rate (``gamma -> gamma + Gamma``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BranchCut, ConfigError, NotPointwise, SingularAtZero
from .params import SystemParams, derive

_EDGE_PHASE = cmath.exp(-0.25j * math.pi)


class KernelKind(str, Enum):
    INVERSE_SQRT_EDGE = "inverse_sqrt_edge"
    MARKOVIAN_FLAT = "markovian_flat"


@dataclass(frozen=True)
class KernelSpec:
    kind: KernelKind = KernelKind.INVERSE_SQRT_EDGE
    beta: float = 1.0
    delta_prime: float = 0.0
    gamma_flat: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", KernelKind(self.kind))
        if self.kind is KernelKind.INVERSE_SQRT_EDGE and self.beta < 0:
            raise ConfigError(f"beta must be >= 0, got {self.beta}")
        if self.kind is KernelKind.MARKOVIAN_FLAT and self.gamma_flat < 0:
            raise ConfigError(f"gamma_flat must be >= 0, got {self.gamma_flat}")

    @classmethod
    def band_edge(cls, params: SystemParams) -> KernelSpec:
        return cls(KernelKind.INVERSE_SQRT_EDGE, beta=params.beta, delta_prime=derive(params).delta_prime)

    @classmethod
    def flat(cls, gamma_flat: float) -> KernelSpec:
        return cls(KernelKind.MARKOVIAN_FLAT, gamma_flat=gamma_flat)

    @property
    def strength(self) -> complex:
        """Coefficient ``beta**1.5 exp(-i pi/4)`` of the singular kernel."""
        return self.beta**1.5 * _EDGE_PHASE


def kernel_time(spec: KernelSpec, tau: float) -> complex:
    if spec.kind is KernelKind.MARKOVIAN_FLAT:
        raise NotPointwise("the flat-reservoir kernel is a delta distribution")
    if not tau > 0:
        raise SingularAtZero(f"kernel is singular at tau={tau}")
    return spec.strength * cmath.exp(-1j * spec.delta_prime * tau) / math.sqrt(math.pi * tau)


def kernel_laplace(spec: KernelSpec, s: complex) -> complex:
    """Laplace transform of the kernel on the principal sheet."""
    if spec.kind is KernelKind.MARKOVIAN_FLAT:
        return complex(spec.gamma_flat / 2)
    u = complex(s) + 1j * spec.delta_prime
    # cut: s in -i delta' - [0, inf)
    if abs(u.imag) <= 1e-12 and u.real <= 1e-12:
        raise BranchCut(f"s={s} lies on the branch cut")
    return spec.strength / cmath.sqrt(u)


def density_of_modes(w, w_g: float = 0.0):
    """``Theta(w - w_g) / (pi sqrt(w - w_g))``."""
    w = np.asarray(w, dtype=float)
    out = np.zeros_like(w)
    above = w > w_g
    out[above] = 1.0 / (np.pi * np.sqrt(w[above] - w_g))
    return out


def truncated_laplace(spec: KernelSpec, s: complex, t_max: float = 200.0) -> complex:
    """``int_0^t_max exp(-s t) K(t) dt`` by adaptive quadrature.

    The substitution ``t = u**2`` removes the ``1/sqrt(t)`` singularity:
    the integrand becomes ``2 C exp(-(s + i delta') u**2) / sqrt(pi)``.
    """
    from scipy.integrate import quad

    if spec.kind is KernelKind.MARKOVIAN_FLAT:
        raise NotPointwise("the flat-reservoir kernel is a delta distribution")
    rate = complex(s) + 1j * spec.delta_prime
    upper = math.sqrt(t_max)
    opts = dict(limit=400, epsabs=0.0, epsrel=1e-12)
    re, _ = quad(lambda u: (np.exp(-rate * u * u)).real, 0.0, upper, **opts)
    im, _ = quad(lambda u: (np.exp(-rate * u * u)).imag, 0.0, upper, **opts)
    return 2.0 * spec.strength * complex(re, im) / math.sqrt(math.pi)
