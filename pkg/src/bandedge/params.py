"""Physical parameters, derived constants and time grids.

Rates, detunings and the probe Rabi frequency are all expressed in units of
the reservoir coupling ``beta``; times are in units of ``1/beta``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


class PerturbativeWarning(UserWarning):
    """The probe is too strong for the ``b0 ~ 1`` approximation."""


@dataclass(frozen=True)
class SystemParams:
    """Parameters of the driven three-level emitter.

    ``omega_rabi = 0`` is accepted and means "probe off"; every solver then
    returns identically vanishing amplitudes.
    """

    beta: float = 1.0
    gamma: float = 0.2
    delta: float = 0.0
    delta_g: float = 0.0
    omega_rabi: float = 0.01
    chi_prefactor: float = 1.0

    def __post_init__(self):
        for name in ("beta", "gamma", "delta", "delta_g", "omega_rabi", "chi_prefactor"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ConfigError(f"{name} must be finite, got {value!r}")
        if self.beta <= 0:
            raise ConfigError(f"beta must be > 0, got {self.beta}")
        if self.gamma < 0:
            raise ConfigError(f"gamma must be >= 0, got {self.gamma}")
        if self.omega_rabi < 0:
            raise ConfigError(f"omega_rabi must be >= 0, got {self.omega_rabi}")
        if self.chi_prefactor <= 0:
            raise ConfigError(f"chi_prefactor must be > 0, got {self.chi_prefactor}")
        if not self.is_perturbative:
            warnings.warn(
                f"omega_rabi={self.omega_rabi} is outside the perturbative regime "
                f"(beta={self.beta}, gamma={self.gamma})",
                PerturbativeWarning,
                stacklevel=3,
            )

    @property
    def is_perturbative(self) -> bool:
        scale = min(self.beta, self.gamma) if self.gamma > 0 else self.beta
        return self.omega_rabi <= 0.1 * scale

    def replace(self, **changes) -> SystemParams:
        fields = {
            "beta": self.beta,
            "gamma": self.gamma,
            "delta": self.delta,
            "delta_g": self.delta_g,
            "omega_rabi": self.omega_rabi,
            "chi_prefactor": self.chi_prefactor,
        }
        fields.update(changes)
        return SystemParams(**fields)


@dataclass(frozen=True)
class DerivedParams:
    delta_prime: float
    k0: complex


def derive(params: SystemParams) -> DerivedParams:
    """Return the detuning from the band edge and the constant ``K0``."""
    delta_prime = params.delta_g - params.delta
    # i * exp(-i pi/4) == exp(+i pi/4)
    k0 = 1j * params.beta**1.5 * cmath.exp(-0.25j * math.pi)
    return DerivedParams(delta_prime=delta_prime, k0=k0)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid ``t_k = k * t_max / n_steps`` for ``k = 0..n_steps``."""

    t_max: float = 50.0
    n_steps: int = 5000

    def __post_init__(self):
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise ConfigError(f"t_max must be > 0, got {self.t_max}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise ConfigError(f"n_steps must be an integer >= 2, got {self.n_steps}")

    @classmethod
    def from_step(cls, t_max: float, h: float) -> TimeGrid:
        return cls(t_max=t_max, n_steps=int(round(t_max / h)))

    @property
    def h(self) -> float:
        return self.t_max / self.n_steps

    @property
    def t(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_steps + 1)
