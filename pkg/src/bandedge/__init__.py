"""Transient probe response of a Lambda emitter coupled to a band-edge reservoir."""

from .closedform import (
    AmplitudeTrace,
    Method,
    RootSystem,
    SusceptibilityTrace,
    build_root_system,
    eval_b1,
    eval_susceptibility,
    solve_closed_form,
    steady_state_value,
)
from .kernels import KernelKind, KernelSpec, kernel_laplace, kernel_time
from .params import DerivedParams, PerturbativeWarning, SystemParams, TimeGrid, derive
from .polyroots import ComplexPolynomial, RootList, build_quintic, find_roots
from .specfun import erfcx, principal_sqrt
from .volterra import Mode, SolverConfig, solve_full_system, solve_perturbative

__version__ = "0.1.0"

__all__ = [
    "AmplitudeTrace",
    "ComplexPolynomial",
    "DerivedParams",
    "KernelKind",
    "KernelSpec",
    "Method",
    "Mode",
    "PerturbativeWarning",
    "RootList",
    "RootSystem",
    "SolverConfig",
    "SusceptibilityTrace",
    "SystemParams",
    "TimeGrid",
    "build_quintic",
    "build_root_system",
    "derive",
    "erfcx",
    "eval_b1",
    "eval_susceptibility",
    "find_roots",
    "kernel_laplace",
    "kernel_time",
    "principal_sqrt",
    "solve_closed_form",
    "solve_full_system",
    "solve_perturbative",
    "steady_state_value",
]
