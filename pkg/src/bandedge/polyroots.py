"""Roots of complex polynomials by Aberth-Ehrlich simultaneous iteration."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import LeadingZero, NonConvergence
from .params import SystemParams, derive

MAX_ITERATIONS = 500
RESIDUAL_TOL = 1e-10
DEGENERACY_TOL = 1e-6
# fixed angular offset of the starting circle, avoids symmetric stalls
_START_OFFSET = 0.4


@dataclass(frozen=True)
class ComplexPolynomial:
    """Polynomial with coefficients in ascending degree order."""

    coefficients: tuple

    def __post_init__(self):
        coefs = tuple(complex(c) for c in self.coefficients)
        if not coefs:
            raise LeadingZero("empty coefficient list")
        object.__setattr__(self, "coefficients", coefs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        # np.polyval wants descending order
        return np.polyval(self.coefficients[::-1], x)

    def derivative(self) -> ComplexPolynomial:
        c = self.coefficients
        if len(c) == 1:
            return ComplexPolynomial((0j,))
        return ComplexPolynomial(tuple(k * c[k] for k in range(1, len(c))))

    def scale_at(self, x):
        """Sum of ``|c_k| |x|**k``, the natural size of ``p(x)`` near ``x``."""
        return np.polyval(np.abs(self.coefficients[::-1]), np.abs(x))


@dataclass(frozen=True)
class RootList:
    roots: np.ndarray
    residuals: np.ndarray
    iterations: int = 0
    degenerate_pairs: list = field(default_factory=list)

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degenerate_pairs)


def _aberth(coefs: np.ndarray, max_iter: int) -> tuple[np.ndarray, int]:
    """Roots of the polynomial with ascending ``coefs`` (nonzero constant term)."""
    n = len(coefs) - 1
    desc = coefs[::-1] / coefs[-1]
    ddesc = np.polyder(desc)
    radius = 1.0 + np.max(np.abs(desc[1:]))
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + _START_OFFSET))
    if n == 1:
        return np.array([-desc[1]]), 0

    it = 0
    for it in range(1, max_iter + 1):
        p = np.polyval(desc, z)
        dp = np.polyval(ddesc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            step = ratio / (1.0 - ratio * inv.sum(axis=1))
        done = p == 0
        step[done] = 0.0
        if not np.all(np.isfinite(step)):
            # p'(z) = 0 at an iterate: nudge it off the critical point
            bad = ~np.isfinite(step)
            step[bad] = -1e-3 * radius * np.exp(1j * (it + np.arange(bad.sum())))
        z = z - step
        if np.all(np.abs(step) <= 4 * np.finfo(float).eps * np.maximum(np.abs(z), 1e-300)):
            break
    return z, it


def _newton_polish(poly: ComplexPolynomial, z: np.ndarray, steps: int = 3) -> np.ndarray:
    dpoly = poly.derivative()
    for _ in range(steps):
        p = poly(z)
        dp = dpoly(z)
        ok = np.abs(dp) > 0
        cand = z.copy()
        cand[ok] = z[ok] - p[ok] / dp[ok]
        # only accept steps that reduce the residual
        better = np.abs(poly(cand)) < np.abs(p)
        z = np.where(better, cand, z)
    return z


def _sort_roots(z: np.ndarray) -> np.ndarray:
    return z[np.lexsort((z.imag, z.real))]


def find_roots(p: ComplexPolynomial, max_iter: int = MAX_ITERATIONS) -> RootList:
    """All roots of ``p`` with multiplicity, sorted by real then imaginary part.

    Exactly vanishing low-order coefficients are split off as exact zero
    roots before iterating.  Raises :class:`NonConvergence` when some
    relative residual ``|p(x)| / sum |c_k| |x|**k`` stays above 1e-10.
    """
    coefs = np.asarray(p.coefficients, dtype=complex)
    if p.degree < 1:
        raise LeadingZero("polynomial must have degree >= 1")
    if coefs[-1] == 0:
        raise LeadingZero("leading coefficient is zero")

    n_zero = int(np.argmax(coefs != 0))
    reduced = coefs[n_zero:]
    roots = [np.zeros(n_zero, dtype=complex)]
    iterations = 0
    if len(reduced) > 1:
        z, iterations = _aberth(reduced, max_iter)
        z = _newton_polish(ComplexPolynomial(tuple(reduced)), z)
        roots.append(z)
    roots = _sort_roots(np.concatenate(roots))

    scale = p.scale_at(roots)
    with np.errstate(invalid="ignore"):
        residuals = np.where(scale > 0, np.abs(p(roots)) / np.where(scale > 0, scale, 1.0), 0.0)
    if not np.all(residuals < RESIDUAL_TOL):
        raise NonConvergence(
            f"root residuals {residuals.max():.3e} exceed {RESIDUAL_TOL:g} "
            f"after {iterations} iterations",
            residuals=residuals,
        )

    root_scale = max(1.0, float(np.max(np.abs(roots))))
    pairs = [
        (i, j)
        for i in range(len(roots))
        for j in range(i + 1, len(roots))
        if abs(roots[i] - roots[j]) < DEGENERACY_TOL * root_scale
    ]
    return RootList(roots=roots, residuals=residuals, iterations=iterations, degenerate_pairs=pairs)


def build_quintic(params: SystemParams) -> ComplexPolynomial:
    """Quintic whose roots are ``x = sqrt(s + i delta')`` at the poles of b1(s).

    Coefficients ``[c0, c1, c2, c3, 0, 1]``.
    """
    d = derive(params)
    dp, k0 = d.delta_prime, d.k0
    c3 = params.gamma / 2 - 1j * (params.delta_g + dp)
    c2 = -1j * k0
    c1 = -dp * (params.delta_g + 0.5j * params.gamma)
    c0 = -k0 * dp
    return ComplexPolynomial((c0, c1, c2, c3, 0.0, 1.0))


def build_cubic(params: SystemParams) -> ComplexPolynomial:
    """Cubic factor ``x**3 + (gamma/2 - i delta_g) x - i K0`` of the quintic.

    The remaining factor ``x**2 - i delta'`` carries the ``s = 0`` pole.
    """
    d = derive(params)
    return ComplexPolynomial((-1j * d.k0, params.gamma / 2 - 1j * params.delta_g, 0.0, 1.0))


def quadratic_factor(params: SystemParams) -> ComplexPolynomial:
    return ComplexPolynomial((-1j * derive(params).delta_prime, 0.0, 1.0))


def multiply(a: ComplexPolynomial, b: ComplexPolynomial) -> ComplexPolynomial:
    return ComplexPolynomial(tuple(np.convolve(a.coefficients, b.coefficients)))


def match_root_sets(a, b) -> float:
    """Largest distance between two root multisets under optimal pairing."""
    from scipy.optimize import linear_sum_assignment

    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if len(rows) else 0.0

