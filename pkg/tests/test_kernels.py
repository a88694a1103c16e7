import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bandedge import KernelSpec, kernel_laplace, kernel_time
from bandedge.errors import BranchCut, NotPointwise, SingularAtZero
from bandedge.kernels import density_of_modes, truncated_laplace

EDGE = cmath.exp(-0.25j * math.pi)


def dom_kernel(tau, beta=1.0, delta_prime=0.0, window=1e4):
    """beta^1.5 int rho(w) exp(-i (w - w12 - delta) tau) dw by direct quadrature.

    With u = w - w_g the phase is (u + delta') tau; u = v^2 removes the
    1/sqrt(u) singularity.  Composite Gauss-Legendre on [0, sqrt(window)]
    plus a two-term integration-by-parts tail for v > sqrt(window).
    """
    vmax = math.sqrt(window)
    nodes, weights = np.polynomial.legendre.leggauss(16)
    edges = np.linspace(0.0, vmax, int(vmax / 0.004) + 1)
    a, b = edges[:-1, None], edges[1:, None]
    v = 0.5 * (b - a) * nodes + 0.5 * (a + b)
    w = 0.5 * (b - a) * weights
    # 2 v rho(v^2) dv = (2/pi) dv
    body = np.sum(w * 2 * v * density_of_modes(v * v) * math.pi / 2 * np.exp(-1j * tau * v * v))
    e = cmath.exp(-1j * tau * vmax**2)
    tail = e * (1 / (2j * tau * vmax) - 1 / ((2j * tau) ** 2 * vmax**3))
    return beta**1.5 * cmath.exp(-1j * delta_prime * tau) * (2 / math.pi) * (body + tail)


def test_density_of_modes():
    rho = density_of_modes(np.array([-1.0, 0.0, 4.0]), w_g=0.0)
    assert rho[0] == 0 and rho[1] == 0
    assert rho[2] == pytest.approx(1 / (2 * math.pi))


def test_kernel_time_at_one_over_pi():
    assert kernel_time(KernelSpec(beta=1.0), 1 / math.pi) == pytest.approx(EDGE, abs=1e-15)


def test_kernel_time_leading_singularity():
    spec = KernelSpec(beta=2.0, delta_prime=0.3)
    for tau in (1e-4, 1e-8, 1e-12):
        assert abs(kernel_time(spec, tau)) * math.sqrt(tau) == pytest.approx(2.0**1.5 / math.sqrt(math.pi), rel=1e-12)


def test_kernel_time_phase_without_oscillation():
    spec = KernelSpec(beta=1.0, delta_prime=2.0)
    for tau in (0.01, 0.7, 3.0, 41.0):
        assert cmath.phase(kernel_time(spec, tau) * cmath.exp(2j * tau)) == pytest.approx(-math.pi / 4, abs=1e-12)


@pytest.mark.parametrize("tau", [0.1, 1.0, 10.0])
@pytest.mark.parametrize("delta_prime", [0.0, 0.7])
def test_kernel_time_matches_density_of_modes(tau, delta_prime):
    spec = KernelSpec(beta=1.0, delta_prime=delta_prime)
    exact = kernel_time(spec, tau)
    assert abs(dom_kernel(tau, 1.0, delta_prime) - exact) <= 1e-4 * abs(exact)


def test_kernel_time_errors():
    with pytest.raises(SingularAtZero):
        kernel_time(KernelSpec(), 0.0)
    with pytest.raises(NotPointwise):
        kernel_time(KernelSpec.flat(1.0), 1.0)


def test_kernel_laplace_examples():
    spec = KernelSpec(beta=1.0)
    assert kernel_laplace(spec, 1) == pytest.approx(EDGE, abs=1e-15)
    assert kernel_laplace(spec, 4) == pytest.approx(EDGE / 2, abs=1e-15)
    assert kernel_laplace(KernelSpec.flat(2.0), 0.3 + 7j) == 1.0


def test_kernel_laplace_branch_cut():
    spec = KernelSpec(beta=1.0, delta_prime=0.5)
    with pytest.raises(BranchCut):
        kernel_laplace(spec, -3 - 0.5j)
    kernel_laplace(spec, -3 - 0.4j)


@pytest.mark.parametrize("s", [0.5, 1 + 1j, 2 - 0.5j])
@pytest.mark.parametrize("delta_prime", [0.0, -0.6])
def test_truncated_laplace_consistency(s, delta_prime):
    spec = KernelSpec(beta=1.0, delta_prime=delta_prime)
    exact = kernel_laplace(spec, s)
    assert abs(truncated_laplace(spec, s, 200.0) - exact) <= 1e-6 * abs(exact)


def test_truncated_laplace_independent_midpoint_check():
    # crude midpoint rule in t after t = u^2, no scipy
    spec = KernelSpec(beta=1.0)
    s = 1 + 1j
    u = (np.arange(200_000) + 0.5) * (math.sqrt(200.0) / 200_000)
    approx = np.sum(2 * EDGE * np.exp(-s * u * u) / math.sqrt(math.pi)) * (math.sqrt(200.0) / 200_000)
    assert abs(approx - kernel_laplace(spec, s)) < 1e-8


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 5), st.floats(-5, 5), st.floats(-3, 3), st.floats(0.1, 4))
def test_laplace_conjugate_symmetry(re, im, dp, beta):
    s = complex(re, im)
    a = kernel_laplace(KernelSpec(beta=beta, delta_prime=-dp), s.conjugate())
    b = kernel_laplace(KernelSpec(beta=beta, delta_prime=dp), s)
    # the sqrt part is conjugate-symmetric; the edge phase e^{-i pi/4} is not real
    assert a == pytest.approx(b.conjugate() * EDGE / EDGE.conjugate(), rel=1e-13)
