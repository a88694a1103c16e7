import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bandedge.specfun import SERIES_RADIUS, erfcx, erfcx_checked, erfcx_right, principal_sqrt

mpmath.mp.dps = 40

# e^{z^2} erfc(z) at z = 1+i from mpmath quadrature of
# (2/sqrt(pi)) int_0^inf exp(z^2 - (z+u)^2) du at 40 digits
ERFCX_1_PLUS_I = complex(0.3047442052569125924571388, -0.2082189382028316272874373)


def mp_erfcx(z):
    z = mpmath.mpc(z)
    return complex(mpmath.exp(z * z) * mpmath.erfc(z))


finite = st.floats(-30, 30, allow_nan=False)


@pytest.mark.parametrize("z, expected", [(1, 1), (-1, 1j), (2j, 1 + 1j), (complex(-1, -0.0), 1j)])
def test_principal_sqrt_examples(z, expected):
    assert principal_sqrt(z).value == pytest.approx(expected, abs=1e-15)


def test_principal_sqrt_random_squares():
    rng = np.random.default_rng(7)
    z = (rng.normal(size=10_000) + 1j * rng.normal(size=10_000)) * 10.0 ** rng.uniform(-5, 5, 10_000)
    for zi in z:
        r = principal_sqrt(zi)
        assert abs(r.value**2 - zi) <= 1e-14 * abs(zi)
        assert -math.pi / 2 < cmath.phase(r.value) <= math.pi / 2
        assert -math.pi < r.phase_of_square <= math.pi


def test_erfcx_zero_is_one():
    assert abs(erfcx(0) - 1) <= 1e-15


def test_erfcx_large_real_asymptotics():
    x = 25.0
    lead = 1 / (math.sqrt(math.pi) * x)
    two_terms = lead * (1 - 1 / (2 * x**2))
    three_terms = lead * (1 - 1 / (2 * x**2) + 3 / (4 * x**4))
    value = erfcx(x).real
    # the two-term truncation error is the next term, 3/(4 x^4) ~ 1.9e-6
    assert (value - two_terms) / two_terms == pytest.approx(3 / (4 * x**4), rel=1e-2)
    assert abs(value - three_terms) / three_terms < 1e-8


def test_erfcx_matches_quadrature_at_one_plus_i():
    assert abs(erfcx(1 + 1j) - ERFCX_1_PLUS_I) <= 1e-13 * abs(ERFCX_1_PLUS_I)


def test_erfcx_accuracy_on_polar_grid():
    worst = 0.0
    for r in np.linspace(0.0, 30.0, 121):
        for th in np.linspace(-math.pi, math.pi, 49):
            z = r * cmath.exp(1j * th)
            ref = mp_erfcx(z)
            worst = max(worst, abs(erfcx(z) - ref) / abs(ref))
    assert worst < 1e-12


def test_series_and_rational_agree_on_seam():
    th = np.linspace(-math.pi / 2, math.pi / 2, 721)
    z = SERIES_RADIUS * np.exp(1j * th)
    a = erfcx_right(z, "series")
    b = erfcx_right(z, "rational")
    assert np.max(np.abs(a - b) / np.abs(b)) < 1e-11


def test_left_half_plane_overflow_is_flagged():
    val, flag = erfcx_checked(-30.0 + 0.0j)
    assert flag and not np.isfinite(val)
    val, flag = erfcx_checked(-3.0 + 0.5j)
    assert not flag and np.isfinite(val)


def test_array_input():
    z = np.array([0, 1 + 1j, 25])
    out = erfcx(z)
    assert out.shape == (3,)
    assert out[1] == pytest.approx(ERFCX_1_PLUS_I, rel=1e-13)


@settings(max_examples=300, deadline=None)
@given(finite, finite)
def test_conjugate_symmetry(x, y):
    z = complex(x, y)
    a, b = erfcx(z.conjugate()), erfcx(z).conjugate()
    if np.isfinite(a):
        assert abs(a - b) <= 1e-13 * abs(b)


@settings(max_examples=300, deadline=None)
@given(st.floats(-5, 5), st.floats(-20, 20))
def test_reflection_identity(x, y):
    z = complex(x, y)
    lhs = erfcx(z) + erfcx(-z)
    rhs = 2 * cmath.exp(z * z)
    assert abs(lhs - rhs) <= 1e-12 * max(abs(rhs), abs(erfcx(z)), abs(erfcx(-z)))
