import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from laguerre2d.quadrature import QuadratureError, integrate_line, integrate_plane


def test_line_gaussian():
    value, err = integrate_line(lambda x: np.exp(-x * x), 0.0, 9.0)
    assert value == pytest.approx(math.sqrt(math.pi), rel=1e-13)
    assert err <= 1e-10


def test_line_vectorized_shares_nodes():
    ks = np.array([0.0, 1.0, 3.0])
    value, _ = integrate_line(lambda x: np.exp(-x * x) * np.cos(ks[:, None] * x), 0.0, 9.0)
    np.testing.assert_allclose(value, math.sqrt(math.pi) * np.exp(-ks * ks / 4), rtol=1e-12, atol=1e-15)


def test_line_cancelling_integrand():
    # odd integrand: converges against the integral of |f|, not against zero
    value, _ = integrate_line(lambda x: x * np.exp(-x * x), 0.0, 9.0)
    assert abs(value) < 1e-14


def test_plane_gaussian():
    value, _ = integrate_plane(lambda w: np.exp(-abs(w) ** 2), 0.0, 9.0)
    assert value == pytest.approx(math.pi, rel=1e-12)


def test_plane_shifted_centre():
    c = 0.7 - 1.1j
    value, _ = integrate_plane(lambda w: np.exp(-abs(w - c) ** 2 / 0.5), c, 7.0)
    assert value == pytest.approx(0.5 * math.pi, rel=1e-12)


def test_line_non_convergence_raises():
    with pytest.raises(QuadratureError) as info:
        integrate_line(lambda x: np.sin(400 * x), 0.5, 3.0, max_panels=128)
    assert info.value.estimate is not None


def test_plane_non_convergence_raises():
    with pytest.raises(QuadratureError):
        integrate_plane(lambda w: np.sin(300 * w.real), 0.5, 3.0, max_panels=128)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(-1.2, 1.2), st.floats(-2.0, 2.0))
def test_line_complex_width(modulus, phase, shift):
    # integral of exp(-(x - c)^2 / r) with Re(1/r) > 0 is sqrt(pi r)
    r = cmath.rect(modulus, phase * 0.6)
    value, _ = integrate_line(lambda x: np.exp(-(x - shift) ** 2 / r), shift,
                              12 * math.sqrt(modulus / math.cos(phase * 0.6)))
    assert abs(value - cmath.sqrt(math.pi * r)) <= 1e-11 * abs(cmath.sqrt(math.pi * r))
