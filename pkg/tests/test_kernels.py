import numpy as np
import pytest

from laguerre2d import _pykernels

ck = pytest.importorskip("laguerre2d._ckernels")


def rel_gap(a, b):
    scale = np.maximum(np.abs(b), np.abs(b).max() * 1e-12)
    return float(np.max(np.abs(a - b) / scale))


@pytest.fixture
def points():
    rng = np.random.default_rng(3)
    zs = rng.normal(size=(4, 5)) + 1j * rng.normal(size=(4, 5))
    zps = rng.normal(size=(4, 5)) + 1j * rng.normal(size=(4, 5))
    return zs, zps


@pytest.mark.parametrize("normalized", [False, True])
def test_hermite_backends_agree(normalized):
    xs = np.linspace(-4, 4, 37) + 0.3j
    for n in (0, 1, 9, 30):
        assert rel_gap(ck.hermite_points(n, xs, normalized),
                       _pykernels.hermite_points(n, xs, normalized)) < 1e-12
    t_c = ck.hermite_table(1.3 - 0.2j, 40, normalized)
    t_p = _pykernels.hermite_table(1.3 - 0.2j, 40, normalized)
    assert rel_gap(t_c, t_p) < 1e-12


@pytest.mark.parametrize("normalized", [False, True])
@pytest.mark.parametrize("c", [1.0, 0.4, 0.0])
def test_table_backends_agree(normalized, c):
    a = ck.laguerre2d_table(0.7 + 0.2j, -0.3 + 1.1j, 12, 9, c, normalized)
    b = _pykernels.laguerre2d_table(0.7 + 0.2j, -0.3 + 1.1j, 12, 9, c, normalized)
    assert a.shape == (13, 10)
    assert rel_gap(a, b) < 1e-12


@pytest.mark.parametrize("normalized", [False, True])
def test_points_backends_agree(points, normalized):
    zs, zps = points
    a = ck.laguerre2d_points_table(zs, zps, 6, 7, normalized)
    b = _pykernels.laguerre2d_points_table(zs, zps, 6, 7, normalized)
    assert a.shape == zs.shape + (7, 8)
    assert rel_gap(a, b) < 1e-12
    for m, n in [(0, 0), (5, 2), (2, 7), (6, 6)]:
        pc = ck.laguerre2d_points(m, n, zs, zps, normalized)
        pp = _pykernels.laguerre2d_points(m, n, zs, zps, normalized)
        assert pc.shape == zs.shape
        assert rel_gap(pc, pp) < 1e-12
        assert rel_gap(pc, a[..., m, n]) < 1e-10


def test_points_accept_scalar_second_argument():
    zs = np.array([0.5, 1.0 + 1j])
    out = ck.laguerre2d_points(1, 1, zs, 2.0)
    np.testing.assert_allclose(out, zs * 2.0 - 1.0)


def test_readonly_inputs_are_accepted():
    zs = np.broadcast_to(np.array([0.3 + 0.1j]), (5,))
    assert ck.laguerre2d_points_table(zs, zs, 2, 2).shape == (5, 3, 3)
    assert ck.hermite_points(3, zs).shape == (5,)


def test_fallback_points_are_exactly_symmetric():
    # vectorized complex multiply can differ in the last bit between a*b and b*a
    z, zp = np.array([1 + 2.3125j]), np.array([2.210037058859049 + 3j])
    for m, n in ((1, 1), (3, 1), (0, 4)):
        assert _pykernels.laguerre2d_points(m, n, z, zp)[0] == _pykernels.laguerre2d_points(n, m, zp, z)[0]
