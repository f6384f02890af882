from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from laguerre2d import exact_id as ex
from laguerre2d.exact_id import ExactPoly2, GaussianRational


def test_monomial_inversion_examples():
    assert ex.check_monomial_inversion_2d(0, 0)
    assert ex.check_monomial_inversion_2d(1, 1)
    # z z' = L_{1,1} + L_{0,0}
    assert ex.laguerre2d_poly(1, 1) + ex.laguerre2d_poly(0, 0) == ExactPoly2.monomial(1, 1)


def test_monomial_inversion_exhaustive():
    assert all(ex.check_monomial_inversion_2d(m, n) for m in range(17) for n in range(17 - m))


def test_hermite_inversion():
    assert ex.check_hermite_inversion(0)
    # (2x)^2 = H_2 + 2 H_0
    assert ex.hermite_poly(2) + ex.hermite_poly(0) * 2 == ExactPoly2.monomial(2, 0, 4)
    assert ex.check_hermite_inversion(15)
    assert all(ex.check_hermite_inversion(n) for n in range(41))


def test_reordering():
    assert ex.check_reordering(0, 5)
    assert ex.check_reordering(1, 1)
    assert ex.check_reordering(4, 3)
    assert all(ex.check_reordering(k, l) for k in range(13) for l in range(13))


def test_laguerre_operator_identity():
    assert ex._apply_raising(ExactPoly2.constant(), 1, 0) == ExactPoly2.monomial(1, 0)
    assert ex._apply_raising(ExactPoly2.constant(), 2, 1) == ex.laguerre2d_poly(2, 1)
    assert ex.check_laguerre_operator_identity(3, 3)
    assert all(ex.check_laguerre_operator_identity(m, n) for m in range(9) for n in range(9))


def test_specialized_jacobi0():
    assert ex.check_specialized_jacobi0(0)
    assert ex.check_specialized_jacobi0(2)
    assert ex.check_specialized_jacobi0(25)
    assert all(ex.check_specialized_jacobi0(n) for n in range(31))


def test_sum_identity_values():
    assert ex.sum_identity(0, 0) == (1, 1)
    assert ex.sum_identity(1, 0) == (2, 2)
    assert ex.sum_identity(0, 1) == (2, 2)
    assert ex.sum_identity(2, 3)[1] == Fraction(2 ** 5, 2 * 6)


def test_sum_identity_both_forms():
    for m in range(13):
        for n in range(13):
            lhs, rhs = ex.sum_identity(m, n)
            assert lhs == rhs
            assert ex.sum_identity_second_form(m, n) == rhs


def test_operational_definitions():
    assert all(ex.check_laguerre_operational(m, n) for m in range(11) for n in range(11))
    assert all(ex.check_hermite_operational(n) for n in range(31))
    assert all(ex.check_hermite_operator_identity(n) for n in range(13))


def test_jacobi_monomial_expansion():
    assert all(ex.check_jacobi_monomial_expansion(m, n) for m in range(9) for n in range(9))


def test_checks_detect_a_wrong_coefficient(monkeypatch):
    original = ex.laguerre2d_poly

    def corrupted(m, n):
        poly = original(m, n)
        return poly + ExactPoly2.monomial(0, 0) if (m, n) == (1, 1) else poly

    monkeypatch.setattr(ex, "laguerre2d_poly", corrupted)
    assert not ex.check_monomial_inversion_2d(1, 1)
    assert not ex.check_laguerre_operator_identity(1, 1)
    assert not ex.check_laguerre_operational(1, 1)


def test_checks_detect_wrong_jacobi(monkeypatch):
    monkeypatch.setattr(ex, "jacobi0", lambda j, m, n: Fraction(1))
    assert not ex.check_specialized_jacobi0(2)
    assert not ex.check_sum_identity(1, 1)


def test_gaussian_rational_arithmetic():
    i = ex.I
    assert i * i == -1
    assert (1 + i) ** 2 == 2 * i
    assert GaussianRational(Fraction(1, 2)) == Fraction(1, 2)
    assert not GaussianRational()


def test_exact_poly_basics():
    p = ExactPoly2({(2, 1): Fraction(3), (0, 0): Fraction(0)})
    assert p.terms == {(2, 1): 3}
    assert p.diff(0) == ExactPoly2.monomial(1, 1, 6)
    assert p.diff(1, 2) == ExactPoly2()
    assert p.shift(1, 2) == ExactPoly2.monomial(3, 3, 3)
    assert p.degree() == 3
    assert p - p == ExactPoly2()
    with pytest.raises(ValueError):
        ExactPoly2({(-1, 0): Fraction(1)})


coeffs = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 100)
polys = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), coeffs,
                        max_size=6).map(ExactPoly2)


@settings(max_examples=100, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_leibniz_rule(a, b):
    for var in (0, 1):
        assert (a * b).diff(var) == a.diff(var) * b + a * b.diff(var)
