import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from laguerre2d import genfun
from laguerre2d import su11_ops as so
from laguerre2d.exact_id import GaussianRational

# mpmath quadrature of the defining integrals (tests/oracles/su11_oracles.py)
ORACLE = {
    "hermite3": {-1.0: 0.96040160950342235, 0.0: -0.4221214414100295, 1.5: 0.31113376223463638},
    "laguerre21": {
        0.5 + 0.5j: complex(-0.2094500775670033, -0.2094500775670033),
        -1.0 + 0.25j: complex(0.21174549527701096, -0.05293637381925274),
        1.25 - 0.75j: complex(-0.048139842124638769, 0.028883905274783261),
    },
}

small = st.floats(-2, 2, allow_nan=False)
cplx = st.builds(complex, small, small)
# width parameters with |arg| <= 0.4, inside every decay condition
width = st.builds(lambda m, a: cmath.rect(m, a), st.floats(0.3, 2.0), st.floats(-0.4, 0.4))
sign = st.sampled_from([1, -1])


def grid_1d(n=9):
    return np.linspace(-2.0, 2.0, n) + 0.013


def grid_2d():
    xs = np.array([-1.2, 0.1, 1.3])
    return (xs[:, None] + 1j * np.array([-0.9, 0.2, 1.1])[None, :]).ravel()


# -- disentanglement -------------------------------------------------------------------

def test_zero_input_gives_identity():
    m = so.disentangle(so.DisentangleInput(0, 0, 0))
    assert np.array_equal(m.as_array(), np.eye(2))


@pytest.mark.parametrize("s,r", [(0.5, 2.0), (1.0, 0.25), (-0.75, 4.0), (3.0, -0.5)])
def test_heat_specializations_match_exactly_on_dyadic_values(s, r):
    for build, expected in ((so.heat_input_1d, so.heat_matrix_1d), (so.heat_input_2d, so.heat_matrix_2d)):
        got = so.disentangle(build(s, r)).as_array()
        assert np.array_equal(got, np.array(expected(s, r), dtype=complex))


@pytest.mark.parametrize("s,r", [
    (Fraction(1, 3), Fraction(5, 7)),
    (Fraction(-2, 9), Fraction(11, 4)),
    (GaussianRational(Fraction(1, 2), Fraction(1, 5)), GaussianRational(Fraction(3), Fraction(-1, 7))),
])
def test_heat_specializations_exact(s, r):
    s, r = GaussianRational.coerce(s), GaussianRational.coerce(r)
    i = GaussianRational(Fraction(0), Fraction(1))
    one_d = so.disentangle_nilpotent(s / 2, i * s / r, -2 * s / (r * r))
    two_d = so.disentangle_nilpotent(s, i * s / r, -s / (r * r))
    assert one_d == so.heat_matrix_1d(s, r)
    assert two_d == so.heat_matrix_2d(s, r)


def test_exact_route_rejects_nonzero_eps():
    with pytest.raises(ValueError):
        so.disentangle_nilpotent(1, 0, 1)


@pytest.mark.parametrize("s,r", [(0.37, 1.9), (0.2 + 0.3j, 1.1 - 0.4j)])
def test_heat_specializations_generic_floats(s, r):
    got = so.disentangle(so.heat_input_1d(s, r)).as_array()
    assert np.allclose(got, np.array(so.heat_matrix_1d(s, r), dtype=complex), rtol=0, atol=1e-15)


@settings(max_examples=200, deadline=None)
@given(cplx, cplx, cplx, sign)
def test_unimodular_and_branch_free(xi, eta, zeta, branch):
    inp = so.DisentangleInput(xi, eta, zeta)
    m = so.disentangle(inp, branch)
    assert abs(m.det() - 1) <= 1e-12 * max(1.0, abs(m.kappa * m.nu))
    other = so.disentangle(inp, -branch)
    assert np.allclose(m.as_array(), other.as_array(), rtol=1e-14, atol=0)


@settings(max_examples=100, deadline=None)
@given(cplx, cplx, st.floats(0, 1e-6), st.floats(-math.pi, math.pi))
def test_near_degenerate(xi, eta, eps_mod, eps_arg):
    if abs(xi) < 0.1:
        xi = 0.5
    eps2 = cmath.rect(eps_mod, eps_arg) ** 2
    inp = so.DisentangleInput(xi, eta, (eta * eta + eps2) / xi)
    m = so.disentangle(inp)
    assert abs(m.det() - 1) <= 1e-12
    assert np.allclose(m.as_array(), expm(so.generator_matrix(inp)), rtol=1e-12, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(cplx, cplx, cplx)
def test_matches_matrix_exponential_and_ordered_factors(xi, eta, zeta):
    inp = so.DisentangleInput(xi, eta, zeta)
    m = so.disentangle(inp)
    ref = expm(so.generator_matrix(inp))
    scale = max(1.0, np.abs(ref).max())
    assert np.abs(m.as_array() - ref).max() <= 1e-11 * scale
    if abs(m.kappa) > 1e-3:
        k_minus, k_zero, k_plus = so.sl2_generators()
        a, b, c = so.ordered_exponents(m)
        product = expm(a * k_plus) @ expm(b * k_minus) @ expm(c * 2 * k_zero)
        assert np.abs(product - ref).max() <= 1e-9 * scale


@pytest.mark.parametrize("mod", [0.5e-4, 0.99e-4, 1.01e-4, 2e-4])
def test_series_crossover_is_seamless(mod):
    inp = so.DisentangleInput(1.0, 0.0, mod * mod)
    m = so.disentangle(inp)
    assert m.kappa == pytest.approx(math.cosh(mod), rel=1e-15)
    assert m.lam == pytest.approx(math.sinh(mod) / mod, rel=1e-15)


def test_sl2_commutators():
    k_minus, k_zero, k_plus = so.sl2_generators()
    comm = lambda a, b: a @ b - b @ a
    assert np.allclose(comm(k_minus, k_plus), 2 * k_zero)
    assert np.allclose(comm(k_zero, k_minus), -k_minus)
    assert np.allclose(comm(k_zero, k_plus), k_plus)


def test_nonfinite_input_rejected():
    with pytest.raises(ValueError):
        so.DisentangleInput(float("nan"), 0, 0)


# -- quadrature oracles ----------------------------------------------------------------

def test_conv_1d_of_two_unit_gaussians():
    xs = np.array([-1.5, 0.0, 0.7, 2.0])
    conv = so.gauss_conv_1d_oracle(1.0, so.normalized_gaussian_1d(1.0), scale=0.5)
    expected = np.exp(-xs ** 2 / 2) / math.sqrt(2 * math.pi)
    assert np.allclose(conv(xs), expected, rtol=1e-10, atol=0)


def test_conv_1d_of_constant():
    conv = so.gauss_conv_1d_oracle(0.7 + 0.2j, np.ones_like)
    assert np.allclose(conv(np.array([-1.0, 0.0, 3.0])), 1.0, rtol=1e-10)


def test_conv_1d_narrow_gaussian_approaches_heat_kernel():
    probe = so.delta_surrogate_1d(0.5, grid_1d(), x0=0.3, r=1e-4)
    assert so.max_rel_err(probe.oracle, probe.exact) <= 1e-8
    assert so.max_rel_err(probe.oracle, probe.limit) <= 20 * probe.r / 0.5 * 5


def test_conv_2d_examples():
    zs = grid_2d()
    oracle, exact = so.width_addition_2d(0.6, 0.9, zs)
    assert so.max_rel_err(oracle, exact) <= 1e-9
    ones = so.gauss_conv_2d_oracle(0.8, lambda u, up: np.ones_like(u))(zs)
    assert np.allclose(ones, 1.0, rtol=1e-10)
    t, s = 0.7, 0.5
    conv = so.gauss_conv_2d_oracle(s, lambda u, up: np.exp(-t * u * up), scale=0.5)
    expected = np.exp(-t * np.abs(zs) ** 2 / (1 + t * s)) / (1 + t * s)
    assert so.max_rel_err(conv(zs), expected) <= 1e-9


def test_kernel_without_decay_rejected():
    with pytest.raises(so.DecayError):
        so.gauss_conv_1d_oracle(-1.0, np.ones_like)
    with pytest.raises(so.DecayError):
        so.op_identity_1d(so.ConvParams1D(-1.0, 0.5), so.Source1D(so.Kind1D.CONSTANT), [0.0])
    with pytest.raises(so.DecayError):
        so.sigma_tau_identity(1.0, 2.0, 2.0, [0.0])


# -- operator identities ----------------------------------------------------------------

def test_hermite_example_against_frozen_quadrature():
    xs = np.array(sorted(ORACLE["hermite3"]))
    oracle, closed = so.op_identity_1d(so.ConvParams1D(1.0, 0.5, 0.2),
                                       so.Source1D(so.Kind1D.HERMITE, 3), xs)
    frozen = np.array([ORACLE["hermite3"][x] for x in xs])
    assert so.max_rel_err(closed, frozen) <= 1e-12
    assert so.max_rel_err(oracle, frozen) <= 1e-7


def test_laguerre_example_against_frozen_quadrature():
    zs = np.array(list(ORACLE["laguerre21"]))
    frozen = np.array(list(ORACLE["laguerre21"].values()))
    oracle, closed = so.op_identity_2d(so.ConvParams2D(1.0, 0.4),
                                       so.Source2D(so.Kind2D.LAGUERRE2D, 2, 1), zs)
    assert so.max_rel_err(closed, frozen) <= 1e-12
    assert so.max_rel_err(oracle, frozen) <= 1e-6


def test_laguerre_example_on_grid():
    g = np.linspace(-1.5, 1.5, 4) + 0.01
    zs = (g[:, None] + 1j * g[None, :]).ravel()
    zs = zs[np.abs(zs) <= 1.5]
    oracle, closed = so.op_identity_2d(so.ConvParams2D(1.0, 0.4),
                                       so.Source2D(so.Kind2D.LAGUERRE2D, 2, 1), zs)
    assert so.max_rel_err(oracle, closed) <= 1e-6


def test_constant_reduces_to_width_addition():
    r, s = 0.8, 0.6
    xs = grid_1d()
    _, closed = so.op_identity_1d(so.ConvParams1D(r, s), so.Source1D(so.Kind1D.CONSTANT), xs)
    _, added = so.width_addition_1d(r, s, xs)
    assert np.allclose(closed / math.sqrt(math.pi * r), added, rtol=1e-14)
    mono0 = so.op_closed_1d(so.ConvParams1D(r, s), so.Source1D(so.Kind1D.MONOMIAL, 0), xs)
    assert np.allclose(mono0, math.sqrt(r / (r + s)) * np.exp(-xs ** 2 / (r + s)), rtol=1e-14)


def test_monomial_00_is_planar_width_addition():
    zs = grid_2d()
    closed = so.op_closed_2d(so.ConvParams2D(0.7, 0.5), so.Source2D(so.Kind2D.MONOMIAL), zs)
    _, added = so.width_addition_2d(0.7, 0.5, zs)
    assert np.allclose(closed / (math.pi * 0.7), added, rtol=1e-14)


@pytest.mark.parametrize("kind,n", [(so.Kind1D.MONOMIAL, 0), (so.Kind1D.MONOMIAL, 5),
                                    (so.Kind1D.HERMITE, 4), (so.Kind1D.GAUSSIAN, 0),
                                    (so.Kind1D.CONSTANT, 0)])
def test_1d_identities_complex_parameters(kind, n):
    params = so.ConvParams1D(0.9 + 0.3j, 0.7 - 0.2j, 0.4 - 0.1j)
    source = so.Source1D(kind, n, q=0.6 + 0.1j)
    oracle, closed = so.op_identity_1d(params, source, grid_1d())
    assert so.max_rel_err(oracle, closed) <= 1e-6
    oracle, closed = so.op_identity_1d_swapped(params, source, grid_1d())
    assert so.max_rel_err(oracle, closed) <= 1e-6


@pytest.mark.parametrize("source", [
    so.Source2D(so.Kind2D.MONOMIAL, 3, 1),
    so.Source2D(so.Kind2D.LAGUERRE2D, 1, 2),
    so.Source2D(so.Kind2D.GAUSSIAN, q=0.5 - 0.2j),
    so.Source2D(so.Kind2D.SIGMA_TAU, sigma2=0.3 + 0.2j, tau2=-0.25),
])
def test_2d_identities_complex_parameters(source):
    params = so.ConvParams2D(1.1 - 0.2j, 0.5 + 0.1j, 0.3 + 0.2j, -0.1 + 0.4j)
    zs = grid_2d()
    oracle, closed = so.op_identity_2d(params, source, zs)
    assert so.max_rel_err(oracle, closed) <= 1e-6
    oracle, closed = so.op_identity_2d_swapped(params, source, zs)
    assert so.max_rel_err(oracle, closed) <= 1e-6


@settings(max_examples=15, deadline=None)
@given(width, width, st.floats(-1, 1), st.integers(0, 5))
def test_hermite_identity_property(r, s, x0, n):
    oracle, closed = so.op_identity_1d(so.ConvParams1D(r, s, x0), so.Source1D(so.Kind1D.HERMITE, n),
                                       grid_1d())
    assert so.max_rel_err(oracle, closed, floor=1e-3 * np.abs(closed).max()) <= 1e-6


@settings(max_examples=30, deadline=None)
@given(width, width, cplx, sign, st.integers(0, 6))
def test_root_sign_invariance(r, s, x0, sgn, n):
    xs = grid_1d()
    for kind in (so.Kind1D.MONOMIAL, so.Kind1D.HERMITE):
        params = so.ConvParams1D(r, s, x0)
        a = so.op_closed_1d(params, so.Source1D(kind, n), xs, sign=sgn)
        b = so.op_closed_1d(params, so.Source1D(kind, n), xs, sign=-sgn)
        assert np.allclose(a, b, rtol=1e-12, atol=1e-300)
    zs = grid_2d()
    for kind in (so.Kind2D.MONOMIAL, so.Kind2D.LAGUERRE2D):
        params = so.ConvParams2D(r, s, x0, x0.conjugate())
        a = so.op_closed_2d(params, so.Source2D(kind, n, 6 - n), zs, sign=sgn)
        b = so.op_closed_2d(params, so.Source2D(kind, n, 6 - n), zs, sign=-sgn)
        assert np.allclose(a, b, rtol=1e-12, atol=1e-300)


def test_composite_root_is_not_shortened():
    # sqrt(-r s (r+s)) / (r+s) differs from sqrt(-r s/(r+s)) by a sign here
    r, s = -1.0 + 0.1j, -0.5
    full = so.composite_root(-r * s / (r + s), r + s)
    short = cmath.sqrt(-r * s / (r + s))
    assert abs(full * full - short * short) < 1e-14
    assert abs(full + short) < 1e-14


# -- sigma/tau Gaussian ------------------------------------------------------------------

def test_sigma_tau_identity_against_quadrature():
    oracle, closed = so.sigma_tau_identity(0.7, 0.3 + 0.2j, -0.4, grid_2d())
    assert so.max_rel_err(oracle, closed) <= 1e-8


@settings(max_examples=40, deadline=None)
@given(cplx, cplx, st.floats(-0.8, 0.8), st.floats(-0.8, 0.8))
def test_sigma_tau_at_minus_one_is_even_index_closed_form(z, zp, sig, tau):
    closed = so.sigma_tau_closed(-1.0, sig * sig, tau * tau, z, zp)
    assert abs(closed - genfun.even_index_rhs(sig, tau, z, zp)) <= 1e-13 * abs(closed)


@settings(max_examples=40, deadline=None)
@given(width, cplx, st.builds(complex, st.floats(-0.3, 0.3), st.floats(-0.3, 0.3)),
       st.builds(complex, st.floats(-0.3, 0.3), st.floats(-0.3, 0.3)))
def test_sigma_tau_series_matches_closed_form(s, z, sigma2, tau2):
    zp = z.conjugate() + 0.3
    closed = complex(so.sigma_tau_closed(s, sigma2, tau2, z, zp))
    assert abs(so.sigma_tau_series(s, sigma2, tau2, z, zp) - closed) <= 1e-10 * max(1.0, abs(closed))


# -- scaling operator --------------------------------------------------------------------

def test_scaling_identity_at_zero():
    series, direct = so.scaling_operator_values(0.0, (0.5, -1.0, 2.0), 0.3, [0.4, -1.1])
    assert np.allclose(series, direct, rtol=1e-13)


@pytest.mark.parametrize("n", [0, 1, 4, 7])
def test_scaling_monomial_eigenfunction(n):
    gamma, x = 0.3 - 0.2j, 1.1
    coeffs = [0.0] * n + [1.0]
    series, _ = so.scaling_operator_values(gamma, coeffs, 0.0, [x])
    assert series[0] == pytest.approx(cmath.exp(gamma * n) * x ** n, rel=1e-14)


def test_scaling_gaussian_example():
    series, direct = so.scaling_operator_values(0.2, (1.0,), 1.0, [1.3])
    assert abs(direct[0] - math.exp(-(math.exp(0.2) * 1.3) ** 2)) <= 1e-15
    assert abs(series[0] - direct[0]) <= 1e-12 * abs(direct[0])
    assert so.scaling_operator_check(0.2, (1.0,), 1.0, [1.3])


def test_scaling_check_detects_mismatch():
    assert not so.scaling_operator_check(0.2, (1.0,), 1.0, [1.3], tol=-1.0)


@settings(max_examples=50, deadline=None)
@given(st.builds(complex, st.floats(-0.3, 0.3), st.floats(-0.3, 0.3)),
       st.builds(complex, st.floats(-1, 1), st.floats(-1, 1)),
       st.lists(st.floats(-2, 2), min_size=1, max_size=4), cplx)
def test_scaling_property_2d(lam, b, coeffs, z):
    grid = np.array(coeffs + [0.0] * (4 - len(coeffs))).reshape(2, 2)
    zs, zps = np.array([z * 0.7]), np.array([z.conjugate() * 0.7 + 0.1])
    assert so.scaling_operator_check_2d(lam, grid, b, zs, zps)


def test_scaling_2d_has_extra_exponential_prefactor():
    series, direct = so.scaling_operator_values_2d(0.25, [[0, 0], [0, 1]], 0.0, [0.6], [0.4])
    assert series[0] == pytest.approx(math.exp(0.25 * 3) * 0.24, rel=1e-14)
    assert direct[0] == pytest.approx(series[0], rel=1e-14)


# -- semigroup -----------------------------------------------------------------------------

@pytest.mark.parametrize("s1,s2,r", [(0.3, 0.5, 0.8), (0.2 + 0.1j, 0.6, 1.0 - 0.2j)])
def test_semigroup(s1, s2, r):
    composed, direct = so.semigroup_1d(s1, s2, r, grid_1d(), x0=0.2)
    assert so.max_rel_err(composed, direct) <= 1e-8
    composed, direct = so.semigroup_2d(s1, s2, r, grid_2d(), z0=0.2 - 0.3j)
    assert so.max_rel_err(composed, direct) <= 1e-8


def test_delta_surrogate_2d():
    probe = so.delta_surrogate_2d(0.6, grid_2d(), z0=0.1 + 0.2j)
    assert so.max_rel_err(probe.oracle, probe.exact) <= 1e-8
    assert so.max_rel_err(probe.oracle, probe.limit) <= 0.01
