"""SU(1,1) disentanglement and Gaussian-convolution operator identities.

Two realizations of the Lie algebra matter here. In one variable the heat
operator ``exp(s/4 d^2/dx^2)`` is convolution with a normalized Gaussian of
width parameter ``s``; in two variables ``exp(s d^2/dz dz')`` is the planar
analogue on ``z' = conj(z)``. Every closed form below is compared against a
direct quadrature of that convolution (:func:`gauss_conv_1d_oracle`,
:func:`gauss_conv_2d_oracle`), never against another closed form only.

The abstract generators are not represented as operators. Only the 2x2
fundamental representation (for the disentanglement map) and the closed
forms the realizations imply are implemented.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.signal import convolve2d

from laguerre2d import genfun
from laguerre2d import poly_core as pc
from laguerre2d.exact_id import GaussianRational, I as EXACT_I
from laguerre2d.quadrature import integrate_line, integrate_plane

SERIES_CUTOFF = 1e-4
SERIES_TERMS = 5
QUAD_RTOL = 1e-10
WINDOW_SIGMAS = 9.0


class DecayError(ValueError):
    """Convolution parameters for which the quadrature integrand does not decay."""


def _finite(*values) -> None:
    for v in values:
        v = complex(v)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError(f"non-finite input {v!r}")


# -- disentanglement -----------------------------------------------------------

@dataclass(frozen=True)
class DisentangleInput:
    """Coefficients of ``exp(xi K- + i eta 2K0 - zeta K+)``."""

    xi: complex
    eta: complex
    zeta: complex

    def __post_init__(self):
        _finite(self.xi, self.eta, self.zeta)

    @property
    def eps_squared(self) -> complex:
        return complex(self.xi) * complex(self.zeta) - complex(self.eta) ** 2


@dataclass(frozen=True)
class UnimodularMatrix:
    kappa: complex
    lam: complex
    mu: complex
    nu: complex

    def det(self) -> complex:
        return self.kappa * self.nu - self.lam * self.mu

    def as_array(self) -> np.ndarray:
        return np.array([[self.kappa, self.lam], [self.mu, self.nu]], dtype=np.complex128)


def _cosh_and_sinhc(eps2: complex, branch: int) -> tuple[complex, complex]:
    """cosh(eps) and sinh(eps)/eps given eps^2; both are even in eps."""
    if abs(eps2) < SERIES_CUTOFF ** 2:
        ch = shc = 0j
        power = 1 + 0j
        for k in range(SERIES_TERMS):
            ch += power / math.factorial(2 * k)
            shc += power / math.factorial(2 * k + 1)
            power *= eps2
        return ch, shc
    eps = branch * cmath.sqrt(eps2)
    return cmath.cosh(eps), cmath.sinh(eps) / eps


def disentangle(inp: DisentangleInput, branch: int = 1) -> UnimodularMatrix:
    """Matrix (kappa, lambda; mu, nu) of the ordered-factor form.

    ``branch`` picks the sign of ``eps = sqrt(xi zeta - eta^2)``; the result
    does not depend on it.
    """
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    xi, eta, zeta = complex(inp.xi), complex(inp.eta), complex(inp.zeta)
    ch, shc = _cosh_and_sinhc(inp.eps_squared, branch)
    return UnimodularMatrix(ch - 1j * eta * shc, xi * shc, zeta * shc, ch + 1j * eta * shc)


def disentangle_nilpotent(xi, eta, zeta) -> tuple[tuple[GaussianRational, GaussianRational],
                                                  tuple[GaussianRational, GaussianRational]]:
    """Exact matrix when xi*zeta - eta^2 vanishes exactly (cosh = 1, sinh(e)/e = 1)."""
    xi, eta, zeta = (GaussianRational.coerce(v) for v in (xi, eta, zeta))
    if xi * zeta - eta * eta:
        raise ValueError("exact disentanglement needs xi*zeta - eta^2 == 0")
    ieta = EXACT_I * eta
    return (1 - ieta, xi), (zeta, 1 + ieta)


def heat_input_1d(s, r) -> DisentangleInput:
    """Coefficients met when the 1D heat operator passes a Gaussian of width r."""
    s, r = complex(s), complex(r)
    return DisentangleInput(s / 2, 1j * s / r, -2 * s / r ** 2)


def heat_input_2d(s, r) -> DisentangleInput:
    s, r = complex(s), complex(r)
    return DisentangleInput(s, 1j * s / r, -s / r ** 2)


def heat_matrix_1d(s, r):
    """Expected matrix for :func:`heat_input_1d`; exact for Fraction/GaussianRational input."""
    return (1 + s / r, s / 2), (-2 * s / r ** 2, 1 - s / r)


def heat_matrix_2d(s, r):
    return (1 + s / r, s), (-s / r ** 2, 1 - s / r)


def generator_matrix(inp: DisentangleInput) -> np.ndarray:
    """Image of ``xi K- + i eta 2K0 - zeta K+`` in the fundamental representation."""
    xi, eta, zeta = complex(inp.xi), complex(inp.eta), complex(inp.zeta)
    return np.array([[-1j * eta, xi], [zeta, 1j * eta]], dtype=np.complex128)


def sl2_generators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(K-, K0, K+) as 2x2 matrices with [K-,K+] = 2K0, [K0,K+-] = +-K+-."""
    k_minus = np.array([[0, 1], [0, 0]], dtype=np.complex128)
    k_zero = np.array([[-0.5, 0], [0, 0.5]], dtype=np.complex128)
    k_plus = np.array([[0, 0], [-1, 0]], dtype=np.complex128)
    return k_minus, k_zero, k_plus


def ordered_exponents(mat: UnimodularMatrix) -> tuple[complex, complex, complex]:
    """(a, b, c) with the group element equal to exp(a K+) exp(b K-) exp(c 2K0)."""
    return -mat.mu / mat.kappa, mat.lam * mat.kappa, -cmath.log(mat.kappa)


def ordered_product(mat: UnimodularMatrix) -> np.ndarray:
    """Fundamental-representation product of the three ordered factors."""
    a, b, c = ordered_exponents(mat)
    plus = np.array([[1, 0], [-a, 1]], dtype=np.complex128)
    minus = np.array([[1, b], [0, 1]], dtype=np.complex128)
    zero = np.diag([cmath.exp(-c), cmath.exp(c)])
    return plus @ minus @ zero


# -- convolution parameters and source functions -------------------------------

def _re_inv(x: complex) -> float:
    return (1 / complex(x)).real


@dataclass(frozen=True)
class ConvParams1D:
    """Gaussian weight exp(-(x - x0)^2 / r) smoothed by the heat operator of parameter s."""

    r: complex
    s: complex
    x0: complex = 0.0

    def __post_init__(self):
        _finite(self.r, self.s, self.x0)

    def decays(self) -> bool:
        r, s = complex(self.r), complex(self.s)
        if r == 0 or s == 0 or r + s == 0:
            return False
        return _re_inv(r) > 0 and _re_inv(s) > 0 and _re_inv(r + s) > 0


@dataclass(frozen=True)
class ConvParams2D:
    """Weight exp(-(z - z0)(z' - z0p) / r) smoothed by exp(s d^2/dz dz')."""

    r: complex
    s: complex
    z0: complex = 0.0
    z0p: complex = 0.0

    def __post_init__(self):
        _finite(self.r, self.s, self.z0, self.z0p)

    def decays(self) -> bool:
        return ConvParams1D(self.r, self.s).decays()


class Kind1D(enum.Enum):
    MONOMIAL = "monomial"
    HERMITE = "hermite"
    GAUSSIAN = "gaussian"
    CONSTANT = "constant"


class Kind2D(enum.Enum):
    MONOMIAL = "monomial"
    LAGUERRE2D = "laguerre2d"
    GAUSSIAN = "gaussian"
    SIGMA_TAU = "sigma_tau"


@dataclass(frozen=True)
class Source1D:
    """A function of one variable with a known image under the heat operator.

    MONOMIAL is (2x)^n, HERMITE is H_n(x), GAUSSIAN is exp(-x^2/q).
    """

    kind: Kind1D
    n: int = 0
    q: complex = 1.0

    def values(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.complex128)
        if self.kind is Kind1D.MONOMIAL:
            return (2 * u) ** self.n
        if self.kind is Kind1D.HERMITE:
            return pc.hermite_points(self.n, u)
        if self.kind is Kind1D.GAUSSIAN:
            return np.exp(-u * u / complex(self.q))
        return np.ones_like(u)

    def root_squared(self, a: complex) -> complex:
        """Square of the rescaling root for heat parameter a."""
        return -a if self.kind is Kind1D.MONOMIAL else 1 - a

    def heat(self, a, y, root: Optional[complex] = None) -> np.ndarray:
        """exp(a/4 d^2/dy^2) applied to the source, evaluated at y."""
        a = complex(a)
        y = np.asarray(y, dtype=np.complex128)
        if self.kind is Kind1D.CONSTANT:
            return np.ones_like(y)
        if self.kind is Kind1D.GAUSSIAN:
            q = complex(self.q)
            return cmath.sqrt(q / (q + a)) * np.exp(-y * y / (q + a))
        if root is None:
            root = cmath.sqrt(self.root_squared(a))
        return root ** self.n * pc.hermite_points(self.n, y / root)


@dataclass(frozen=True)
class Source2D:
    """A function of (z, z') with a known image under exp(a d^2/dz dz').

    MONOMIAL is z^m z'^n, LAGUERRE2D is L_{m,n}(z, z'), GAUSSIAN is
    exp(-z z'/q) and SIGMA_TAU is exp(-sigma2 z^2/2 - tau2 z'^2/2).
    """

    kind: Kind2D
    m: int = 0
    n: int = 0
    q: complex = 1.0
    sigma2: complex = 0.0
    tau2: complex = 0.0

    def values(self, u, up) -> np.ndarray:
        u = np.asarray(u, dtype=np.complex128)
        up = np.asarray(up, dtype=np.complex128)
        if self.kind is Kind2D.MONOMIAL:
            return u ** self.m * up ** self.n
        if self.kind is Kind2D.LAGUERRE2D:
            return pc.laguerre2d_points(self.m, self.n, u, up)
        if self.kind is Kind2D.GAUSSIAN:
            return np.exp(-u * up / complex(self.q))
        return np.exp(-complex(self.sigma2) * u * u / 2 - complex(self.tau2) * up * up / 2)

    def root_squared(self, a: complex) -> complex:
        return -a if self.kind is Kind2D.MONOMIAL else 1 - a

    def heat(self, a, w, wp, root: Optional[complex] = None) -> np.ndarray:
        """exp(a d^2/dw dw') applied to the source, evaluated at (w, w')."""
        a = complex(a)
        w = np.asarray(w, dtype=np.complex128)
        wp = np.asarray(wp, dtype=np.complex128)
        if self.kind is Kind2D.GAUSSIAN:
            q = complex(self.q)
            return q / (q + a) * np.exp(-w * wp / (q + a))
        if self.kind is Kind2D.SIGMA_TAU:
            return sigma_tau_closed(a, self.sigma2, self.tau2, w, wp)
        if root is None:
            root = cmath.sqrt(self.root_squared(a))
        return root ** (self.m + self.n) * pc.laguerre2d_points(self.m, self.n, w / root, wp / root)


def composite_root(root_squared: complex, total: complex, sign: int = 1) -> complex:
    """sign * sqrt(root_squared * total^2) / total, the unshortened rescaling root.

    Written this way the sign of the full root ``sqrt(-r s (r+s))`` (or
    ``sqrt((r+s-rs)(r+s))``) is chosen once and used consistently in both
    the prefactor and the polynomial argument.
    """
    total = complex(total)
    return sign * cmath.sqrt(root_squared * total * total) / total


# -- quadrature oracles ----------------------------------------------------------

def _check_kernel(s) -> complex:
    s = complex(s)
    if s == 0 or _re_inv(s) <= 0:
        raise DecayError(f"heat kernel with s={s!r} does not decay on the real axis")
    return s


def gauss_conv_1d_oracle(s, f: Callable, center: Optional[Callable] = None,
                         scale: Optional[float] = None, rtol: float = QUAD_RTOL) -> Callable:
    """x -> (pi s)^(-1/2) * integral exp(-(x - u)^2 / s) f(u) du, by quadrature.

    ``f`` maps a node array to values. ``center(xs)`` locates the bulk of the
    integrand for each evaluation point (default: the point itself) and
    ``scale`` is its squared width; one window covering every point is used.
    """
    s = _check_kernel(s)
    if scale is None:
        scale = 1 / _re_inv(s)
    norm = 1 / cmath.sqrt(math.pi * s)
    pad = WINDOW_SIGMAS * math.sqrt(scale)

    def conv(xs):
        xs = np.asarray(xs, dtype=np.complex128)
        flat = np.atleast_1d(xs).ravel()
        cs = np.asarray(center(flat) if center is not None else flat).real
        lo, hi = float(cs.min()) - pad, float(cs.max()) + pad

        def integrand(u):
            kern = np.exp(-(flat[:, None] - u[None, :]) ** 2 / s)
            return norm * kern * np.asarray(f(u))[None, :]

        val, _ = integrate_line(integrand, 0.5 * (lo + hi), 0.5 * (hi - lo), rtol=rtol)
        return val.reshape(xs.shape)

    return conv


def gauss_conv_2d_oracle(s, f: Callable, center: Optional[Callable] = None,
                         scale: Optional[float] = None, rtol: float = QUAD_RTOL) -> Callable:
    """z -> (pi s)^(-1) * integral exp(-|z - u|^2 / s) f(u, conj u) d^2u, by quadrature.

    Only the real plane z' = conj(z) is accessible to the integral, so the
    returned function takes z alone. Each point gets its own square window.
    """
    s = _check_kernel(s)
    if scale is None:
        scale = 1 / _re_inv(s)
    norm = 1 / (math.pi * s)
    half = WINDOW_SIGMAS * math.sqrt(scale)

    def conv(zs):
        zs = np.asarray(zs, dtype=np.complex128)
        flat = np.atleast_1d(zs).ravel()
        cs = np.asarray(center(flat) if center is not None else flat, dtype=np.complex128)
        out = np.empty(flat.shape, dtype=np.complex128)
        for k, (z, c) in enumerate(zip(flat, cs)):
            def integrand(u, z=z):
                d = z - u
                return norm * np.exp(-(d * d.conj()) / s) * f(u, u.conj())

            out[k], _ = integrate_plane(integrand, complex(c), half, rtol=rtol)
        return out.reshape(zs.shape)

    return conv


def _bulk_1d(r: complex, s: complex, x0: complex):
    """Centre and squared width of exp(-(x-u)^2/s) exp(-(u-x0)^2/r) in u."""
    a, b = _re_inv(s), _re_inv(r)
    if a + b <= 0:
        raise DecayError("weighted integrand does not decay")
    x0 = complex(x0).real
    return (lambda xs: (a * np.real(xs) + b * x0) / (a + b)), 1 / (a + b)


def _bulk_2d(r: complex, s: complex, z0: complex, z0p: complex):
    a, b = _re_inv(s), _re_inv(r)
    if a + b <= 0:
        raise DecayError("weighted integrand does not decay")
    # the weight's modulus peaks at (z0 + conj(z0p)) / 2
    peak = 0.5 * (complex(z0) + complex(z0p).conjugate())
    return (lambda zs: (a * zs + b * peak) / (a + b)), 1 / (a + b)


# -- one-dimensional identities ---------------------------------------------------

def _require_decay(params) -> tuple[complex, complex]:
    if not params.decays():
        raise DecayError(f"parameters {params!r} violate the decay conditions")
    return complex(params.r), complex(params.s)


def op_closed_1d(params: ConvParams1D, source: Source1D, xs, sign: int = 1) -> np.ndarray:
    """Closed form of exp(s/4 d^2) [exp(-(x-x0)^2/r) f(x)] at the points xs."""
    r, s = complex(params.r), complex(params.s)
    x0 = complex(params.x0)
    xs = np.asarray(xs, dtype=np.complex128)
    total = r + s
    pre = cmath.sqrt(r / total) * np.exp(-(xs - x0) ** 2 / total)
    inner = r * s / total
    y = (r * xs + s * x0) / total
    root = None
    if source.kind in (Kind1D.MONOMIAL, Kind1D.HERMITE):
        # sqrt(-rs(r+s))/(r+s) or sqrt((r+s-rs)(r+s))/(r+s)
        root = composite_root(source.root_squared(inner), total, sign)
    return pre * source.heat(inner, y, root)


def op_identity_1d(params: ConvParams1D, source: Source1D, xs, sign: int = 1,
                   rtol: float = QUAD_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """(quadrature, closed form) for the Gaussian-weighted 1D identity at xs."""
    r, s = _require_decay(params)
    x0 = complex(params.x0)
    center, scale = _bulk_1d(r, s, x0)
    oracle = gauss_conv_1d_oracle(
        s, lambda u: np.exp(-(u - x0) ** 2 / r) * source.values(u),
        center=center, scale=scale, rtol=rtol)
    return oracle(xs), op_closed_1d(params, source, xs, sign)


def op_identity_1d_swapped(params: ConvParams1D, source: Source1D, ys,
                           rtol: float = QUAD_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Identity with the Gaussian factor moved to the left of the heat operator.

    exp(-y^2/r) exp(s/4 d^2) f(y) equals sqrt((r+s)/r) exp(rs/(4(r+s)) d^2)
    applied to exp(-(r+s) y^2/r^2) f((r+s) y/r). The right side goes
    through quadrature, the left side through the source's own closed form.
    The displacement is not used.
    """
    r, s = _require_decay(params)
    total = r + s
    heat = r * s / total
    weight = r * r / total
    center, scale = _bulk_1d(weight, heat, 0.0)
    oracle = gauss_conv_1d_oracle(
        heat, lambda u: np.exp(-u * u / weight) * source.values(total * u / r),
        center=center, scale=scale, rtol=rtol)
    ys = np.asarray(ys, dtype=np.complex128)
    closed = np.exp(-ys * ys / r) * source.heat(s, ys)
    return cmath.sqrt(total / r) * oracle(ys), closed


# -- two-dimensional identities ---------------------------------------------------

def op_closed_2d(params: ConvParams2D, source: Source2D, zs, zps=None, sign: int = 1) -> np.ndarray:
    """Closed form of exp(s d^2/dz dz') [exp(-(z-z0)(z'-z0p)/r) f(z, z')]."""
    r, s = complex(params.r), complex(params.s)
    z0, z0p = complex(params.z0), complex(params.z0p)
    zs = np.asarray(zs, dtype=np.complex128)
    zps = np.conj(zs) if zps is None else np.asarray(zps, dtype=np.complex128)
    total = r + s
    pre = r / total * np.exp(-(zs - z0) * (zps - z0p) / total)
    inner = r * s / total
    w = (r * zs + s * z0) / total
    wp = (r * zps + s * z0p) / total
    root = None
    if source.kind in (Kind2D.MONOMIAL, Kind2D.LAGUERRE2D):
        root = composite_root(source.root_squared(inner), total, sign)
    return pre * source.heat(inner, w, wp, root)


def op_identity_2d(params: ConvParams2D, source: Source2D, zs, sign: int = 1,
                   rtol: float = QUAD_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """(quadrature, closed form) on z' = conj(z) for the Gaussian-weighted 2D identity."""
    r, s = _require_decay(params)
    z0, z0p = complex(params.z0), complex(params.z0p)
    center, scale = _bulk_2d(r, s, z0, z0p)
    oracle = gauss_conv_2d_oracle(
        s, lambda u, up: np.exp(-(u - z0) * (up - z0p) / r) * source.values(u, up),
        center=center, scale=scale, rtol=rtol)
    return oracle(zs), op_closed_2d(params, source, zs, sign=sign)


def op_identity_2d_swapped(params: ConvParams2D, source: Source2D, ws,
                           rtol: float = QUAD_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """2D counterpart of :func:`op_identity_1d_swapped`; displacements unused."""
    r, s = _require_decay(params)
    total = r + s
    heat = r * s / total
    weight = r * r / total
    center, scale = _bulk_2d(weight, heat, 0.0, 0.0)
    k = total / r
    oracle = gauss_conv_2d_oracle(
        heat, lambda u, up: np.exp(-u * up / weight) * source.values(k * u, k * up),
        center=center, scale=scale, rtol=rtol)
    ws = np.asarray(ws, dtype=np.complex128)
    closed = np.exp(-ws * ws.conj() / r) * source.heat(s, ws, ws.conj())
    return k * oracle(ws), closed


def sigma_tau_closed(s, sigma2, tau2, z, zp) -> np.ndarray:
    """exp(s d^2/dz dz') exp(-sigma2 z^2/2 - tau2 z'^2/2) in closed form."""
    s, sigma2, tau2 = complex(s), complex(sigma2), complex(tau2)
    z = np.asarray(z, dtype=np.complex128)
    zp = np.asarray(zp, dtype=np.complex128)
    q = 1 - s * s * sigma2 * tau2
    expo = -(sigma2 * z * z + tau2 * zp * zp - 2 * s * sigma2 * tau2 * z * zp) / (2 * q)
    return np.exp(expo) / cmath.sqrt(q)


def sigma_tau_series(s, sigma2, tau2, z, zp,
                     trunc: genfun.TruncationSpec = genfun.DEFAULT_TRUNCATION) -> complex:
    """The same quantity as a double series of even-index Laguerre 2D polynomials."""
    s = complex(s)
    root = cmath.sqrt(-s)
    return genfun.gf_even_index_sigma_tau(s * complex(sigma2), s * complex(tau2),
                                          complex(z) / root, complex(zp) / root, trunc).lhs


def sigma_tau_identity(s, sigma2, tau2, zs,
                       rtol: float = QUAD_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """(quadrature, closed form) for the unweighted sigma/tau Gaussian on z' = conj(z)."""
    s = _check_kernel(s)
    sigma2, tau2 = complex(sigma2), complex(tau2)
    if (abs(sigma2) + abs(tau2)) / 2 >= _re_inv(s):
        raise DecayError("sigma/tau Gaussian outgrows the heat kernel")
    scale = 1 / (_re_inv(s) - (abs(sigma2) + abs(tau2)) / 2)
    source = Source2D(Kind2D.SIGMA_TAU, sigma2=sigma2, tau2=tau2)
    oracle = gauss_conv_2d_oracle(s, source.values, scale=scale, rtol=rtol)
    zs = np.asarray(zs, dtype=np.complex128)
    return oracle(zs), sigma_tau_closed(s, sigma2, tau2, zs, zs.conj())


# -- scaling operator ----------------------------------------------------------------

def _gaussian_taylor(a: complex, terms: int) -> np.ndarray:
    """Coefficients of exp(-a x^2) in powers of x up to degree 2*terms - 2."""
    c = np.zeros(2 * terms - 1, dtype=np.complex128)
    term = 1 + 0j
    for k in range(terms):
        c[2 * k] = term
        term *= -a / (k + 1)
    return c


def scaling_operator_values(gamma, coeffs, a, xs, terms: int = 90) -> tuple[np.ndarray, np.ndarray]:
    """exp(gamma x d/dx) on f(x) = p(x) exp(-a x^2): (Taylor route, f(e^gamma x)).

    ``coeffs`` are the coefficients of p in increasing degree.
    """
    gamma = complex(gamma)
    xs = np.asarray(xs, dtype=np.complex128)
    p = np.asarray(coeffs, dtype=np.complex128)
    taylor = np.polynomial.polynomial.polymul(p, _gaussian_taylor(complex(a), terms))
    scaled = taylor * np.exp(gamma * np.arange(taylor.size))
    series = np.polynomial.polynomial.polyval(xs, scaled)
    y = cmath.exp(gamma) * xs
    direct = np.polynomial.polynomial.polyval(y, p) * np.exp(-complex(a) * y * y)
    return series, direct


def scaling_operator_check(gamma, coeffs=(1.0,), a=0.0, xs=(-1.0, 0.3, 1.3),
                           tol: float = 1e-10) -> bool:
    series, direct = scaling_operator_values(gamma, coeffs, a, xs)
    return bool(np.all(np.abs(series - direct) <= tol * np.maximum(np.abs(direct), 1.0)))


def scaling_operator_values_2d(lam, coeffs, b, zs, zps,
                               terms: int = 90) -> tuple[np.ndarray, np.ndarray]:
    """exp(lam (z d/dz + d/dz' z')) on p(z, z') exp(-b z z'): (Taylor route, direct).

    The operator's eigenvalue on z^m z'^n is m + n + 1, so the direct side
    carries the extra factor e^lam.
    """
    lam = complex(lam)
    zs = np.asarray(zs, dtype=np.complex128)
    zps = np.asarray(zps, dtype=np.complex128)
    p = np.atleast_2d(np.asarray(coeffs, dtype=np.complex128))
    diag = np.diag(_gaussian_taylor(complex(b), terms)[0::2])
    taylor = convolve2d(diag, p)
    m, n = np.indices(taylor.shape)
    scaled = taylor * np.exp(lam * (m + n + 1))
    series = np.polynomial.polynomial.polyval2d(zs, zps, scaled)
    e = cmath.exp(lam)
    direct = e * np.polynomial.polynomial.polyval2d(e * zs, e * zps, p) * np.exp(-complex(b) * e * e * zs * zps)
    return series, direct


def scaling_operator_check_2d(lam, coeffs=((1.0,),), b=0.0, zs=(0.5 + 0.2j,), zps=(0.5 - 0.2j,),
                              tol: float = 1e-10) -> bool:
    series, direct = scaling_operator_values_2d(lam, coeffs, b, zs, zps)
    return bool(np.all(np.abs(series - direct) <= tol * np.maximum(np.abs(direct), 1.0)))


# -- width addition, semigroup and the delta surrogate -------------------------------

def normalized_gaussian_1d(r, x0=0.0) -> Callable:
    r, x0 = complex(r), complex(x0)
    norm = 1 / cmath.sqrt(math.pi * r)
    return lambda u: norm * np.exp(-(np.asarray(u) - x0) ** 2 / r)


def normalized_gaussian_2d(r, z0=0.0) -> Callable:
    """(pi r)^-1 exp(-|z - z0|^2 / r) as a function of (u, conj u)."""
    r, z0 = complex(r), complex(z0)
    return lambda u, up: np.exp(-(np.asarray(u) - z0) * (np.asarray(up) - z0.conjugate()) / r) / (math.pi * r)


def width_addition_1d(r, s, xs, x0=0.0, rtol: float = QUAD_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Normalized Gaussians of widths r and s convolve to width r + s."""
    r, s = complex(r), complex(s)
    center, scale = _bulk_1d(r, s, x0)
    oracle = gauss_conv_1d_oracle(s, normalized_gaussian_1d(r, x0), center, scale, rtol)
    return oracle(xs), normalized_gaussian_1d(r + s, x0)(np.asarray(xs, dtype=np.complex128))


def width_addition_2d(r, s, zs, z0=0.0, rtol: float = QUAD_RTOL) -> tuple[np.ndarray, np.ndarray]:
    r, s = complex(r), complex(s)
    z0 = complex(z0)
    center, scale = _bulk_2d(r, s, z0, z0.conjugate())
    oracle = gauss_conv_2d_oracle(s, normalized_gaussian_2d(r, z0), center, scale, rtol)
    zs = np.asarray(zs, dtype=np.complex128)
    return oracle(zs), normalized_gaussian_2d(r + s, z0)(zs, zs.conj())


def semigroup_1d(s1, s2, r, xs, x0=0.0, rtol: float = QUAD_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Heat step s2 then s1, both by quadrature, against width r + s1 + s2 directly."""
    s1, s2, r = complex(s1), complex(s2), complex(r)
    c2, w2 = _bulk_1d(r, s2, x0)
    first = gauss_conv_1d_oracle(s2, normalized_gaussian_1d(r, x0), c2, w2, rtol)
    c1, w1 = _bulk_1d(r + s2, s1, x0)
    second = gauss_conv_1d_oracle(s1, first, c1, w1, rtol)
    xs = np.asarray(xs, dtype=np.complex128)
    return second(xs), normalized_gaussian_1d(r + s1 + s2, x0)(xs)


def semigroup_2d(s1, s2, r, zs, z0=0.0, rtol: float = QUAD_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Planar version of :func:`semigroup_1d`.

    The planar kernel and a radial Gaussian both factor over the real and
    imaginary axes, so the nested planar integral is the product of nested
    line integrals along each axis.
    """
    z0 = complex(z0)
    zs = np.asarray(zs, dtype=np.complex128)
    along_x, _ = semigroup_1d(s1, s2, r, zs.real, z0.real, rtol)
    along_y, _ = semigroup_1d(s1, s2, r, zs.imag, z0.imag, rtol)
    expected = normalized_gaussian_2d(complex(r) + complex(s1) + complex(s2), z0)(zs, zs.conj())
    return along_x * along_y, expected


@dataclass(frozen=True)
class DeltaProbe:
    oracle: np.ndarray
    exact: np.ndarray
    limit: np.ndarray
    r: float = field(default=0.0)


def delta_surrogate_1d(s, xs, x0=0.0, r: float = 1e-4, rtol: float = QUAD_RTOL) -> DeltaProbe:
    """Smooth a narrow normalized Gaussian: exact width r + s, limit width s."""
    oracle, exact = width_addition_1d(r, s, xs, x0, rtol)
    limit = normalized_gaussian_1d(s, x0)(np.asarray(xs, dtype=np.complex128))
    return DeltaProbe(oracle, exact, limit, r)


def delta_surrogate_2d(s, zs, z0=0.0, r: float = 1e-4, rtol: float = QUAD_RTOL) -> DeltaProbe:
    oracle, exact = width_addition_2d(r, s, zs, z0, rtol)
    zs = np.asarray(zs, dtype=np.complex128)
    limit = normalized_gaussian_2d(s, z0)(zs, zs.conj())
    return DeltaProbe(oracle, exact, limit, r)


def max_rel_err(a, b, floor: float = 1e-300) -> float:
    """Largest pointwise |a - b| / max(|b|, floor)."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), floor)))


__all__ = [
    "ConvParams1D", "ConvParams2D", "DecayError", "DeltaProbe", "DisentangleInput",
    "Kind1D", "Kind2D", "Source1D", "Source2D", "UnimodularMatrix",
    "composite_root", "delta_surrogate_1d", "delta_surrogate_2d", "disentangle",
    "disentangle_nilpotent", "gauss_conv_1d_oracle", "gauss_conv_2d_oracle",
    "generator_matrix", "heat_input_1d", "heat_input_2d", "heat_matrix_1d", "heat_matrix_2d",
    "max_rel_err", "normalized_gaussian_1d", "normalized_gaussian_2d", "op_closed_1d",
    "op_closed_2d", "op_identity_1d", "op_identity_1d_swapped", "op_identity_2d",
    "op_identity_2d_swapped", "ordered_exponents", "ordered_product", "scaling_operator_check",
    "scaling_operator_check_2d", "scaling_operator_values", "scaling_operator_values_2d",
    "semigroup_1d", "semigroup_2d", "sigma_tau_closed", "sigma_tau_identity", "sigma_tau_series",
    "sl2_generators", "width_addition_1d", "width_addition_2d",
]
