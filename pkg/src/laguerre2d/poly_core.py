"""Hermite, generalized Laguerre, Laguerre 2D and Hermite 2D polynomials.

Every family can be evaluated along more than one independent route so the
routes can serve as oracles for each other:

``Route.EXPLICIT``
    the finite alternating sum, evaluated exactly (Gaussian integers over a
    power-of-two denominator) and rounded once at the end;
``Route.RECURRENCE``
    three-term recurrences in double precision (compiled kernel when built);
``Route.CROSS_FAMILY``
    a relation to a different family (Laguerre 2D through generalized
    Laguerre polynomials, Hermite through Laguerre 2D on the diagonal).
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from laguerre2d._backend import kernels
from laguerre2d.quadrature import integrate_plane

MAX_INDEX = 200


class IndexBoundError(ValueError):
    """Raised when a polynomial index is negative or above ``MAX_INDEX``."""


class Route(enum.Enum):
    EXPLICIT = "explicit"
    RECURRENCE = "recurrence"
    CROSS_FAMILY = "cross_family"


def _check_index(*indices: int) -> None:
    for k in indices:
        if not isinstance(k, (int, np.integer)) or k < 0 or k > MAX_INDEX:
            raise IndexBoundError(f"index {k!r} outside [0, {MAX_INDEX}]")


def _as_complex(x) -> complex:
    c = complex(x)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"non-finite argument {x!r}")
    return c


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return math.factorial(n)


def log_factorial(n: int) -> float:
    return math.lgamma(n + 1.0)


# -- exact evaluation helpers ------------------------------------------------

def _dyadic(*values: complex) -> tuple[list[tuple[int, int]], int]:
    """Write each complex float as (A + iB) / 2**e with one shared e."""
    parts = []
    e = 0
    for v in values:
        for comp in (v.real, v.imag):
            p, q = comp.as_integer_ratio()
            parts.append((p, q))
            e = max(e, q.bit_length() - 1)
    ints = [p << (e - (q.bit_length() - 1)) for p, q in parts]
    return [(ints[i], ints[i + 1]) for i in range(0, len(ints), 2)], e


def _gmul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _gpowers(a: tuple[int, int], k: int) -> list[tuple[int, int]]:
    out = [(1, 0)]
    for _ in range(k):
        out.append(_gmul(out[-1], a))
    return out


def _round_fraction(x: Fraction) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.inf if x > 0 else -math.inf


def _round_gaussian(re: int, im: int, shift: int) -> complex:
    den = 1 << shift
    return complex(_round_fraction(Fraction(re, den)), _round_fraction(Fraction(im, den)))


def _hermite_explicit(n: int, x: complex) -> complex:
    (a,), e = _dyadic(x)
    powers = _gpowers((2 * a[0], 2 * a[1]), n)
    re = im = 0
    for l in range(n // 2 + 1):
        c = (-1) ** l * factorial(n) // (factorial(l) * factorial(n - 2 * l))
        c <<= 2 * e * l
        p = powers[n - 2 * l]
        re += c * p[0]
        im += c * p[1]
    return _round_gaussian(re, im, e * n)


def _laguerre2d_explicit(m: int, n: int, z: complex, zp: complex) -> complex:
    (a, b), e = _dyadic(z, zp)
    pz = _gpowers(a, m)
    pzp = _gpowers(b, n)
    re = im = 0
    for j in range(min(m, n) + 1):
        c = (-1) ** j * factorial(m) * factorial(n) // (
            factorial(j) * factorial(m - j) * factorial(n - j))
        c <<= 2 * e * j
        p = _gmul(pz[m - j], pzp[n - j])
        re += c * p[0]
        im += c * p[1]
    return _round_gaussian(re, im, e * (m + n))


def _binom_general(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out = out * (x - i) / (i + 1)
    return out


def _gen_laguerre_explicit(n: int, nu: Fraction, u: complex) -> complex:
    (a,), e = _dyadic(u)
    powers = _gpowers((-a[0], -a[1]), n)
    re = Fraction(0)
    im = Fraction(0)
    for i in range(n + 1):
        c = _binom_general(n + nu, n - i) / factorial(i) * (1 << (e * (n - i)))
        re += c * powers[i][0]
        im += c * powers[i][1]
    den = 1 << (e * n)
    return complex(_round_fraction(re / den), _round_fraction(im / den))


# -- public evaluators -------------------------------------------------------

def hermite(n: int, x, route: Route = Route.RECURRENCE) -> complex:
    """H_n(x), physicists' normalization (leading coefficient 2**n)."""
    _check_index(n)
    x = _as_complex(x)
    if route is Route.EXPLICIT:
        return _hermite_explicit(n, x)
    if route is Route.RECURRENCE:
        return complex(kernels.hermite_table(x, n)[n])
    if route is Route.CROSS_FAMILY:
        # H_n(x) = sum_j C(n, j) L_{j, n-j}(x, x)
        table = kernels.laguerre2d_table(x, x, n, n)
        return complex(sum(math.comb(n, j) * table[j, n - j] for j in range(n + 1)))
    raise ValueError(f"unknown route {route!r}")


def laguerre2d(m: int, n: int, z, zp, route: Route = Route.RECURRENCE) -> complex:
    """L_{m,n}(z, z'), with z and z' independent complex variables."""
    _check_index(m, n)
    z = _as_complex(z)
    zp = _as_complex(zp)
    if route is Route.EXPLICIT:
        return _laguerre2d_explicit(m, n, z, zp)
    if route is Route.RECURRENCE:
        return complex(kernels.laguerre2d_points(m, n, np.array([z]), np.array([zp]))[0])
    if route is Route.CROSS_FAMILY:
        if m >= n:
            lag = gen_laguerre(n, m - n, z * zp)
            return (-1) ** n * factorial(n) * z ** (m - n) * lag
        lag = gen_laguerre(m, n - m, z * zp)
        return (-1) ** m * factorial(m) * zp ** (n - m) * lag
    raise ValueError(f"unknown route {route!r}")


def gen_laguerre(n: int, nu, u, route: Route = Route.RECURRENCE) -> complex:
    """Generalized Laguerre polynomial L_n^nu(u).

    ``nu`` may be any real number for the recurrence and explicit routes; an
    integer ``nu < -n`` is rejected since it has no Laguerre 2D counterpart.
    The cross-family route needs integer ``nu`` and reads the value off
    L_{n+nu, n}(1, u).
    """
    _check_index(n)
    u = _as_complex(u)
    if float(nu).is_integer() and nu < -n:
        raise ValueError(f"nu={nu} < -n={-n} has no Laguerre 2D embedding")
    if route is Route.EXPLICIT:
        return _gen_laguerre_explicit(n, Fraction(nu), u)
    if route is Route.RECURRENCE:
        nu = float(nu)
        prev, cur = 0.0, 1.0 + 0j
        for k in range(n):
            prev, cur = cur, ((2 * k + 1 + nu - u) * cur - (k + nu) * prev) / (k + 1)
        return complex(cur)
    if route is Route.CROSS_FAMILY:
        if not float(nu).is_integer():
            raise ValueError("cross-family route needs integer nu")
        m = n + int(nu)
        _check_index(m)
        lt = kernels.laguerre2d_points(m, n, np.array([1.0 + 0j]), np.array([u]),
                                       normalized=True)[0]
        scale = math.exp(0.5 * (log_factorial(m) - log_factorial(n)))
        return complex((-1) ** n * scale * lt)
    raise ValueError(f"unknown route {route!r}")


def hermite2d(m: int, n: int, x, y, route: Route = Route.RECURRENCE) -> complex:
    """H_{m,n}(x, y) = H_m(x) H_n(y)."""
    return hermite(m, x, route) * hermite(n, y, route)


def laguerre2d_function(m: int, n: int, z) -> complex:
    """Orthonormal Laguerre 2D function l_{m,n}(z, z*) on the plane."""
    _check_index(m, n)
    z = _as_complex(z)
    lt = kernels.laguerre2d_points(m, n, np.array([z]), np.array([z.conjugate()]),
                                   normalized=True)[0]
    return complex(math.exp(-abs(z) ** 2 / 2) * lt / math.sqrt(math.pi))


def laguerre2d_function_table(zs, mmax: int, nmax: int) -> np.ndarray:
    """All l_{m,n}(z, z*) for m <= mmax, n <= nmax; shape ``zs.shape + (mmax+1, nmax+1)``."""
    _check_index(mmax, nmax)
    zs = np.asarray(zs, dtype=np.complex128)
    table = kernels.laguerre2d_points_table(zs, zs.conj(), mmax, nmax, normalized=True)
    weight = np.exp(-np.abs(zs) ** 2 / 2) / math.sqrt(math.pi)
    return table * weight[..., None, None]


# -- vectorized helpers used by the quadrature checks ------------------------

def hermite_points(n: int, xs, normalized: bool = False) -> np.ndarray:
    _check_index(n)
    return kernels.hermite_points(n, xs, normalized)


def laguerre2d_points(m: int, n: int, zs, zps, normalized: bool = False) -> np.ndarray:
    _check_index(m, n)
    return kernels.laguerre2d_points(m, n, zs, zps, normalized)


def hermite_table(x, nmax: int, normalized: bool = False) -> np.ndarray:
    _check_index(nmax)
    return kernels.hermite_table(_as_complex(x), nmax, normalized)


def laguerre2d_table(z, zp, mmax: int, nmax: int, normalized: bool = False,
                     c=1.0) -> np.ndarray:
    """Table of L_{m,n}(z, z') for m <= mmax, n <= nmax.

    With ``c != 1`` the lowering term of the recurrence is scaled by ``c``;
    the entries are then the homogenized values
    c**((m+n)/2) L_{m,n}(z/sqrt(c), z'/sqrt(c)), which stay finite at c = 0.
    ``normalized`` divides each entry by sqrt(m! n!).
    """
    _check_index(mmax, nmax)
    return kernels.laguerre2d_table(_as_complex(z), _as_complex(zp), mmax, nmax,
                                    complex(c), normalized)


# -- Jacobi-at-zero coefficients and Hermite <-> Laguerre 2D conversions -----

@lru_cache(maxsize=None)
def jacobi0(j: int, m: int, n: int) -> Fraction:
    """P_j^{(m-j, n-j)}(0) as an exact rational.

    Defined by binomial extraction: the coefficient of z^a z*^b with a + b = j
    in the change of basis between (x + iy)^m (x - iy)^n and (2x)^j (2y)^(m+n-j).
    """
    if not 0 <= j <= m + n:
        raise ValueError(f"j={j} outside [0, m+n={m + n}]")
    total = 0
    for a in range(max(0, j - n), min(m, j) + 1):
        total += math.comb(m, a) * math.comb(n, j - a) * (-1) ** (j - a)
    return Fraction(total, 1 << j)


def laguerre2d_from_hermite(m: int, n: int, x, y, route: Route = Route.RECURRENCE) -> complex:
    """L_{m,n}(x + iy, x - iy) assembled from products H_j(x) H_{m+n-j}(y)."""
    _check_index(m, n)
    big = m + n
    hx = [hermite(k, x, route) for k in range(big + 1)]
    hy = [hermite(k, y, route) for k in range(big + 1)]
    total = 0j
    for j in range(big + 1):
        total += (0.5j) ** (big - j) * float(jacobi0(j, m, n)) * hx[j] * hy[big - j]
    return (-1) ** n * total


def hermite2d_from_laguerre2d(m: int, n: int, x, y, route: Route = Route.RECURRENCE) -> complex:
    """H_m(x) H_n(y) assembled from L_{j, m+n-j}(x + iy, x - iy)."""
    _check_index(m, n)
    x = _as_complex(x)
    y = _as_complex(y)
    big = m + n
    z, zp = x + 1j * y, x - 1j * y
    total = 0j
    for j in range(big + 1):
        total += 2 ** j * float(jacobi0(j, m, n)) * laguerre2d(j, big - j, z, zp, route)
    return 1j ** n * total


def derivative_check(m: int, n: int, z, zp, h: float = 1e-4,
                     variable: str = "z") -> tuple[complex, complex]:
    """(central difference of L_{m,n}, lowered-index closed form).

    ``variable="z"`` compares with m L_{m-1,n}; ``"zp"`` with n L_{m,n-1}.
    """
    if not 1e-6 <= h <= 1e-3:
        raise ValueError("step h must lie in [1e-6, 1e-3]")
    z = _as_complex(z)
    zp = _as_complex(zp)
    if variable == "z":
        fd = (laguerre2d(m, n, z + h, zp) - laguerre2d(m, n, z - h, zp)) / (2 * h)
        exact = m * laguerre2d(m - 1, n, z, zp) if m else 0j
    elif variable == "zp":
        fd = (laguerre2d(m, n, z, zp + h) - laguerre2d(m, n, z, zp - h)) / (2 * h)
        exact = n * laguerre2d(m, n - 1, z, zp) if n else 0j
    else:
        raise ValueError(f"variable must be 'z' or 'zp', not {variable!r}")
    return fd, exact


def orthonormality_gram(nmax: int, rtol: float = 1e-12) -> np.ndarray:
    """Gram matrix of the Laguerre 2D functions with both indices <= nmax.

    Entry [(k, l), (m, n)] is the plane integral of conj(l_{k,l}) l_{m,n},
    computed by tensor-product quadrature; rows/columns are flattened as
    k * (nmax + 1) + l.
    """
    _check_index(nmax)
    size = (nmax + 1) ** 2
    halfwidth = 8.0 + 2.0 * math.sqrt(nmax + 1)

    def integrand(w):
        table = laguerre2d_function_table(w, nmax, nmax).reshape(w.shape + (size,))
        return np.einsum("...a,...b->ab...", table.conj(), table)

    gram, _ = integrate_plane(integrand, 0j, halfwidth, rtol=rtol)
    return gram
