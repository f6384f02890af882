"""Exact verification of the finite polynomial and combinatorial identities.

Polynomials in two variables are held as :class:`ExactPoly2`, a sparse map
from exponent pairs to exact coefficients (``Fraction`` or
:class:`GaussianRational`). Differential operators act on that ring
directly, so an operator identity is verified by applying both sides to a
set of monomials and comparing the resulting polynomials for equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from laguerre2d.poly_core import jacobi0


@dataclass(frozen=True)
class GaussianRational:
    """re + i*im with exact rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(Fraction(x), Fraction(0))

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        norm = o.re * o.re + o.im * o.im
        if not norm:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        out = GaussianRational(Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)


I = GaussianRational(Fraction(0), Fraction(1))


class ExactPoly2:
    """Sparse polynomial in two variables with exact coefficients.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term maps are equal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        self._terms = {k: v for k, v in (terms or {}).items() if v}
        for a, b in self._terms:
            if a < 0 or b < 0:
                raise ValueError("negative exponent")

    @classmethod
    def monomial(cls, a: int, b: int = 0, coeff=1) -> "ExactPoly2":
        return cls({(a, b): Fraction(coeff) if isinstance(coeff, int) else coeff})

    @classmethod
    def constant(cls, c=1) -> "ExactPoly2":
        return cls.monomial(0, 0, c)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __eq__(self, other):
        if not isinstance(other, ExactPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self):
        body = " + ".join(f"({c})*z^{a}*z'^{b}" for (a, b), c in sorted(self._terms.items()))
        return f"ExactPoly2({body or '0'})"

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: "ExactPoly2") -> "ExactPoly2":
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return ExactPoly2(out)

    def __neg__(self):
        return ExactPoly2({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ExactPoly2):
            return ExactPoly2({k: v * other for k, v in self._terms.items()})
        out: dict = {}
        for (a, b), u in self._terms.items():
            for (c, d), v in other._terms.items():
                key = (a + c, b + d)
                out[key] = out.get(key, 0) + u * v
        return ExactPoly2(out)

    def __rmul__(self, scalar):
        return ExactPoly2({k: scalar * v for k, v in self._terms.items()})

    def __pow__(self, k: int) -> "ExactPoly2":
        out = ExactPoly2.constant()
        for _ in range(k):
            out = out * self
        return out

    def diff(self, var: int, order: int = 1) -> "ExactPoly2":
        """Partial derivative in the first (var=0) or second (var=1) variable."""
        out = {}
        for (a, b), c in self._terms.items():
            e = (a, b)[var]
            if e < order:
                continue
            factor = math.perm(e, order)
            key = (a - order, b) if var == 0 else (a, b - order)
            out[key] = c * factor
        return ExactPoly2(out)

    def shift(self, da: int, db: int) -> "ExactPoly2":
        """Multiply by z^da z'^db."""
        return ExactPoly2({(a + da, b + db): c for (a, b), c in self._terms.items()})

    def degree(self) -> int:
        return max((a + b for a, b in self._terms), default=0)


def apply_exp_mixed(f: ExactPoly2, c) -> ExactPoly2:
    """exp(c d^2/dz dz') f, a finite sum on polynomials."""
    out = ExactPoly2()
    term = f
    k = 0
    while term:
        out = out + term * (c ** k * Fraction(1, math.factorial(k)))
        term = term.diff(0).diff(1)
        k += 1
    return out


def apply_exp_second(f: ExactPoly2, c, var: int = 0) -> ExactPoly2:
    """exp(c d^2/dx^2) f in variable ``var``, a finite sum on polynomials."""
    out = ExactPoly2()
    term = f
    k = 0
    while term:
        out = out + term * (c ** k * Fraction(1, math.factorial(k)))
        term = term.diff(var, 2)
        k += 1
    return out


# -- polynomial families as exact polynomials --------------------------------

@lru_cache(maxsize=None)
def laguerre2d_poly(m: int, n: int) -> ExactPoly2:
    """L_{m,n}(z, z') from the explicit alternating sum."""
    terms = {}
    for j in range(min(m, n) + 1):
        c = (-1) ** j * math.factorial(m) * math.factorial(n) // (
            math.factorial(j) * math.factorial(m - j) * math.factorial(n - j))
        terms[(m - j, n - j)] = Fraction(c)
    return ExactPoly2(terms)


@lru_cache(maxsize=None)
def hermite_poly(n: int) -> ExactPoly2:
    """H_n(x) from the explicit sum, as a polynomial in the first variable."""
    terms = {}
    for l in range(n // 2 + 1):
        c = (-1) ** l * math.factorial(n) // (math.factorial(l) * math.factorial(n - 2 * l))
        terms[(n - 2 * l, 0)] = Fraction(c * 2 ** (n - 2 * l))
    return ExactPoly2(terms)


def _monomials(limit_a: int, limit_b: int = 0) -> Iterable[ExactPoly2]:
    for a in range(limit_a + 1):
        for b in range(limit_b + 1):
            yield ExactPoly2.monomial(a, b)


# -- identity checks ----------------------------------------------------------

def check_monomial_inversion_2d(m: int, n: int) -> bool:
    """z^m z'^n rebuilt from lower-index Laguerre 2D polynomials."""
    total = ExactPoly2()
    for j in range(min(m, n) + 1):
        c = math.factorial(m) * math.factorial(n) // (
            math.factorial(j) * math.factorial(m - j) * math.factorial(n - j))
        total = total + laguerre2d_poly(m - j, n - j) * Fraction(c)
    return total == ExactPoly2.monomial(m, n)


def check_laguerre_operational(m: int, n: int) -> bool:
    """exp(-d^2/dz dz') z^m z'^n gives L_{m,n} and exp(+...) undoes it."""
    mono = ExactPoly2.monomial(m, n)
    lag = laguerre2d_poly(m, n)
    return apply_exp_mixed(mono, -1) == lag and apply_exp_mixed(lag, 1) == mono


def check_hermite_inversion(n: int) -> bool:
    """(2x)^n rebuilt from H_{n-2l}."""
    total = ExactPoly2()
    for l in range(n // 2 + 1):
        c = math.factorial(n) // (math.factorial(l) * math.factorial(n - 2 * l))
        total = total + hermite_poly(n - 2 * l) * Fraction(c)
    return total == ExactPoly2.monomial(n, 0, 2 ** n)


def check_hermite_operational(n: int) -> bool:
    """exp(-d^2/4dx^2)(2x)^n = H_n(x) = (2x - d/dx)^n 1, and exp(+d^2/4) inverts."""
    two_x = ExactPoly2.monomial(n, 0, 2 ** n)
    h = hermite_poly(n)
    raised = ExactPoly2.constant()
    for _ in range(n):
        raised = raised.shift(1, 0) * Fraction(2) - raised.diff(0)
    return (apply_exp_second(two_x, Fraction(-1, 4)) == h
            and apply_exp_second(h, Fraction(1, 4)) == two_x
            and raised == h)


def check_hermite_operator_identity(n: int, max_degree: int = 6) -> bool:
    """(2x - d/dx)^n f = sum_l C(n,l) H_{n-l}(x) (-d/dx)^l f on monomials f."""
    for f in _monomials(max_degree):
        left = f
        for _ in range(n):
            left = left.shift(1, 0) * Fraction(2) - left.diff(0)
        right = ExactPoly2()
        for l in range(n + 1):
            right = right + hermite_poly(n - l) * f.diff(0, l) * Fraction(math.comb(n, l) * (-1) ** l)
        if left != right:
            return False
    return True


def check_reordering(k: int, l: int) -> bool:
    """d^l/dz^l (z^k f) = sum_j k! l!/(j!(k-j)!(l-j)!) z^(k-j) d^(l-j) f, on z^a, a <= k+l+4."""
    for f in _monomials(k + l + 4):
        left = f.shift(k, 0).diff(0, l)
        right = ExactPoly2()
        for j in range(min(k, l) + 1):
            c = math.factorial(k) * math.factorial(l) // (
                math.factorial(j) * math.factorial(k - j) * math.factorial(l - j))
            right = right + f.diff(0, l - j).shift(k - j, 0) * Fraction(c)
        if left != right:
            return False
    return True


def check_laguerre_operator_identity(m: int, n: int, max_degree: int = 4) -> bool:
    """(z - d/dz')^m (z' - d/dz)^n f against its normally ordered expansion.

    Checked on every monomial z^a z'^b with a, b <= ``max_degree``; on f = 1 the
    left side is L_{m,n}.
    """
    if _apply_raising(ExactPoly2.constant(), m, n) != laguerre2d_poly(m, n):
        return False
    for f in _monomials(max_degree, max_degree):
        left = _apply_raising(f, m, n)
        right = ExactPoly2()
        for k in range(m + 1):
            for l in range(n + 1):
                c = (-1) ** (k + l) * math.comb(m, k) * math.comb(n, l)
                right = right + laguerre2d_poly(m - k, n - l) * f.diff(1, k).diff(0, l) * Fraction(c)
        if left != right:
            return False
    return True


def _apply_raising(f: ExactPoly2, m: int, n: int) -> ExactPoly2:
    for _ in range(n):
        f = f.shift(0, 1) - f.diff(0)
    for _ in range(m):
        f = f.shift(1, 0) - f.diff(1)
    return f


def check_specialized_jacobi0(n: int) -> bool:
    """Equal-upper-index values at zero: closed form for even, zero for odd."""
    for k in range(n + 1):
        closed = Fraction((-1) ** k * math.factorial(n),
                          2 ** (2 * k) * math.factorial(k) * math.factorial(n - k))
        if jacobi0(2 * k, n, n) != closed:
            return False
    return all(jacobi0(2 * k + 1, n, n) == 0 for k in range(n))


def check_jacobi_monomial_expansion(m: int, n: int) -> bool:
    """(x+iy)^m (x-iy)^n in powers of 2x, 2y via jacobi0, and the inverse map.

    Here the two polynomial variables are (x, y) for the forward expansion
    and (z, z') for the inverse.
    """
    big = m + n
    one = GaussianRational(Fraction(1))
    x = ExactPoly2.monomial(1, 0, one)
    y = ExactPoly2.monomial(0, 1, one)
    forward = (x + y * I) ** m * (x - y * I) ** n
    expansion = ExactPoly2()
    half_i = GaussianRational(Fraction(0), Fraction(1, 2))
    for j in range(big + 1):
        c = (-1) ** n * half_i ** (big - j) * (jacobi0(j, m, n) * 2 ** big)
        expansion = expansion + ExactPoly2.monomial(j, big - j, c)
    if forward != expansion:
        return False
    z = ExactPoly2.monomial(1, 0, one)
    zp = ExactPoly2.monomial(0, 1, one)
    inverse = (z + zp) ** m * ((z - zp) * (-I)) ** n
    expansion = ExactPoly2()
    for j in range(big + 1):
        c = I ** n * (jacobi0(j, m, n) * 2 ** j)
        expansion = expansion + ExactPoly2.monomial(j, big - j, c)
    return inverse == expansion


def sum_identity(m: int, n: int) -> tuple[Fraction, Fraction]:
    """(first written sum, closed value 2^(m+n)/(m! n!))."""
    lhs = sum((Fraction(2 ** (2 * n)) * jacobi0(2 * n, 2 * k, 2 * (m + n - k))
               / (math.factorial(k) * math.factorial(m + n - k))
               for k in range(m + n + 1)), Fraction(0))
    return lhs, Fraction(2 ** (m + n), math.factorial(m) * math.factorial(n))


def sum_identity_second_form(m: int, n: int) -> Fraction:
    """The re-indexed middle expression of the same finite sum."""
    total = Fraction(0)
    for k in range(m + n + 1):
        total += Fraction(math.factorial(2 * k) * math.factorial(2 * (m + n - k)) * 2 ** (2 * k),
                          math.factorial(k) * math.factorial(m + n - k)) * jacobi0(2 * k, 2 * m, 2 * n)
    return total / (math.factorial(2 * m) * math.factorial(2 * n))


def check_sum_identity(m: int, n: int) -> bool:
    lhs, rhs = sum_identity(m, n)
    return lhs == rhs == sum_identity_second_form(m, n)


CHECKS: dict[str, Callable[..., bool]] = {
    "monomial_inversion_2d": check_monomial_inversion_2d,
    "laguerre_operational": check_laguerre_operational,
    "hermite_inversion": check_hermite_inversion,
    "hermite_operational": check_hermite_operational,
    "hermite_operator_identity": check_hermite_operator_identity,
    "reordering": check_reordering,
    "laguerre_operator_identity": check_laguerre_operator_identity,
    "specialized_jacobi0": check_specialized_jacobi0,
    "jacobi_monomial_expansion": check_jacobi_monomial_expansion,
    "sum_identity": check_sum_identity,
}
