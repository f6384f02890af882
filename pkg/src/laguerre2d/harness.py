"""Seeded verification runner for every identity family in the package.

Each suite draws its own parameters from a generator seeded by
``(seed, crc32(suite id))``, so the rows a suite produces do not depend on
which other suites run or in which worker. Reports carry no timing data in
their body; per-suite timings go to stderr.

    laguerre2d-verify --list
    laguerre2d-verify --suite mehler --suite op_identity_2d_laguerre --seed 7
    laguerre2d-verify --format csv --out report.csv
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

import numpy as np
from scipy.linalg import expm

from laguerre2d import exact_id as ex
from laguerre2d import genfun as gf
from laguerre2d import poly_core as pc
from laguerre2d import su11_ops as so
from laguerre2d._util import polar_draw
from laguerre2d.exact_id import GaussianRational

TINY = sys.float_info.min
DEFAULT_TOL = {"exact": 0.0, "float": 1e-10, "series": 1e-9, "quadrature": 1e-6}
FORMATS = ("text", "json", "csv")
POINTS_PER_SET = 9


class UsageError(Exception):
    """Bad command line or configuration; maps to exit status 2."""


@dataclass(frozen=True)
class Row:
    """One comparison produced by a suite, before tolerances are applied."""

    params: tuple
    lhs: object
    rhs: object
    floor: float = TINY


@dataclass(frozen=True)
class IdentityReport:
    suite: str
    anchor: str
    params: tuple
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    passed: bool
    elapsed: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class Suite:
    id: str
    anchor: str
    kind: str
    tolerance: float
    covers: tuple
    runner: Callable[["Context"], Iterable[Row]]


@dataclass
class Context:
    rng: np.random.Generator
    draws: int
    trunc: gf.TruncationSpec

    def disc(self, radius: float) -> complex:
        return polar_draw(self.rng, radius)

    def real(self, lo: float, hi: float) -> float:
        return float(self.rng.uniform(lo, hi))

    def index(self, hi: int) -> int:
        return int(self.rng.integers(0, hi + 1))

    def scaled(self, factor: float) -> int:
        return max(1, int(round(self.draws * factor)))

    def parameter_sets(self) -> int:
        return max(1, math.ceil(self.draws / 10))


REGISTRY: dict[str, Suite] = {}


def suite(id: str, anchor: str, kind: str, covers: Iterable[str] = (), tolerance: Optional[float] = None):
    def register(fn):
        if id in REGISTRY:
            raise ValueError(f"duplicate suite {id}")
        tol = DEFAULT_TOL[kind] if tolerance is None else tolerance
        REGISTRY[id] = Suite(id, anchor, kind, tol, tuple(covers), fn)
        return fn
    return register


def _pairs(params: dict, *values, floor: float = TINY) -> Iterator[Row]:
    """Rows from (lhs, rhs) pairs sharing one parameter set; None entries are skipped."""
    items = tuple(params.items())
    for lhs, rhs in values:
        if lhs is not None and rhs is not None:
            yield Row(items, lhs, rhs, floor)


def _points(params: dict, lhs, rhs, points, floor: float = TINY) -> Iterator[Row]:
    for p, a, b in zip(np.ravel(points), np.ravel(lhs), np.ravel(rhs)):
        yield Row(tuple(params.items()) + (("at", complex(p)),), complex(a), complex(b), floor)


# -- poly_core -----------------------------------------------------------------------

@suite("hermite_routes", "Hermite: explicit sum vs three-term recurrence", "float", ["poly_core.hermite"])
def _hermite_routes(ctx):
    for k in range(ctx.draws):
        n = ctx.index(60)
        if k % 2 == 0:
            x = ctx.disc(10.0)
            yield from _pairs({"n": n, "x": x}, (pc.hermite(n, x), pc.hermite(n, x, pc.Route.EXPLICIT)))
            continue
        # real axis: judged against the local size |H_n| + sqrt(2n)|H_{n-1}| near zeros
        x = ctx.real(-10, 10)
        exact = pc.hermite(n, x, pc.Route.EXPLICIT)
        size = abs(exact) + (abs(pc.hermite(n - 1, x, pc.Route.EXPLICIT)) * math.sqrt(2 * n) if n else 0)
        yield Row((("n", n), ("x", x)), pc.hermite(n, x), exact, size)


@suite("hermite_cross_family", "Hermite as a binomial sum of Laguerre 2D polynomials", "float",
       ["poly_core.hermite"])
def _hermite_cross(ctx):
    for _ in range(ctx.draws):
        n, x = ctx.index(60), ctx.disc(6.0)
        yield from _pairs({"n": n, "x": x},
                          (pc.hermite(n, x, pc.Route.CROSS_FAMILY), pc.hermite(n, x, pc.Route.EXPLICIT)))


@suite("laguerre2d_routes", "Laguerre 2D: explicit sum vs recurrence vs generalized Laguerre", "float",
       ["poly_core.laguerre2d"])
def _laguerre_routes(ctx):
    for k in range(ctx.draws):
        m, n, z = ctx.index(40), ctx.index(40), ctx.disc(5.0)
        zp = z.conjugate() if k % 2 else ctx.disc(5.0)
        exact = pc.laguerre2d(m, n, z, zp, pc.Route.EXPLICIT)
        yield from _pairs({"m": m, "n": n, "z": z, "zp": zp},
                          (pc.laguerre2d(m, n, z, zp), exact),
                          (pc.laguerre2d(m, n, z, zp, pc.Route.CROSS_FAMILY), exact))


@suite("gen_laguerre_embedding", "generalized Laguerre from Laguerre 2D, both index orders", "float",
       ["poly_core.gen_laguerre", "poly_core.laguerre2d"])
def _gen_laguerre(ctx):
    for _ in range(ctx.draws):
        m, n = ctx.index(24), ctx.index(24)
        z, zp = ctx.disc(3.0), ctx.disc(3.0)
        if abs(z) < 1e-3 or abs(zp) < 1e-3:
            continue
        exact = pc.laguerre2d(m, n, z, zp, pc.Route.EXPLICIT)
        lo, hi = min(m, n), max(m, n)
        lead = z ** (m - n) if m >= n else zp ** (n - m)
        value = (-1) ** lo * math.factorial(lo) * lead * pc.gen_laguerre(lo, hi - lo, z * zp)
        yield from _pairs({"m": m, "n": n, "z": z, "zp": zp}, (value, exact))


@suite("laguerre2d_symmetry", "Laguerre 2D index/argument exchange symmetry", "float",
       ["poly_core.laguerre2d"])
def _symmetry(ctx):
    for _ in range(ctx.draws):
        m, n, z, zp = ctx.index(20), ctx.index(20), ctx.disc(3.0), ctx.disc(3.0)
        yield from _pairs({"m": m, "n": n, "z": z, "zp": zp},
                          (pc.laguerre2d(m, n, z, zp), pc.laguerre2d(n, m, zp, z)))


@suite("laguerre2d_scaling", "Laguerre 2D scaling kz, z'/k", "float", ["poly_core.laguerre2d"])
def _scaling(ctx):
    for _ in range(ctx.draws):
        m, n, z, zp = ctx.index(20), ctx.index(20), ctx.disc(3.0), ctx.disc(3.0)
        kappa = cmath.rect(ctx.real(0.2, 5.0), ctx.real(-math.pi, math.pi))
        yield Row((("m", m), ("n", n), ("z", z), ("zp", zp), ("kappa", kappa)),
                  pc.laguerre2d(m, n, kappa * z, zp / kappa),
                  kappa ** (m - n) * pc.laguerre2d(m, n, z, zp, pc.Route.EXPLICIT))


@suite("parity", "parity of Laguerre 2D and Hermite polynomials", "float",
       ["poly_core.laguerre2d", "poly_core.hermite"])
def _parity(ctx):
    for _ in range(ctx.draws):
        m, n, z, zp, x = ctx.index(20), ctx.index(20), ctx.disc(3.0), ctx.disc(3.0), ctx.disc(5.0)
        yield from _pairs({"m": m, "n": n, "z": z, "zp": zp, "x": x},
                          (pc.laguerre2d(m, n, -z, -zp), (-1) ** (m + n) * pc.laguerre2d(m, n, z, zp)),
                          (pc.hermite(m + n, -x), (-1) ** (m + n) * pc.hermite(m + n, x)))


@suite("hermite2d", "Hermite 2D as a product of Hermite polynomials", "float", ["poly_core.hermite2d"])
def _hermite2d(ctx):
    for _ in range(ctx.draws):
        m, n, x, y = ctx.index(30), ctx.index(30), ctx.disc(3.0), ctx.disc(3.0)
        yield from _pairs({"m": m, "n": n, "x": x, "y": y},
                          (pc.hermite2d(m, n, x, y),
                           pc.hermite(m, x, pc.Route.EXPLICIT) * pc.hermite(n, y, pc.Route.EXPLICIT)))


@suite("hermite_laguerre_conversion", "Hermite 2D <-> Laguerre 2D through Jacobi-at-zero coefficients",
       "float", ["poly_core.jacobi0", "poly_core.hermite2d", "poly_core.laguerre2d"])
def _conversion(ctx):
    for _ in range(ctx.draws):
        m = ctx.index(12)
        n = ctx.index(12 - m)
        x, y = ctx.real(-2, 2), ctx.real(-2, 2)
        direct_l = pc.laguerre2d(m, n, x + 1j * y, x - 1j * y, pc.Route.EXPLICIT)
        direct_h = pc.hermite2d(m, n, x, y, pc.Route.EXPLICIT)
        params = (("m", m), ("n", n), ("x", x), ("y", y))
        # the sums cancel to values far below their terms near zeros; compare at unit scale
        yield Row(params, pc.laguerre2d_from_hermite(m, n, x, y), direct_l, 1.0)
        yield Row(params, pc.hermite2d_from_laguerre2d(m, n, x, y), direct_h, 1.0)


@suite("laguerre2d_function", "normalized Laguerre 2D functions", "float", ["poly_core.laguerre2d_function"])
def _lfunction(ctx):
    for _ in range(ctx.draws):
        m, n, z = ctx.index(15), ctx.index(15), ctx.disc(3.0)
        expect = (math.exp(-abs(z) ** 2 / 2) / math.sqrt(math.pi * math.factorial(m) * math.factorial(n))
                  * pc.laguerre2d(m, n, z, z.conjugate(), pc.Route.EXPLICIT))
        yield from _pairs({"m": m, "n": n, "z": z}, (pc.laguerre2d_function(m, n, z), expect))


@suite("derivative", "derivative of Laguerre 2D lowers the index", "float", ["poly_core.derivative_check"],
       tolerance=1e-6)
def _derivative(ctx):
    for k in range(ctx.draws):
        m, n, z, zp = ctx.index(10), ctx.index(10), ctx.disc(2.0), ctx.disc(2.0)
        variable = "z" if k % 2 == 0 else "zp"
        fd, exact = pc.derivative_check(m, n, z, zp, variable=variable)
        # central differences err by h^2/6 times the third derivative; fold it into the scale
        a, b = (m, n) if variable == "z" else (n, m)
        third = a * (a - 1) * (a - 2) * abs(pc.laguerre2d(a - 3, b, z, zp) if variable == "z"
                                            else pc.laguerre2d(b, a - 3, z, zp)) if a >= 3 else 0.0
        scale = abs(pc.laguerre2d(m, n, z, zp)) + abs(exact) + third
        yield Row((("m", m), ("n", n), ("z", z), ("zp", zp), ("variable", variable)),
                  fd, exact, max(scale, 1.0))


@suite("orthonormality", "Laguerre 2D functions are orthonormal on the plane", "quadrature",
       ["poly_core.laguerre2d_function"])
def _orthonormality(ctx):
    nmax = 4
    gram = pc.orthonormality_gram(nmax)
    size = nmax + 1
    for a in range(size * size):
        for b in range(size * size):
            yield Row((("k", a // size), ("l", a % size), ("m", b // size), ("n", b % size)),
                      complex(gram[a, b]), 1.0 if a == b else 0.0, 1.0)


# -- exact_id --------------------------------------------------------------------------

def _bool_rows(check, args_list, names):
    for args in args_list:
        yield Row(tuple(zip(names, args)), int(check(*args)), 1)


@suite("monomial_inversion_2d", "monomials from Laguerre 2D polynomials", "exact",
       ["exact_id.check_monomial_inversion_2d"])
def _mono_inv(ctx):
    yield from _bool_rows(ex.check_monomial_inversion_2d,
                          [(m, k - m) for k in range(17) for m in range(k + 1)], ("m", "n"))


@suite("laguerre_operational", "Laguerre 2D operational definition", "exact",
       ["exact_id.check_laguerre_operational"])
def _lag_oper(ctx):
    yield from _bool_rows(ex.check_laguerre_operational,
                          [(m, n) for m in range(9) for n in range(9)], ("m", "n"))


@suite("hermite_inversion", "powers of 2x from Hermite polynomials", "exact",
       ["exact_id.check_hermite_inversion"])
def _herm_inv(ctx):
    yield from _bool_rows(ex.check_hermite_inversion, [(n,) for n in range(41)], ("n",))


@suite("hermite_operational", "Hermite operational definition", "exact", ["exact_id.check_hermite_operational"])
def _herm_oper(ctx):
    yield from _bool_rows(ex.check_hermite_operational, [(n,) for n in range(31)], ("n",))


@suite("hermite_operator_identity", "Hermite operator identity on monomials", "exact",
       ["exact_id.check_hermite_operator_identity"])
def _herm_op_id(ctx):
    yield from _bool_rows(ex.check_hermite_operator_identity, [(n,) for n in range(9)], ("n",))


@suite("reordering", "reordering of double sums over Laguerre 2D polynomials", "exact",
       ["exact_id.check_reordering"])
def _reorder(ctx):
    yield from _bool_rows(ex.check_reordering, [(k, l) for k in range(13) for l in range(13)], ("k", "l"))


@suite("laguerre_operator_identity", "Laguerre 2D raising operator identity", "exact",
       ["exact_id.check_laguerre_operator_identity"])
def _lag_op_id(ctx):
    yield from _bool_rows(ex.check_laguerre_operator_identity,
                          [(m, n) for m in range(9) for n in range(9)], ("m", "n"))


@suite("specialized_jacobi0", "equal-parameter Jacobi-at-zero closed form", "exact",
       ["exact_id.check_specialized_jacobi0", "poly_core.jacobi0"])
def _jac0(ctx):
    yield from _bool_rows(ex.check_specialized_jacobi0, [(n,) for n in range(31)], ("n",))


@suite("jacobi_monomial_expansion", "(x+iy)^m (x-iy)^n expanded with Jacobi-at-zero coefficients", "exact",
       ["exact_id.check_jacobi_monomial_expansion", "poly_core.jacobi0"])
def _jac_mono(ctx):
    yield from _bool_rows(ex.check_jacobi_monomial_expansion,
                          [(m, n) for m in range(7) for n in range(7)], ("m", "n"))


@suite("sum_identity_9_4", "finite sum of squared binomials against its closed form", "exact",
       ["exact_id.sum_identity"])
def _sum_identity(ctx):
    for m in range(13):
        for n in range(13):
            lhs, rhs = ex.sum_identity(m, n)
            yield Row((("m", m), ("n", n)), lhs, rhs)
            yield Row((("m", m), ("n", n), ("form", "second")), ex.sum_identity_second_form(m, n), rhs)


# -- genfun ------------------------------------------------------------------------------

GF_RADIUS = 0.75
ARG_RADIUS = 2.0


def _series(name, anchor, covers, tolerance=None):
    return suite(name, anchor, "series", covers, tolerance)


@_series("hermite_gf", "Hermite generating function", ["genfun.gf_hermite"])
def _gf_hermite(ctx):
    for _ in range(ctx.draws):
        t, x = ctx.disc(GF_RADIUS), ctx.real(-2, 2)
        yield from _pairs({"t": t, "x": x}, gf.gf_hermite(t, x, ctx.trunc))


@_series("mehler", "Mehler bilinear Hermite generating function", ["genfun.gf_mehler"])
def _gf_mehler(ctx):
    for _ in range(ctx.draws):
        t, x, y = ctx.disc(GF_RADIUS), ctx.real(-2, 2), ctx.real(-2, 2)
        r = gf.gf_mehler(t, x, y, ctx.trunc)
        yield from _pairs({"t": t, "x": x, "y": y}, (r.lhs, r.rhs))


@_series("mehler_factorized", "Mehler closed form: factorized vs direct", ["genfun.gf_mehler"], 1e-11)
def _gf_mehler_fact(ctx):
    for _ in range(ctx.draws):
        t, x, y = ctx.disc(GF_RADIUS), ctx.real(-2, 2), ctx.real(-2, 2)
        yield from _pairs({"t": t, "x": x, "y": y},
                          (gf.mehler_rhs_factorized(t, x, y), gf.mehler_rhs(t, x, y)))


@_series("even_odd_hermite", "even/odd Hermite and cosh/sinh generating functions",
         ["genfun.gf_even_odd_hermite"])
def _gf_even_odd(ctx):
    for _ in range(ctx.draws):
        t, x = ctx.disc(GF_RADIUS), ctx.real(-2, 2)
        r = gf.gf_even_odd_hermite(t, x, ctx.trunc)
        yield from _pairs({"t": t, "x": x}, (r.even_lhs, r.even_rhs), (r.odd_lhs, r.odd_rhs),
                          (r.cosh_lhs, r.cosh_rhs), (r.sinh_lhs, r.sinh_rhs))


@_series("factherm", "product of two Hermite polynomials as a finite sum", ["genfun.gf_factherm"])
def _gf_factherm(ctx):
    for _ in range(ctx.draws):
        n, x, y = ctx.index(30), ctx.real(-2, 2), ctx.real(-2, 2)
        r = gf.gf_factherm(n, x, y)
        yield from _pairs({"n": n, "x": x, "y": y}, (r.rhs_hermite, r.lhs), (r.rhs_laguerre, r.lhs))


@_series("simple_laguerre2d", "simple Laguerre 2D generating function", ["genfun.gf_simple_laguerre2d"])
def _gf_simple(ctx):
    for _ in range(ctx.draws):
        s, t, z, zp = ctx.disc(GF_RADIUS), ctx.disc(GF_RADIUS), ctx.disc(ARG_RADIUS), ctx.disc(ARG_RADIUS)
        yield from _pairs({"s": s, "t": t, "z": z, "zp": zp}, gf.gf_simple_laguerre2d(s, t, z, zp, ctx.trunc))


@_series("single_index", "single-index Laguerre 2D generating function and rewrites",
         ["genfun.gf_simple_laguerre2d"])
def _gf_single(ctx):
    for _ in range(ctx.draws):
        m, t, z, zp = ctx.index(10), ctx.disc(GF_RADIUS), ctx.disc(ARG_RADIUS), ctx.disc(ARG_RADIUS)
        r = gf.gf_single_index_laguerre2d(m, t, z, zp, ctx.trunc)
        params = {"m": m, "t": t, "z": z, "zp": zp}
        # (z - t)^m cancels when z is close to t; judge against the uncancelled size
        growth = abs(cmath.exp(t * zp))
        yield from _pairs(params, (r.lhs, r.rhs), floor=1e-3 * (abs(z) + abs(t)) ** m * growth)
        if abs(z) > 0:
            yield from _pairs(params, (r.rewrite_lower, r.rewrite_rhs), (r.rewrite_upper, r.rewrite_rhs),
                              floor=1e-3 * (1 + abs(t / z)) ** m * growth)


def _six(ctx, radius=GF_RADIUS):
    s, t = ctx.disc(radius), ctx.disc(radius)
    return (s, t) + tuple(ctx.disc(ARG_RADIUS) for _ in range(4))


SIX = ("s", "t", "z", "zp", "w", "wp")


@_series("bilinear_laguerre2d", "bilinear Laguerre 2D generating function",
         ["genfun.gf_bilinear_laguerre2d"])
def _gf_bilinear(ctx):
    for _ in range(ctx.draws):
        args = _six(ctx)
        r = gf.gf_bilinear_laguerre2d(*args, ctx.trunc)
        yield from _pairs(dict(zip(SIX, args)), (r.lhs, r.rhs))


@_series("bilinear_factorized", "bilinear closed form: factorized and sign-flipped vs direct",
         ["genfun.gf_bilinear_laguerre2d"], 1e-11)
def _gf_bilinear_fact(ctx):
    for _ in range(ctx.draws):
        args = _six(ctx)
        rhs = gf.bilinear_rhs(*args)
        yield from _pairs(dict(zip(SIX, args)), (gf.bilinear_rhs_factorized(*args), rhs),
                          (gf.bilinear_rhs_factorized(*args, flip=True), rhs))


@_series("bilinear_genlaguerre", "bilinear series rewritten with generalized Laguerre polynomials",
         ["genfun.gf_bilinear_laguerre2d"])
def _gf_bilinear_gl(ctx):
    for _ in range(ctx.draws):
        args = _six(ctx)
        r = gf.gf_bilinear_genlaguerre(*args, ctx.trunc)
        yield from _pairs(dict(zip(SIX, args)), (r.lower, r.rhs), (r.upper, r.rhs))


@_series("usual_laguerre", "usual Laguerre generating function from the bilinear one",
         ["genfun.gf_bilinear_laguerre2d"])
def _gf_usual(ctx):
    for _ in range(ctx.draws):
        t = ctx.disc(GF_RADIUS) * ctx.disc(GF_RADIUS)
        z, zp = ctx.disc(ARG_RADIUS), ctx.disc(ARG_RADIUS)
        r = gf.gf_usual_laguerre(t, z, zp, ctx.trunc)
        yield from _pairs({"t": t, "z": z, "zp": zp}, (r.lhs, r.rhs), (r.laguerre_lhs, r.rhs))


@suite("bilinear_limit", "bilinear generating function tends to the simple one", "series",
       ["genfun.gf_bilinear_laguerre2d"], tolerance=1e-9)
def _gf_limit(ctx):
    for _ in range(ctx.draws):
        args = _six(ctx)
        r = gf.bilinear_limit(*args, delta=1e-7)
        yield from _pairs(dict(zip(SIX, args)), (r.bilinear, r.simple))


@_series("hermite2d_product", "bilinear Hermite 2D generating function", ["genfun.gf_hermite2d_product"])
def _gf_h2d(ctx):
    for _ in range(ctx.draws):
        s, t = ctx.disc(GF_RADIUS), ctx.disc(GF_RADIUS)
        x, y, u, v = (ctx.real(-2, 2) for _ in range(4))
        r = gf.gf_hermite2d_product(s, t, x, y, u, v, ctx.trunc)
        yield from _pairs({"s": s, "t": t, "x": x, "y": y, "u": u, "v": v},
                          (r.lhs, r.rhs), (r.rhs_factorized, r.rhs))


@_series("hermite2d_even_product", "Hermite 2D products with even indices", ["genfun.gf_hermite2d_product"])
def _gf_h2d_even(ctx):
    for _ in range(ctx.draws):
        s, t, x, y = ctx.disc(GF_RADIUS), ctx.disc(GF_RADIUS), ctx.real(-2, 2), ctx.real(-2, 2)
        yield from _pairs({"s": s, "t": t, "x": x, "y": y},
                          gf.gf_hermite2d_even_product(s, t, x, y, ctx.trunc))


@_series("mixed", "mixed Laguerre 2D / Hermite 2D generating function", ["genfun.gf_mixed"])
def _gf_mixed(ctx):
    for _ in range(ctx.draws):
        s, t, z, zp = ctx.disc(GF_RADIUS), ctx.disc(GF_RADIUS), ctx.disc(ARG_RADIUS), ctx.disc(ARG_RADIUS)
        u, v = ctx.real(-2, 2), ctx.real(-2, 2)
        yield from _pairs({"s": s, "t": t, "z": z, "zp": zp, "u": u, "v": v},
                          gf.gf_mixed(s, t, z, zp, u, v, ctx.trunc))


@_series("even_index", "even-index Laguerre 2D generating function and Hermite split",
         ["genfun.gf_even_index_laguerre2d"])
def _gf_even_index(ctx):
    for _ in range(ctx.draws):
        s, t, z, zp = ctx.disc(GF_RADIUS), ctx.disc(GF_RADIUS), ctx.disc(ARG_RADIUS), ctx.disc(ARG_RADIUS)
        r = gf.gf_even_index_laguerre2d(s, t, z, zp, ctx.trunc)
        yield from _pairs({"s": s, "t": t, "z": z, "zp": zp}, (r.lhs, r.rhs),
                          (r.hermite_product, r.hermite_closed), (r.hermite_closed, r.rhs))


@_series("even_index_factorized", "even-index closed form: factorized and sigma/tau vs direct",
         ["genfun.gf_even_index_laguerre2d"], 1e-11)
def _gf_even_fact(ctx):
    for _ in range(ctx.draws):
        s, t, z, zp = ctx.disc(GF_RADIUS), ctx.disc(GF_RADIUS), ctx.disc(ARG_RADIUS), ctx.disc(ARG_RADIUS)
        rhs = gf.even_index_rhs(s, t, z, zp)
        yield from _pairs({"s": s, "t": t, "z": z, "zp": zp},
                          (gf.even_index_rhs_factorized(s, t, z, zp), rhs),
                          (gf.sigma_tau_rhs(-s * s, -t * t, z, zp), rhs))


@_series("even_index_sigma_tau", "even-index series in sigma/tau form", ["genfun.gf_even_index_laguerre2d"])
def _gf_sigma_tau(ctx):
    for _ in range(ctx.draws):
        sig, tau, z, zp = ctx.disc(GF_RADIUS), ctx.disc(GF_RADIUS), ctx.disc(ARG_RADIUS), ctx.disc(ARG_RADIUS)
        yield from _pairs({"sigma": sig, "tau": tau, "z": z, "zp": zp},
                          gf.gf_even_index_sigma_tau(sig, tau, z, zp, ctx.trunc))


@_series("even_index_genlaguerre", "even-index series with generalized Laguerre polynomials",
         ["genfun.gf_even_index_laguerre2d"])
def _gf_even_gl(ctx):
    for _ in range(ctx.draws):
        s, t, z, zp = ctx.disc(GF_RADIUS), ctx.disc(GF_RADIUS), ctx.disc(ARG_RADIUS), ctx.disc(ARG_RADIUS)
        r = gf.gf_even_index_genlaguerre(s, t, z, zp, ctx.trunc)
        yield from _pairs({"s": s, "t": t, "z": z, "zp": zp}, (r.lower, r.rhs), (r.upper, r.rhs))


LAGSUM_FLOOR = 1e-4
LAGSUM_TERMS = 80


def _lagsum_sizes(mmax, nmax, t, z, zp, w, wp) -> np.ndarray:
    """sum_k |t|^k/k! |L_{m,k}(z,z')| |L_{k,n}(w,w')|: the uncancelled size of each single sum.

    The sums can be many orders of magnitude below their terms, so the rows are
    judged relative to this size rather than to the result alone.
    """
    left = np.abs(pc.laguerre2d_table(z, zp, mmax, LAGSUM_TERMS))
    right = np.abs(pc.laguerre2d_table(w, wp, LAGSUM_TERMS, nmax))
    ks = np.arange(LAGSUM_TERMS + 1)
    weights = np.exp(ks * math.log(max(abs(t), TINY)) - np.array([math.lgamma(k + 1) for k in ks]))
    return left @ (weights[:, None] * right)


@_series("lagsum", "single sums over products of Laguerre 2D polynomials", ["genfun.gf_lagsum"])
def _gf_lagsum(ctx):
    for _ in range(ctx.scaled(0.25)):
        t = ctx.disc(GF_RADIUS)
        z, zp, w, wp = (ctx.disc(ARG_RADIUS) for _ in range(4))
        sizes = _lagsum_sizes(6, 6, t, z, zp, w, wp)
        for m in range(7):
            for n in range(7):
                r = gf.gf_lagsum(m, n, t, z, zp, w, wp, ctx.trunc)
                yield from _pairs({"m": m, "n": n, "t": t, "z": z, "zp": zp, "w": w, "wp": wp},
                                  *((value, r.lhs) for value in r[1:]),
                                  floor=LAGSUM_FLOOR * sizes[m, n])


@_series("lagsum_diagonal", "single sums with coincident arguments", ["genfun.gf_lagsum"])
def _gf_lagsum_diag(ctx):
    for _ in range(ctx.draws):
        m, n, t = ctx.index(10), ctx.index(10), ctx.disc(GF_RADIUS)
        z, zp = ctx.disc(ARG_RADIUS), ctx.disc(ARG_RADIUS)
        r = gf.gf_lagsum_diagonal(m, n, t, z, zp, ctx.trunc)
        size = LAGSUM_FLOOR * _lagsum_sizes(m, n, t, z, zp, z, zp)[m, n]
        params = {"m": m, "n": n, "t": t, "z": z, "zp": zp}
        yield from _pairs(params, (r.rhs, r.lhs), floor=size)
        if z and zp:
            monomial = abs(z ** m * zp ** n)
            yield from _pairs(params, *((u, r.lhs / (z ** m * zp ** n)) for u in r[2:]),
                              floor=size / monomial)


@suite("bilinear_resummed", "bilinear generating function recovered by resumming single sums", "series",
       ["genfun.gf_lagsum", "genfun.gf_bilinear_laguerre2d"], tolerance=1e-10)
def _gf_resummed(ctx):
    for _ in range(ctx.scaled(0.25)):
        args = _six(ctx)
        r = gf.gf_bilinear_resummed(*args, ctx.trunc)
        yield from _pairs(dict(zip(SIX, args)), (r.lhs, r.rhs_bilinear), (r.rhs, r.rhs_bilinear))


S10_RADIUS = 0.6


@suite("product_decomposition", "bilinear generating function as a product of single sums", "series",
       ["genfun.decompose_coords_s10", "genfun.gf_bilinear_laguerre2d"], tolerance=1e-10)
def _gf_product(ctx):
    for _ in range(ctx.scaled(0.5)):
        args = _six(ctx, S10_RADIUS)
        r = gf.gf_product_decomposition_s10(*args, ctx.trunc)
        yield from _pairs(dict(zip(SIX, args)), (r.lhs, r.rhs_bilinear), (r.rhs, r.rhs_bilinear))


@suite("coordinate_round_trip", "coordinate decomposition followed by its inverse", "float",
       ["genfun.decompose_coords_s10"], tolerance=1e-12)
def _coords(ctx):
    for _ in range(ctx.scaled(0.5)):
        args = _six(ctx, S10_RADIUS)
        back = gf.compose_coords_s10(*args[:2], *gf.decompose_coords_s10(*args))
        params = tuple(zip(SIX, args))
        for name, got, want in zip(SIX[2:], back, args[2:]):
            yield Row(params + (("component", name),), got, want, 1.0)


@suite("completeness_limit", "bilinear kernel concentrates to a delta function", "series",
       ["genfun.completeness_limit_probe"], tolerance=1e-6)
def _completeness(ctx):
    for _ in range(ctx.draws):
        z = ctx.disc(ARG_RADIUS)
        # linear in eps above, roundoff in 1 - s below
        eps = 10.0 ** ctx.real(-8, -7)
        probe = gf.completeness_limit_probe(eps, z)
        yield from _pairs({"eps": eps, "z": z}, (probe.envelope, 1.0))


# -- su11_ops --------------------------------------------------------------------------------

def _width(ctx, lo=0.3, hi=2.0, arg=0.4) -> complex:
    return cmath.rect(ctx.real(lo, hi), ctx.real(-arg, arg))


def _grid_1d(ctx) -> np.ndarray:
    return np.sort(np.array([ctx.real(-2, 2) for _ in range(POINTS_PER_SET)]))


def _grid_2d(ctx) -> np.ndarray:
    return np.array([ctx.disc(1.5) for _ in range(POINTS_PER_SET)])


@suite("disentangle_unimodular", "disentanglement matrix has unit determinant", "float",
       ["su11_ops.disentangle"], tolerance=1e-12)
def _det(ctx):
    for k in range(ctx.scaled(2.5)):
        xi, eta = ctx.disc(2.0), ctx.disc(2.0)
        if k % 5 == 4 and abs(xi) > 0.1:
            # near-degenerate: |eps| below 1e-6
            eps = ctx.disc(1e-6)
            zeta = (eta * eta + eps * eps) / xi
        else:
            zeta = ctx.disc(2.0)
        m = so.disentangle(so.DisentangleInput(xi, eta, zeta))
        yield from _pairs({"xi": xi, "eta": eta, "zeta": zeta}, (m.det(), 1.0))


@suite("disentangle_branch", "disentanglement is independent of the sign of eps", "float",
       ["su11_ops.disentangle"], tolerance=1e-12)
def _branch(ctx):
    for _ in range(ctx.draws):
        inp = so.DisentangleInput(ctx.disc(2.0), ctx.disc(2.0), ctx.disc(2.0))
        plus, minus = so.disentangle(inp, 1).as_array(), so.disentangle(inp, -1).as_array()
        params = (("xi", inp.xi), ("eta", inp.eta), ("zeta", inp.zeta))
        for i, name in enumerate(("kappa", "lambda", "mu", "nu")):
            yield Row(params + (("entry", name),), minus.flat[i], plus.flat[i], np.abs(plus).max())


@suite("disentangle_expm", "disentanglement matrix vs matrix exponential and ordered factors", "float",
       ["su11_ops.disentangle"], tolerance=1e-10)
def _expm(ctx):
    for _ in range(ctx.draws):
        inp = so.DisentangleInput(ctx.disc(2.0), ctx.disc(2.0), ctx.disc(2.0))
        m = so.disentangle(inp)
        ref = expm(so.generator_matrix(inp))
        scale = max(1.0, float(np.abs(ref).max()))
        params = (("xi", inp.xi), ("eta", inp.eta), ("zeta", inp.zeta))
        product = so.ordered_product(m) if abs(m.kappa) > 1e-3 else None
        for i, name in enumerate(("kappa", "lambda", "mu", "nu")):
            yield Row(params + (("entry", name),), m.as_array().flat[i], ref.flat[i], scale)
            if product is not None:
                yield Row(params + (("entry", name), ("route", "ordered")), product.flat[i], ref.flat[i], scale)


def _rational(ctx) -> Fraction:
    return Fraction(int(ctx.rng.integers(-40, 41)), int(ctx.rng.integers(1, 17)))


@suite("disentangle_specializations", "heat-operator specializations of the disentanglement matrix", "exact",
       ["su11_ops.disentangle"])
def _special(ctx):
    i = GaussianRational(Fraction(0), Fraction(1))
    for _ in range(ctx.draws):
        s = GaussianRational(_rational(ctx), _rational(ctx))
        r = GaussianRational(_rational(ctx), _rational(ctx))
        if not r:
            continue
        params = (("s", complex(float(s.re), float(s.im))), ("r", complex(float(r.re), float(r.im))))
        got = (so.disentangle_nilpotent(s / 2, i * s / r, -2 * s / (r * r)),
               so.disentangle_nilpotent(s, i * s / r, -s / (r * r)))
        want = (so.heat_matrix_1d(s, r), so.heat_matrix_2d(s, r))
        for dim, g, w in zip(("1d", "2d"), got, want):
            for name, a, b in zip(("kappa", "lambda", "mu", "nu"), (*g[0], *g[1]), (*w[0], *w[1])):
                yield Row(params + (("dim", dim), ("entry", name)), a, b)


@suite("disentangle_heat_float", "floating disentanglement of heat-operator inputs", "float",
       ["su11_ops.disentangle"], tolerance=1e-14)
def _special_float(ctx):
    # dyadic inputs make eps^2 vanish exactly, so the series branch is taken
    for _ in range(ctx.draws):
        sd, rd = int(ctx.rng.integers(-64, 65)) / 16, int(ctx.rng.integers(1, 65)) / 16
        for dim, build, expected in (("1d", so.heat_input_1d, so.heat_matrix_1d),
                                     ("2d", so.heat_input_2d, so.heat_matrix_2d)):
            got = so.disentangle(build(sd, rd)).as_array().ravel()
            want = np.array(expected(sd, rd), dtype=complex).ravel()
            for name, a, b in zip(("kappa", "lambda", "mu", "nu"), got, want):
                yield Row((("s", sd), ("r", rd), ("dim", dim), ("entry", name)),
                          complex(a), complex(b), float(np.abs(want).max()))


def _conv_rows(params: dict, pair, points, floor_rel: float = 1e-3):
    """Rows for one parameter set; near a zero of the closed form, compare at set scale."""
    lhs, rhs = pair
    floor = floor_rel * float(np.abs(rhs).max()) if np.size(rhs) else TINY
    return _points(params, lhs, rhs, points, max(floor, TINY))


def _params_1d(ctx, k: int) -> so.ConvParams1D:
    x0 = 0.0 if k % 2 == 0 else ctx.real(-1, 1)
    return so.ConvParams1D(_width(ctx), _width(ctx), x0)


def _params_2d(ctx, k: int) -> so.ConvParams2D:
    if k % 2 == 0:
        return so.ConvParams2D(_width(ctx), _width(ctx))
    z0 = ctx.disc(1.0)
    return so.ConvParams2D(_width(ctx), _width(ctx), z0, z0.conjugate() + ctx.disc(0.3))


def _op1d_suite(name: str, kind: so.Kind1D, label: str):
    @suite(name, f"heat operator on a Gaussian-weighted {label}, plain and displaced", "quadrature",
           ["su11_ops.op_identity_1d", "su11_ops.gauss_conv_1d_oracle"])
    def run(ctx):
        for k in range(ctx.parameter_sets()):
            params = _params_1d(ctx, k)
            source = so.Source1D(kind, ctx.index(6), q=_width(ctx))
            xs = _grid_1d(ctx)
            info = {"r": params.r, "s": params.s, "x0": params.x0, "n": source.n, "q": source.q}
            yield from _conv_rows(info, so.op_identity_1d(params, source, xs), xs)
    return run


_op1d_suite("op_identity_1d_monomial", so.Kind1D.MONOMIAL, "power of 2x")
_op1d_suite("op_identity_1d_hermite", so.Kind1D.HERMITE, "Hermite polynomial")
_op1d_suite("op_identity_1d_gaussian", so.Kind1D.GAUSSIAN, "second Gaussian")
_op1d_suite("op_identity_1d_constant", so.Kind1D.CONSTANT, "constant")


@suite("op_identity_1d_swapped", "Gaussian factor moved across the 1D heat operator", "quadrature",
       ["su11_ops.op_identity_1d", "su11_ops.gauss_conv_1d_oracle"])
def _swapped_1d(ctx):
    kinds = list(so.Kind1D)
    for k in range(ctx.parameter_sets()):
        params = so.ConvParams1D(_width(ctx), _width(ctx))
        source = so.Source1D(kinds[k % len(kinds)], ctx.index(6), q=_width(ctx))
        xs = _grid_1d(ctx)
        info = {"r": params.r, "s": params.s, "kind": source.kind.value, "n": source.n}
        yield from _conv_rows(info, so.op_identity_1d_swapped(params, source, xs), xs)


def _op2d_suite(name: str, kind: so.Kind2D, label: str):
    @suite(name, f"2D heat operator on a Gaussian-weighted {label}, plain and displaced", "quadrature",
           ["su11_ops.op_identity_2d", "su11_ops.gauss_conv_2d_oracle"])
    def run(ctx):
        for k in range(ctx.parameter_sets()):
            params = _params_2d(ctx, k)
            source = so.Source2D(kind, ctx.index(4), ctx.index(4), q=_width(ctx),
                                 sigma2=ctx.disc(0.4), tau2=ctx.disc(0.4))
            zs = _grid_2d(ctx)
            info = {"r": params.r, "s": params.s, "z0": params.z0, "z0p": params.z0p,
                    "m": source.m, "n": source.n}
            yield from _conv_rows(info, so.op_identity_2d(params, source, zs), zs)
    return run


_op2d_suite("op_identity_2d_monomial", so.Kind2D.MONOMIAL, "monomial")
_op2d_suite("op_identity_2d_laguerre", so.Kind2D.LAGUERRE2D, "Laguerre 2D polynomial")
_op2d_suite("op_identity_2d_gaussian", so.Kind2D.GAUSSIAN, "second Gaussian")
_op2d_suite("op_identity_2d_sigma_tau", so.Kind2D.SIGMA_TAU, "sigma/tau Gaussian")


@suite("op_identity_2d_swapped", "Gaussian factor moved across the 2D heat operator", "quadrature",
       ["su11_ops.op_identity_2d", "su11_ops.gauss_conv_2d_oracle"])
def _swapped_2d(ctx):
    kinds = list(so.Kind2D)
    for k in range(ctx.parameter_sets()):
        params = so.ConvParams2D(_width(ctx), _width(ctx))
        source = so.Source2D(kinds[k % len(kinds)], ctx.index(4), ctx.index(4), q=_width(ctx),
                             sigma2=ctx.disc(0.3), tau2=ctx.disc(0.3))
        zs = _grid_2d(ctx)
        info = {"r": params.r, "s": params.s, "kind": source.kind.value, "m": source.m, "n": source.n}
        yield from _conv_rows(info, so.op_identity_2d_swapped(params, source, zs), zs)


@suite("sigma_tau_gaussian", "2D heat operator on exp(-sigma2 z^2/2 - tau2 z'^2/2)", "quadrature",
       ["su11_ops.op_identity_2d", "su11_ops.gauss_conv_2d_oracle"])
def _sigma_tau(ctx):
    for _ in range(ctx.parameter_sets()):
        s = _width(ctx)
        bound = 0.8 * (1 / s).real
        sigma2, tau2 = ctx.disc(bound), ctx.disc(bound)
        zs = _grid_2d(ctx)
        yield from _conv_rows({"s": s, "sigma2": sigma2, "tau2": tau2},
                              so.sigma_tau_identity(s, sigma2, tau2, zs), zs)


@_series("sigma_tau_series", "sigma/tau Gaussian smoothed: Laguerre 2D series vs closed form",
         ["su11_ops.op_identity_2d"])
def _sigma_tau_series(ctx):
    for _ in range(ctx.draws):
        s = _width(ctx)
        sigma2, tau2 = ctx.disc(0.3), ctx.disc(0.3)
        z, zp = ctx.disc(ARG_RADIUS), ctx.disc(ARG_RADIUS)
        yield from _pairs({"s": s, "sigma2": sigma2, "tau2": tau2, "z": z, "zp": zp},
                          (so.sigma_tau_series(s, sigma2, tau2, z, zp, ctx.trunc),
                           complex(so.sigma_tau_closed(s, sigma2, tau2, z, zp))))


@suite("sigma_tau_minus_one", "sigma/tau smoothing at s = -1 is the even-index generating function",
       "float", ["su11_ops.op_identity_2d", "genfun.gf_even_index_laguerre2d"], tolerance=1e-12)
def _sigma_tau_m1(ctx):
    for _ in range(ctx.draws):
        sig, tau = ctx.disc(0.8), ctx.disc(0.8)
        z, zp = ctx.disc(ARG_RADIUS), ctx.disc(ARG_RADIUS)
        yield from _pairs({"sigma": sig, "tau": tau, "z": z, "zp": zp},
                          (complex(so.sigma_tau_closed(-1.0, sig * sig, tau * tau, z, zp)),
                           gf.even_index_rhs(sig, tau, z, zp)))


@suite("width_addition_1d", "normalized Gaussians convolve with added widths", "quadrature",
       ["su11_ops.gauss_conv_1d_oracle"], tolerance=1e-8)
def _width_1d(ctx):
    for k in range(ctx.parameter_sets()):
        r, s, x0 = _width(ctx), _width(ctx), ctx.real(-1, 1)
        xs = _grid_1d(ctx)
        yield from _conv_rows({"r": r, "s": s, "x0": x0}, so.width_addition_1d(r, s, xs, x0), xs)


@suite("width_addition_2d", "normalized planar Gaussians convolve with added widths", "quadrature",
       ["su11_ops.gauss_conv_2d_oracle"], tolerance=1e-8)
def _width_2d(ctx):
    for _ in range(ctx.parameter_sets()):
        r, s, z0 = _width(ctx), _width(ctx), ctx.disc(1.0)
        zs = _grid_2d(ctx)
        yield from _conv_rows({"r": r, "s": s, "z0": z0}, so.width_addition_2d(r, s, zs, z0), zs)


@suite("semigroup_1d", "two heat steps equal one step with the summed parameter", "quadrature",
       ["su11_ops.gauss_conv_1d_oracle"], tolerance=1e-8)
def _semigroup_1d(ctx):
    for _ in range(ctx.parameter_sets()):
        s1, s2, r, x0 = _width(ctx, hi=1.0), _width(ctx, hi=1.0), _width(ctx), ctx.real(-1, 1)
        xs = _grid_1d(ctx)
        yield from _conv_rows({"s1": s1, "s2": s2, "r": r, "x0": x0},
                              so.semigroup_1d(s1, s2, r, xs, x0), xs)


@suite("semigroup_2d", "two planar heat steps equal one step with the summed parameter", "quadrature",
       ["su11_ops.gauss_conv_1d_oracle"], tolerance=1e-8)
def _semigroup_2d(ctx):
    for _ in range(ctx.parameter_sets()):
        s1, s2, r, z0 = _width(ctx, hi=1.0), _width(ctx, hi=1.0), _width(ctx), ctx.disc(1.0)
        zs = _grid_2d(ctx)
        yield from _conv_rows({"s1": s1, "s2": s2, "r": r, "z0": z0},
                              so.semigroup_2d(s1, s2, r, zs, z0), zs)


@suite("delta_surrogate", "a narrow Gaussian smoothed by the heat operator", "quadrature",
       ["su11_ops.gauss_conv_1d_oracle", "su11_ops.gauss_conv_2d_oracle"])
def _delta(ctx):
    for k in range(ctx.parameter_sets()):
        s = ctx.real(0.3, 2.0)
        if k % 2 == 0:
            x0, pts = ctx.real(-1, 1), _grid_1d(ctx)
            probe = so.delta_surrogate_1d(s, pts, x0)
        else:
            x0, pts = ctx.disc(1.0), _grid_2d(ctx)
            probe = so.delta_surrogate_2d(s, pts, x0)
        yield from _conv_rows({"s": s, "x0": x0, "r": probe.r, "target": "exact"},
                              (probe.oracle, probe.exact), pts)


# the gap to the limit is first order in the source width
LIMIT_WIDTH = 1e-8


@suite("delta_limit", "narrow-Gaussian smoothing approaches the heat kernel itself", "quadrature",
       ["su11_ops.gauss_conv_1d_oracle", "su11_ops.gauss_conv_2d_oracle"], tolerance=1e-6)
def _delta_limit(ctx):
    for k in range(ctx.parameter_sets()):
        s = ctx.real(0.3, 2.0)
        if k % 2 == 0:
            x0, pts = ctx.real(-1, 1), _grid_1d(ctx)
            probe = so.delta_surrogate_1d(s, pts, x0, r=LIMIT_WIDTH)
        else:
            x0, pts = ctx.disc(1.0), _grid_2d(ctx)
            probe = so.delta_surrogate_2d(s, pts, x0, r=LIMIT_WIDTH)
        yield from _conv_rows({"s": s, "x0": x0, "r": probe.r, "target": "limit"},
                              (probe.oracle, probe.limit), pts)


@suite("root_sign_invariance", "closed forms do not depend on the sign of the shared root", "float",
       ["su11_ops.op_identity_1d", "su11_ops.op_identity_2d"], tolerance=1e-12)
def _root_sign(ctx):
    for _ in range(ctx.draws):
        r, s, x0 = _width(ctx), _width(ctx), ctx.disc(1.0)
        n, m = ctx.index(8), ctx.index(8)
        xs, zs = _grid_1d(ctx), _grid_2d(ctx)
        info = {"r": r, "s": s, "x0": x0, "m": m, "n": n}
        for kind in (so.Kind1D.MONOMIAL, so.Kind1D.HERMITE):
            p = so.ConvParams1D(r, s, x0)
            yield from _conv_rows({**info, "kind": kind.value},
                                  (so.op_closed_1d(p, so.Source1D(kind, n), xs, sign=-1),
                                   so.op_closed_1d(p, so.Source1D(kind, n), xs, sign=1)), xs[:1])
        for kind in (so.Kind2D.MONOMIAL, so.Kind2D.LAGUERRE2D):
            p = so.ConvParams2D(r, s, x0, x0.conjugate())
            yield from _conv_rows({**info, "kind": kind.value},
                                  (so.op_closed_2d(p, so.Source2D(kind, m, n), zs, sign=-1),
                                   so.op_closed_2d(p, so.Source2D(kind, m, n), zs, sign=1)), zs[:1])


@suite("scaling_operator", "exponential of the Euler operator rescales the argument", "float",
       ["su11_ops.scaling_operator_check"])
def _scaling_op(ctx):
    for k in range(ctx.draws):
        if k % 2 == 0:
            gamma = complex(ctx.real(-0.3, 0.3), ctx.real(-0.3, 0.3))
            coeffs = [ctx.real(-2, 2) for _ in range(ctx.index(4) + 1)]
            a = ctx.disc(1.0)
            xs = [ctx.real(-1.5, 1.5)]
            ok = so.scaling_operator_check(gamma, coeffs, a, xs)
            series, direct = so.scaling_operator_values(gamma, coeffs, a, xs)
            yield Row((("dim", 1), ("gamma", gamma), ("a", a), ("x", xs[0]), ("check", ok)),
                      series[0], direct[0], 1.0)
        else:
            lam = complex(ctx.real(-0.3, 0.3), ctx.real(-0.3, 0.3))
            coeffs = np.array([[ctx.real(-2, 2) for _ in range(2)] for _ in range(2)])
            b, z = ctx.disc(1.0), ctx.disc(1.2)
            zp = z.conjugate() + ctx.disc(0.3)
            ok = so.scaling_operator_check_2d(lam, coeffs, b, [z], [zp])
            series, direct = so.scaling_operator_values_2d(lam, coeffs, b, [z], [zp])
            yield Row((("dim", 2), ("lambda", lam), ("b", b), ("z", z), ("zp", zp), ("check", ok)),
                      series[0], direct[0], 1.0)


# -- running ---------------------------------------------------------------------------------------

REQUIRED_OPS = (
    "poly_core.hermite", "poly_core.laguerre2d", "poly_core.gen_laguerre", "poly_core.hermite2d",
    "poly_core.laguerre2d_function", "poly_core.jacobi0", "poly_core.derivative_check",
    "exact_id.check_monomial_inversion_2d", "exact_id.check_hermite_inversion", "exact_id.check_reordering",
    "exact_id.check_laguerre_operator_identity", "exact_id.sum_identity", "exact_id.check_specialized_jacobi0",
    "genfun.gf_hermite", "genfun.gf_mehler", "genfun.gf_even_odd_hermite", "genfun.gf_factherm",
    "genfun.gf_simple_laguerre2d", "genfun.gf_bilinear_laguerre2d", "genfun.gf_hermite2d_product",
    "genfun.gf_mixed", "genfun.gf_even_index_laguerre2d", "genfun.gf_lagsum", "genfun.decompose_coords_s10",
    "genfun.completeness_limit_probe",
    "su11_ops.disentangle", "su11_ops.gauss_conv_1d_oracle", "su11_ops.op_identity_1d",
    "su11_ops.gauss_conv_2d_oracle", "su11_ops.op_identity_2d", "su11_ops.scaling_operator_check",
)


def uncovered_ops() -> list[str]:
    """Required operations that no registered suite declares."""
    declared = {op for s in REGISTRY.values() for op in s.covers}
    return [op for op in REQUIRED_OPS if op not in declared]


def list_suites() -> list[tuple[str, str]]:
    return [(s.id, s.anchor) for s in REGISTRY.values()]


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple = ()
    seed: int = 42
    draws: int = 200
    tolerances: tuple = ()
    truncation: gf.TruncationSpec = gf.DEFAULT_TRUNCATION
    fmt: str = "text"
    out: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        if self.draws < 1:
            raise UsageError("draws must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError("seed must be an unsigned 64-bit integer")
        if self.fmt not in FORMATS:
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise UsageError("jobs must be at least 1")
        for name in self.selected():
            if name not in REGISTRY:
                raise UsageError(f"unknown suite {name!r}")
        for name, _ in self.tolerances:
            if name not in REGISTRY:
                raise UsageError(f"unknown suite {name!r} in tolerance override")

    def selected(self) -> tuple:
        if not self.suites or "all" in self.suites:
            return tuple(REGISTRY)
        return tuple(self.suites)

    def tolerance(self, suite_id: str) -> float:
        return dict(self.tolerances).get(suite_id, REGISTRY[suite_id].tolerance)


def suite_rng(seed: int, suite_id: str) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(suite_id.encode())]))


def _as_complex(x) -> complex:
    if isinstance(x, GaussianRational):
        return complex(float(x.re), float(x.im))
    return complex(x)


def _exact_equal(a, b) -> bool:
    if isinstance(a, (GaussianRational, Fraction, int)) or isinstance(b, (GaussianRational, Fraction, int)):
        try:
            return GaussianRational.coerce(a) == GaussianRational.coerce(b)
        except (TypeError, ValueError):
            pass
    return complex(a) == complex(b)


def _judge(s: Suite, row: Row, tol: float, elapsed: float) -> IdentityReport:
    lhs, rhs = _as_complex(row.lhs), _as_complex(row.rhs)
    diff = abs(lhs - rhs)
    denom = max(abs(rhs), row.floor)
    rel = diff / denom if denom > 0 else (0.0 if diff == 0 else math.inf)
    if not (math.isfinite(diff) and math.isfinite(rel)):
        rel, passed = math.inf, False
    elif s.kind == "exact":
        passed = _exact_equal(row.lhs, row.rhs)
    else:
        passed = rel <= tol
    return IdentityReport(s.id, s.anchor, row.params, lhs, rhs, diff, rel, passed, elapsed)


def run_suite(suite_id: str, config: SuiteConfig) -> list[IdentityReport]:
    s = REGISTRY[suite_id]
    ctx = Context(suite_rng(config.seed, suite_id), config.draws, config.truncation)
    tol = config.tolerance(suite_id)
    reports = []
    start = time.perf_counter()
    rows = iter(s.runner(ctx))
    while True:
        try:
            row = next(rows)
        except StopIteration:
            break
        except (ArithmeticError, ValueError) as err:
            # a draw the implementation cannot handle is a failure, not a crash
            reports.append(IdentityReport(s.id, s.anchor, (("error", type(err).__name__),),
                                          complex("nan"), complex("nan"), math.inf, math.inf, False))
            break
        now = time.perf_counter()
        reports.append(_judge(s, row, tol, now - start))
        start = now
    return reports


def _run_one(args):
    suite_id, config = args
    return run_suite(suite_id, config)


def execute(config: SuiteConfig) -> list[IdentityReport]:
    """All rows for the selected suites, in registry order regardless of ``jobs``."""
    ids = config.selected()
    if config.jobs == 1 or len(ids) == 1:
        batches = [run_suite(i, config) for i in ids]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            batches = list(pool.map(_run_one, [(i, config) for i in ids]))
    return [r for batch in batches for r in batch]


@dataclass(frozen=True)
class SuiteSummary:
    suite: str
    rows: int
    failures: int
    max_rel_err: float
    elapsed: float


class MalformedReportError(ValueError):
    pass


def summarize(reports: Iterable[IdentityReport]) -> dict[str, SuiteSummary]:
    """Per-suite aggregates; a pure function of the rows."""
    acc: dict[str, list] = {}
    for r in reports:
        if not isinstance(r, IdentityReport):
            raise MalformedReportError(f"not an IdentityReport: {r!r}")
        a = acc.setdefault(r.suite, [0, 0, 0.0, 0.0])
        a[0] += 1
        a[1] += not r.passed
        a[2] = max(a[2], r.rel_err)
        a[3] += r.elapsed
    return {k: SuiteSummary(k, *v) for k, v in acc.items()}


def overall(reports: Iterable[IdentityReport]) -> SuiteSummary:
    """One aggregate over every row; an empty report has no failures and zero error."""
    parts = summarize(reports).values()
    return SuiteSummary("all", sum(p.rows for p in parts), sum(p.failures for p in parts),
                        max((p.max_rel_err for p in parts), default=0.0), sum(p.elapsed for p in parts))


# -- formatting --------------------------------------------------------------------------------------

def _num(x: float) -> str:
    return repr(float(x))


def _value(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _num(v)
    if isinstance(v, (complex, np.complexfloating)):
        v = complex(v)
        return f"{_num(v.real)}{'+' if v.imag >= 0 or math.isnan(v.imag) else '-'}{_num(abs(v.imag))}j"
    return str(v)


def _params_text(params) -> str:
    return ";".join(f"{k}={_value(v)}" for k, v in params)


CSV_COLUMNS = ("suite", "anchor", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "pass")


def _record(r: IdentityReport) -> dict:
    return {"suite": r.suite, "anchor": r.anchor, "params": _params_text(r.params),
            "lhs_re": _num(r.lhs.real), "lhs_im": _num(r.lhs.imag),
            "rhs_re": _num(r.rhs.real), "rhs_im": _num(r.rhs.imag),
            "abs_err": _num(r.abs_err), "rel_err": _num(r.rel_err), "pass": "true" if r.passed else "false"}


def _json_number(x: float):
    return x if math.isfinite(x) else None


def render(reports: list[IdentityReport], fmt: str) -> str:
    """Deterministic report body (no timings)."""
    summary = summarize(reports)
    total_fail = sum(s.failures for s in summary.values())
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for r in reports:
            writer.writerow(_record(r))
        return buf.getvalue()
    if fmt == "json":
        rows = [{"suite": r.suite, "anchor": r.anchor,
                 "params": {k: _value(v) for k, v in r.params},
                 "lhs_re": _json_number(r.lhs.real), "lhs_im": _json_number(r.lhs.imag),
                 "rhs_re": _json_number(r.rhs.real), "rhs_im": _json_number(r.rhs.imag),
                 "abs_err": _json_number(r.abs_err), "rel_err": _json_number(r.rel_err),
                 "pass": r.passed} for r in reports]
        suites = [{"suite": s.suite, "rows": s.rows, "failures": s.failures,
                   "max_rel_err": _json_number(s.max_rel_err)} for s in summary.values()]
        return json.dumps({"rows": rows, "summary": suites,
                           "total_rows": len(reports), "total_failures": total_fail}, indent=1) + "\n"
    lines = []
    for r in reports:
        lines.append(" | ".join((r.suite, _params_text(r.params), _value(r.lhs), _value(r.rhs),
                                 f"abs={r.abs_err:.3e}", f"rel={r.rel_err:.3e}",
                                 "PASS" if r.passed else "FAIL")))
    lines.append("")
    for s in summary.values():
        lines.append(f"{s.suite:32s} rows={s.rows:5d} failures={s.failures:4d} max_rel_err={s.max_rel_err:.3e}")
    lines.append(f"total rows={len(reports)} failures={total_fail}")
    return "\n".join(lines) + "\n"


def run(config: SuiteConfig) -> tuple[int, list[IdentityReport]]:
    """Execute, write the report and return (exit status, rows)."""
    if config.out is not None:
        try:
            handle = open(config.out, "w", encoding="utf-8", newline="")
        except OSError as err:
            raise UsageError(f"cannot write {config.out}: {err}") from err
    reports = execute(config)
    body = render(reports, config.fmt)
    if config.out is None:
        sys.stdout.write(body)
    else:
        with handle:
            handle.write(body)
    status = 0 if all(r.passed for r in reports) else 1
    return status, reports


# -- CLI -----------------------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tolerance_arg(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("expected ID=VALUE")
    try:
        tol = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance {value!r}") from None
    if not tol >= 0:
        raise argparse.ArgumentTypeError("tolerance must be non-negative")
    return name, tol


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="laguerre2d-verify", description="Verify Laguerre 2D / Hermite identities.")
    p.add_argument("--suite", action="append", default=[],
                   help="suite id or 'all' (repeatable, comma separated allowed)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--draws", type=int, default=200, help="random draws per identity")
    p.add_argument("--tol", action="append", type=_tolerance_arg, default=[], metavar="ID=VALUE")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--list", action="store_true", help="list suites and exit")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--max-terms", type=int, default=gf.DEFAULT_TRUNCATION.max_terms_per_index)
    p.add_argument("--policy", choices=[x.value for x in gf.Policy], default=gf.DEFAULT_TRUNCATION.policy.value)
    return p


def config_from_args(argv) -> tuple[SuiteConfig, bool]:
    args = build_parser().parse_args(argv)
    suites = tuple(part for item in args.suite for part in item.split(",") if part)
    try:
        trunc = gf.TruncationSpec(max_terms_per_index=args.max_terms,
                                  tail_tolerance=gf.DEFAULT_TRUNCATION.tail_tolerance, policy=args.policy)
    except ValueError as err:
        raise UsageError(str(err)) from err
    config = SuiteConfig(suites, args.seed, args.draws, tuple(args.tol), trunc, args.format, args.out, args.jobs)
    return config, args.list


def main(argv=None) -> int:
    try:
        config, listing = config_from_args(sys.argv[1:] if argv is None else argv)
        if listing:
            for sid, anchor in list_suites():
                print(f"{sid:32s} {anchor}")
            return 0
        status, reports = run(config)
    except UsageError as err:
        print(f"laguerre2d-verify: error: {err}", file=sys.stderr)
        return 2
    for s in summarize(reports).values():
        print(f"{s.suite:32s} {s.elapsed:8.2f}s", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
