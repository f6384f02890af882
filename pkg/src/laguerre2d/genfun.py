"""Generating functions: truncated series against closed forms.

Every ``gf_*`` function returns a named tuple whose first field is the
truncated series and whose remaining fields are closed forms or alternative
series that must agree with it. Series are accumulated from normalized
tables (L_{m,n} / sqrt(m! n!), H_n / sqrt(2^n n!)) so that no factorial is
ever formed explicitly. Rewrites in terms of generalized Laguerre
polynomials are summed in log space, because their individual factors
(powers of 1/z, ratios of factorials) overflow long before the terms do.

Fields that need a division by a quantity closer to zero than
``EXCLUSION_RADIUS`` are reported as ``None``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.special import gammaln

from laguerre2d import poly_core
from laguerre2d._backend import kernels

EXCLUSION_RADIUS = 1e-3
_TAIL_SHELLS = 5


class Policy(enum.Enum):
    FIXED_N = "FixedN"
    TAIL_BOUND = "TailBound"


@dataclass(frozen=True)
class TruncationSpec:
    """How infinite series are cut off and how the cut is validated.

    ``FIXED_N`` sums ``max_terms_per_index + 1`` terms in every summation
    index and then requires each of the last five shells to be below
    ``tail_tolerance`` relative to the sum. ``TAIL_BOUND`` stops at the first
    shell where a geometric bound on the remainder is below the tolerance.
    """

    max_terms_per_index: int = 120
    tail_tolerance: float = 1e-13
    policy: Policy = Policy.FIXED_N

    def __post_init__(self):
        if self.max_terms_per_index < 1:
            raise ValueError("max_terms_per_index must be >= 1")
        if not self.tail_tolerance > 0:
            raise ValueError("tail_tolerance must be positive")
        if not isinstance(self.policy, Policy):
            object.__setattr__(self, "policy", Policy(self.policy))


DEFAULT_TRUNCATION = TruncationSpec()


class TruncationError(ArithmeticError):
    """The tail of a truncated series is not negligible."""

    def __init__(self, message: str, partial, tail: float):
        super().__init__(message)
        self.partial = partial
        self.tail = tail


class GuardError(ValueError):
    """Parameters lie outside the region where the series converges."""


# -- series accumulation -----------------------------------------------------

def _shells(terms: np.ndarray):
    """Shell sums and per-shell max moduli; shell k holds indices with max == k."""
    if terms.ndim == 1:
        return terms, np.abs(terms)
    n0, n1 = terms.shape
    size = max(n0, n1)
    idx = np.maximum.outer(np.arange(n0), np.arange(n1)).ravel()
    flat = terms.ravel()
    sums = np.zeros(size, dtype=np.complex128)
    np.add.at(sums, idx, flat)
    peaks = np.zeros(size)
    np.maximum.at(peaks, idx, np.abs(flat))
    return sums, peaks


def sum_series(terms, trunc: TruncationSpec = DEFAULT_TRUNCATION, ratio: float = 0.0) -> complex:
    """Sum a 1D or 2D array of series terms under ``trunc``.

    ``ratio`` is a known geometric rate of the series (e.g. |s t|); the
    tail-bound policy uses the larger of it and the observed shell ratio.
    """
    terms = np.asarray(terms, dtype=np.complex128)
    if not np.all(np.isfinite(terms)):
        raise TruncationError("non-finite series term", math.nan, math.inf)
    sums, peaks = _shells(terms)
    tol = trunc.tail_tolerance
    if trunc.policy is Policy.FIXED_N:
        total = complex(terms.sum())
        tail = float(peaks[-_TAIL_SHELLS:].max())
        if tail >= tol * max(1.0, abs(total)):
            raise TruncationError(f"tail term {tail:.3g} exceeds tolerance", total, tail)
        return total
    partial = np.cumsum(sums)
    mags = np.abs(sums)
    for k in range(3, len(sums)):
        envelope = max(mags[k], mags[k - 1])
        earlier = max(mags[k - 2], mags[k - 3])
        if envelope == 0.0 and earlier == 0.0:
            observed = 0.0
        else:
            observed = math.sqrt(envelope / earlier) if earlier > 0 else math.inf
        r = max(ratio, observed)
        if r < 1.0:
            bound = 2.0 * envelope * r / (1.0 - r)
            if bound <= tol * max(1.0, abs(partial[k])):
                return complex(partial[k])
    raise TruncationError("remainder bound not reached", complex(partial[-1]), float(mags[-1]))


def _power_weights(x: complex, count: int) -> np.ndarray:
    """x^k for k < count, robust to x == 0."""
    out = np.empty(count, dtype=np.complex128)
    out[0] = 1.0
    for k in range(1, count):
        out[k] = out[k - 1] * x
    return out


def _logpow(base, exponent):
    """exponent * log(base) with 0 * log(0) taken as 0."""
    exponent = np.asarray(exponent, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = exponent * np.log(np.complex128(base))
    return np.where(exponent == 0, 0.0, val)


def _even_scale(count: int) -> np.ndarray:
    """sqrt((2k)!) / (k! 2^k) for k < count."""
    k = np.arange(count)
    return np.exp(0.5 * gammaln(2 * k + 1) - gammaln(k + 1) - k * math.log(2.0))


def _norm_hermite(x, nmax: int) -> np.ndarray:
    return kernels.hermite_table(complex(x), nmax, True)


def _norm_laguerre(z, zp, mmax: int, nmax: int) -> np.ndarray:
    return kernels.laguerre2d_table(complex(z), complex(zp), mmax, nmax, 1.0, True)


def log_gen_laguerre(ns, nus, u) -> np.ndarray:
    """log L_n^nu(u) for integer arrays ``ns`` and ``nus`` with nu >= -n.

    Negative nu goes through L_n^{-k}(u) = (-u)^k (n-k)!/n! L_{n-k}^k(u) so
    that the small factor u^k is never produced by cancellation. Exact zeros
    come back as -inf.
    """
    ns, nus = np.broadcast_arrays(np.asarray(ns, dtype=np.int64), np.asarray(nus, dtype=np.int64))
    if np.any(nus < -ns):
        raise ValueError("nu < -n has no Laguerre 2D counterpart")
    u = np.complex128(u)
    flip = nus < 0
    alpha = np.abs(nus)
    order = np.where(flip, ns + nus, ns)
    # one recurrence per distinct parameter, keeping the whole history
    params, lane = np.unique(alpha, return_inverse=True)
    depth = int(order.max(initial=0))
    hist = np.empty((params.size, depth + 1), dtype=np.complex128)
    hist[:, 0] = 1.0
    a = params.astype(np.float64)
    prev = np.zeros(params.size, dtype=np.complex128)
    for k in range(depth):
        prev, hist[:, k + 1] = hist[:, k], ((2 * k + 1 + a - u) * hist[:, k] - (k + a) * prev) / (k + 1)
    vals = hist[lane.reshape(alpha.shape), order]
    with np.errstate(divide="ignore"):
        logs = np.log(vals)
    prefix = _logpow(-u, np.where(flip, alpha, 0)) + np.where(
        flip, gammaln(order + 1) - gammaln(ns + 1), 0.0)
    return logs + prefix


def _exp_sum(logterms, trunc, ratio=0.0) -> complex:
    with np.errstate(over="ignore", invalid="ignore"):
        terms = np.exp(np.asarray(logterms))
    terms = np.where(np.isneginf(np.real(logterms)), 0.0, terms)
    return sum_series(terms, trunc, ratio)


def _near_zero(*values) -> bool:
    return any(abs(complex(v)) < EXCLUSION_RADIUS for v in values)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise GuardError(message)


def _finite(*values) -> None:
    for v in values:
        c = complex(v)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError(f"non-finite parameter {v!r}")


# -- Hermite ------------------------------------------------------------------

class HermiteGF(NamedTuple):
    lhs: complex
    rhs: complex


class MehlerGF(NamedTuple):
    lhs: complex
    rhs: complex
    rhs_factorized: complex


class EvenOddHermiteGF(NamedTuple):
    even_lhs: Optional[complex]
    even_rhs: Optional[complex]
    odd_lhs: Optional[complex]
    odd_rhs: Optional[complex]
    cosh_lhs: complex
    cosh_rhs: complex
    sinh_lhs: complex
    sinh_rhs: complex


class FactHermGF(NamedTuple):
    lhs: complex
    rhs_hermite: complex
    rhs_laguerre: complex


def hermite_weights(t, count: int) -> np.ndarray:
    """t^n sqrt(2^n / n!), the weight of H_n / sqrt(2^n n!) in sum t^n/n! H_n."""
    out = np.empty(count, dtype=np.complex128)
    out[0] = 1.0
    for n in range(1, count):
        out[n] = out[n - 1] * t * math.sqrt(2.0 / n)
    return out


def gf_hermite(t, x, trunc: TruncationSpec = DEFAULT_TRUNCATION) -> HermiteGF:
    _finite(t, x)
    t, x = complex(t), complex(x)
    n = trunc.max_terms_per_index
    lhs = sum_series(hermite_weights(t, n + 1) * _norm_hermite(x, n), trunc)
    return HermiteGF(lhs, cmath.exp(2 * t * x - t * t))


def mehler_rhs(t, x, y) -> complex:
    t, x, y = complex(t), complex(x), complex(y)
    return cmath.exp((2 * t * x * y - t * t * (x * x + y * y)) / (1 - t * t)) / cmath.sqrt(1 - t * t)


def mehler_rhs_factorized(t, x, y) -> complex:
    t, x, y = complex(t), complex(x), complex(y)
    plus = cmath.exp(t * (x + y) ** 2 / (2 * (1 + t))) / cmath.sqrt(1 + t)
    minus = cmath.exp(-t * (x - y) ** 2 / (2 * (1 - t))) / cmath.sqrt(1 - t)
    return plus * minus


def _mehler_terms(t, x, y, n):
    return _power_weights(t, n + 1) * _norm_hermite(x, n) * _norm_hermite(y, n)


def gf_mehler(t, x, y, trunc: TruncationSpec = DEFAULT_TRUNCATION) -> MehlerGF:
    _finite(t, x, y)
    t = complex(t)
    _require(abs(t) < 1, "Mehler series needs |t| < 1")
    lhs = sum_series(_mehler_terms(t, x, y, trunc.max_terms_per_index), trunc, abs(t))
    return MehlerGF(lhs, mehler_rhs(t, x, y), mehler_rhs_factorized(t, x, y))


def even_hermite_terms(t2, x, count: int) -> np.ndarray:
    """Terms (-1)^m / m! (t2/4)^m H_{2m}(x) for m < count, t2 standing for t^2."""
    h = _norm_hermite(x, 2 * count - 1)[0::2]
    return _power_weights(-complex(t2), count) * _even_scale(count) * h


def even_hermite_rhs(t2, x) -> complex:
    t2, x = complex(t2), complex(x)
    return cmath.exp(-t2 * x * x / (1 - t2)) / cmath.sqrt(1 - t2)


def gf_even_odd_hermite(t, x, trunc: TruncationSpec = DEFAULT_TRUNCATION) -> EvenOddHermiteGF:
    """Even and odd Hermite generating functions and the cosh/sinh split.

    The even/odd pair needs |t| < 1 and is ``None`` outside it; the cosh and
    sinh forms are entire in t.
    """
    _finite(t, x)
    t, x = complex(t), complex(x)
    n = trunc.max_terms_per_index
    h = _norm_hermite(x, 2 * n + 1)
    w = hermite_weights(t, 2 * n + 2)
    damp = cmath.exp(-t * t)
    cosh_lhs = sum_series(w[0::2] * h[0::2], trunc)
    sinh_lhs = sum_series(w[1::2] * h[1::2], trunc)
    cosh_rhs = damp * cmath.cosh(2 * t * x)
    sinh_rhs = damp * cmath.sinh(2 * t * x)
    if abs(t) >= 1:
        return EvenOddHermiteGF(None, None, None, None, cosh_lhs, cosh_rhs, sinh_lhs, sinh_rhs)
    even_lhs = sum_series(even_hermite_terms(t * t, x, n + 1), trunc, abs(t) ** 2)
    odd_scale = _even_scale(n + 1) * np.sqrt(2.0 * np.arange(n + 1) + 1.0)
    odd_terms = _power_weights(-t * t, n + 1) * (t / math.sqrt(2.0)) * odd_scale * h[1::2]
    odd_lhs = sum_series(odd_terms, trunc, abs(t) ** 2)
    even_rhs = even_hermite_rhs(t * t, x)
    odd_rhs = t * x * even_rhs / (1 - t * t)
    return EvenOddHermiteGF(even_lhs, even_rhs, odd_lhs, odd_rhs,
                            cosh_lhs, cosh_rhs, sinh_lhs, sinh_rhs)


def gf_factherm(n: int, x, y) -> FactHermGF:
    """H_n(x) H_n(y) against its two finite re-expansions in (x+y) and (x-y)."""
    if not 0 <= n <= 30:
        raise poly_core.IndexBoundError("factorized Hermite product needs 0 <= n <= 30")
    _finite(x, y)
    x, y = complex(x), complex(y)
    plus, minus = (x + y) / math.sqrt(2.0), (x - y) / math.sqrt(2.0)
    hp = kernels.hermite_table(plus, 2 * n, False)
    hm = kernels.hermite_table(minus, 2 * n, False)
    rhs_h = sum((-1) ** k * math.comb(n, k) * hp[2 * (n - k)] * hm[2 * k] for k in range(n + 1))
    rhs_h /= 2 ** n
    lp = [poly_core.gen_laguerre(k, -0.5, plus * plus) for k in range(n + 1)]
    lm = [poly_core.gen_laguerre(k, -0.5, minus * minus) for k in range(n + 1)]
    rhs_l = sum((-1) ** (n - k) * lp[n - k] * lm[k] for k in range(n + 1))
    rhs_l *= 2 ** n * math.factorial(n)
    lhs = poly_core.hermite(n, x) * poly_core.hermite(n, y)
    return FactHermGF(complex(lhs), complex(rhs_h), complex(rhs_l))


# -- Laguerre 2D, single generating functions --------------------------------

class SimpleLaguerreGF(NamedTuple):
    lhs: complex
    rhs: complex


class SingleIndexGF(NamedTuple):
    lhs: complex
    rhs: complex
    rewrite_lower: Optional[complex]
    rewrite_upper: Optional[complex]
    rewrite_rhs: Optional[complex]


def factorial_weights(s, count: int) -> np.ndarray:
    """s^m / sqrt(m!), the weight of the normalized table in sum s^m/m! (...)."""
    out = np.empty(count, dtype=np.complex128)
    out[0] = 1.0
    for m in range(1, count):
        out[m] = out[m - 1] * s / math.sqrt(m)
    return out


def simple_rhs(s, t, z, zp) -> complex:
    s, t, z, zp = (complex(v) for v in (s, t, z, zp))
    return cmath.exp(s * z + t * zp - s * t)


def gf_simple_laguerre2d(s, t, z, zp, trunc: TruncationSpec = DEFAULT_TRUNCATION) -> SimpleLaguerreGF:
    _finite(s, t, z, zp)
    n = trunc.max_terms_per_index
    terms = np.outer(factorial_weights(complex(s), n + 1), factorial_weights(complex(t), n + 1))
    lhs = sum_series(terms * _norm_laguerre(z, zp, n, n), trunc)
    return SimpleLaguerreGF(lhs, simple_rhs(s, t, z, zp))


def gf_single_index_laguerre2d(m: int, t, z, zp,
                               trunc: TruncationSpec = DEFAULT_TRUNCATION) -> SingleIndexGF:
    """Sum over the second index only, plus its generalized Laguerre rewrites.

    The rewrites are divided by z^m; they are ``None`` when |z| or |z z'| is
    inside the exclusion radius.
    """
    poly_core._check_index(m)
    _finite(t, z, zp)
    t, z, zp = complex(t), complex(z), complex(zp)
    n = trunc.max_terms_per_index
    row = _norm_laguerre(z, zp, m, n)[m]
    scale = math.exp(0.5 * gammaln(m + 1))
    lhs = sum_series(scale * factorial_weights(t, n + 1) * row, trunc)
    rhs = (z - t) ** m * cmath.exp(t * zp)
    u = z * zp
    if _near_zero(z, u):
        return SingleIndexGF(lhs, rhs, None, None, None)
    ks = np.arange(n + 1)
    lower = _exp_sum(_logpow(-t / z, ks) + log_gen_laguerre(ks, m - ks, u), trunc)
    log_pref = _logpow(-1.0, m) + gammaln(m + 1) - _logpow(u, m)
    upper = _exp_sum(log_pref + _logpow(t * zp, ks) - gammaln(ks + 1)
                     + log_gen_laguerre(m, ks - m, u), trunc)
    rewrite_rhs = (1 - t / z) ** m * cmath.exp(t * zp)
    return SingleIndexGF(lhs, rhs, lower, upper, rewrite_rhs)


# -- products of two Laguerre 2D polynomials ---------------------------------

class BilinearGF(NamedTuple):
    lhs: complex
    rhs: complex
    rhs_factorized: complex


class BilinearRewriteGF(NamedTuple):
    lower: Optional[complex]
    upper: Optional[complex]
    rhs: complex


class UsualLaguerreGF(NamedTuple):
    lhs: complex
    laguerre_lhs: complex
    rhs: complex


class BilinearLimit(NamedTuple):
    bilinear: complex
    simple: complex


def bilinear_rhs(s, t, z, zp, w, wp) -> complex:
    s, t, z, zp, w, wp = (complex(v) for v in (s, t, z, zp, w, wp))
    st = s * t
    return cmath.exp((s * z * wp + t * w * zp - st * (z * zp + w * wp)) / (1 - st)) / (1 - st)


def bilinear_rhs_factorized(s, t, z, zp, w, wp, flip: bool = False) -> complex:
    """Two-factor form with principal sqrt(s), sqrt(t); ``flip`` negates both roots."""
    s, t, z, zp, w, wp = (complex(v) for v in (s, t, z, zp, w, wp))
    a, b = cmath.sqrt(s), cmath.sqrt(t)
    if flip:
        a, b = -a, -b
    ab = a * b
    plus = cmath.exp((a * z + b * w) * (b * zp + a * wp) / (2 * (1 + ab))) / (1 + ab)
    minus = cmath.exp(-(a * z - b * w) * (b * zp - a * wp) / (2 * (1 - ab))) / (1 - ab)
    return plus * minus


def _bilinear_guard(s, t):
    _require(abs(complex(s) * complex(t)) < 1, "bilinear series needs |s t| < 1")


def gf_bilinear_laguerre2d(s, t, z, zp, w, wp,
                           trunc: TruncationSpec = DEFAULT_TRUNCATION) -> BilinearGF:
    _finite(s, t, z, zp, w, wp)
    _bilinear_guard(s, t)
    s, t = complex(s), complex(t)
    n = trunc.max_terms_per_index
    weights = np.outer(_power_weights(s, n + 1), _power_weights(t, n + 1))
    terms = weights * _norm_laguerre(z, zp, n, n) * _norm_laguerre(wp, w, n, n)
    lhs = sum_series(terms, trunc, abs(s * t))
    return BilinearGF(lhs, bilinear_rhs(s, t, z, zp, w, wp),
                      bilinear_rhs_factorized(s, t, z, zp, w, wp))


def gf_bilinear_genlaguerre(s, t, z, zp, w, wp,
                            trunc: TruncationSpec = DEFAULT_TRUNCATION) -> BilinearRewriteGF:
    """The bilinear series with both factors written as generalized Laguerre polynomials.

    ``lower`` uses L_n^{m-n} twice, ``upper`` mixes L_m^{n-m} and L_n^{m-n}.
    """
    _finite(s, t, z, zp, w, wp)
    _bilinear_guard(s, t)
    s, t, z, zp, w, wp = (complex(v) for v in (s, t, z, zp, w, wp))
    rhs = bilinear_rhs(s, t, z, zp, w, wp)
    n = trunc.max_terms_per_index
    m_idx, n_idx = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    u1, u2 = z * zp, w * wp
    if _near_zero(z, wp, zp, u1, u2):
        return BilinearRewriteGF(None, None, rhs)
    base = _logpow(s, m_idx) + _logpow(t, n_idx)
    nu = m_idx - n_idx
    lower = _exp_sum(base + gammaln(n_idx + 1) - gammaln(m_idx + 1) + _logpow(z * wp, nu)
                     + log_gen_laguerre(n_idx, nu, u1) + log_gen_laguerre(n_idx, nu, u2),
                     trunc, abs(s * t))
    upper = _exp_sum(base + _logpow(-zp / wp, -nu)
                     + log_gen_laguerre(m_idx, -nu, u1) + log_gen_laguerre(n_idx, nu, u2),
                     trunc, abs(s * t))
    return BilinearRewriteGF(lower, upper, rhs)


def usual_laguerre_rhs(t, u) -> complex:
    t, u = complex(t), complex(u)
    return cmath.exp(-t * u / (1 - t)) / (1 - t)


def gf_usual_laguerre(t, z, zp, trunc: TruncationSpec = DEFAULT_TRUNCATION) -> UsualLaguerreGF:
    """Diagonal Laguerre 2D series against the classical Laguerre generating function."""
    _finite(t, z, zp)
    t = complex(t)
    _require(abs(t) < 1, "Laguerre series needs |t| < 1")
    n = trunc.max_terms_per_index
    diag = np.diagonal(_norm_laguerre(z, zp, n, n))
    lhs = sum_series(_power_weights(-t, n + 1) * diag, trunc, abs(t))
    u = complex(z) * complex(zp)
    ks = np.arange(n + 1)
    lag = _exp_sum(log_gen_laguerre(ks, 0, u) + _logpow(t, ks), trunc, abs(t))
    return UsualLaguerreGF(lhs, lag, usual_laguerre_rhs(t, u))


def bilinear_limit(s, t, z, zp, w, wp, delta: float = 1e-3) -> BilinearLimit:
    """Bilinear closed form with w, w' scaled by 1/delta and s, t by delta/w', delta/w.

    As delta -> 0 this tends to the simple generating function at (s, t).
    """
    _finite(s, t, z, zp, w, wp)
    if _near_zero(w, wp):
        raise GuardError("limit needs w, w' away from zero")
    big_w, big_wp = complex(w) / delta, complex(wp) / delta
    value = bilinear_rhs(complex(s) / big_wp, complex(t) / big_w, z, zp, big_w, big_wp)
    return BilinearLimit(value, simple_rhs(s, t, z, zp))


# -- Hermite 2D and mixed products -------------------------------------------

class Hermite2DProductGF(NamedTuple):
    lhs: complex
    rhs: complex
    rhs_factorized: complex


class EvenProductGF(NamedTuple):
    lhs: complex
    rhs: complex


class MixedGF(NamedTuple):
    lhs: complex
    rhs: complex


def hermite2d_product_rhs(s, t, x, y, u, v) -> complex:
    s, t, x, y, u, v = (complex(a) for a in (s, t, x, y, u, v))
    expo = (2 * s * x * u - s * s * (x * x + u * u)) / (1 - s * s) \
        + (2 * t * y * v - t * t * (y * y + v * v)) / (1 - t * t)
    return cmath.exp(expo) / (cmath.sqrt(1 - s * s) * cmath.sqrt(1 - t * t))


def gf_hermite2d_product(s, t, x, y, u, v,
                         trunc: TruncationSpec = DEFAULT_TRUNCATION) -> Hermite2DProductGF:
    _finite(s, t, x, y, u, v)
    s, t = complex(s), complex(t)
    _require(abs(s) < 1 and abs(t) < 1, "Hermite 2D product needs |s| < 1 and |t| < 1")
    n = trunc.max_terms_per_index
    terms = np.outer(_mehler_terms(s, x, u, n), _mehler_terms(t, y, v, n))
    lhs = sum_series(terms, trunc, max(abs(s), abs(t)))
    return Hermite2DProductGF(lhs, hermite2d_product_rhs(s, t, x, y, u, v),
                              mehler_rhs(s, x, u) * mehler_rhs(t, y, v))


def gf_hermite2d_even_product(s, t, x, y, trunc: TruncationSpec = DEFAULT_TRUNCATION) -> EvenProductGF:
    """The u = v = 0 case: a product of two even Hermite generating functions."""
    _finite(s, t, x, y)
    s, t = complex(s), complex(t)
    _require(abs(s) < 1 and abs(t) < 1, "needs |s| < 1 and |t| < 1")
    n = trunc.max_terms_per_index
    terms = np.outer(even_hermite_terms(s * s, x, n + 1), even_hermite_terms(t * t, y, n + 1))
    lhs = sum_series(terms, trunc, max(abs(s), abs(t)) ** 2)
    return EvenProductGF(lhs, hermite2d_product_rhs(s, t, x, y, 0, 0))


def mixed_rhs(s, t, z, zp, u, v) -> complex:
    s, t, z, zp, u, v = (complex(a) for a in (s, t, z, zp, u, v))
    st = s * t
    num = (2 * math.sqrt(2.0) * (s * u * z + t * v * zp + st * (s * v * z + t * u * zp))
           - s * s * z * z - t * t * zp * zp - 4 * st * u * v
           - 2 * st * st * (z * zp + u * u + v * v))
    return cmath.exp(num / (2 * (1 - st * st))) / cmath.sqrt(1 - st * st)


def gf_mixed(s, t, z, zp, u, v, trunc: TruncationSpec = DEFAULT_TRUNCATION) -> MixedGF:
    """Product of a Laguerre 2D and a Hermite 2D polynomial."""
    _finite(s, t, z, zp, u, v)
    s, t = complex(s), complex(t)
    _require(abs(s * t) < 1, "mixed series needs |s t| < 1")
    n = trunc.max_terms_per_index
    weights = np.outer(_power_weights(s, n + 1) * _norm_hermite(u, n),
                       _power_weights(t, n + 1) * _norm_hermite(v, n))
    lhs = sum_series(weights * _norm_laguerre(z, zp, n, n), trunc, abs(s * t))
    return MixedGF(lhs, mixed_rhs(s, t, z, zp, u, v))


# -- even indices --------------------------------------------------------------

class EvenIndexGF(NamedTuple):
    lhs: complex
    rhs: complex
    rhs_factorized: complex
    rhs_sigma_tau: complex
    hermite_product: Optional[complex]
    hermite_closed: Optional[complex]


class SigmaTauGF(NamedTuple):
    lhs: complex
    rhs: complex


class EvenIndexRewriteGF(NamedTuple):
    lower: Optional[complex]
    upper: Optional[complex]
    rhs: complex


def even_index_rhs(s, t, z, zp) -> complex:
    s, t, z, zp = (complex(a) for a in (s, t, z, zp))
    q = (s * t) ** 2
    return cmath.exp(-(s * s * z * z + t * t * zp * zp + 2 * q * z * zp) / (2 * (1 - q))) \
        / cmath.sqrt(1 - q)


def even_index_rhs_factorized(s, t, z, zp) -> complex:
    s, t, z, zp = (complex(a) for a in (s, t, z, zp))
    st = s * t
    plus = cmath.exp(-(s * z + t * zp) ** 2 / (4 * (1 - st))) / cmath.sqrt(1 - st)
    minus = cmath.exp(-(s * z - t * zp) ** 2 / (4 * (1 + st))) / cmath.sqrt(1 + st)
    return plus * minus


def sigma_tau_rhs(sigma, tau, z, zp) -> complex:
    sigma, tau, z, zp = (complex(a) for a in (sigma, tau, z, zp))
    q = sigma * tau
    return cmath.exp((sigma * z * z + tau * zp * zp - 2 * q * z * zp) / (2 * (1 - q))) \
        / cmath.sqrt(1 - q)


def even_index_coords(s, t, z, zp):
    """(x, y) in which the even-index series splits into two even Hermite series."""
    r = cmath.sqrt(complex(s) / complex(t))
    z, zp = complex(z), complex(zp)
    return 0.5 * (r * z + zp / r), -0.5j * (r * z - zp / r)


def _even_index_sum(sigma, tau, z, zp, trunc):
    n = trunc.max_terms_per_index
    table = _norm_laguerre(z, zp, 2 * n, 2 * n)[0::2, 0::2]
    scale = _even_scale(n + 1)
    weights = np.outer(_power_weights(sigma, n + 1) * scale, _power_weights(tau, n + 1) * scale)
    return sum_series(weights * table, trunc, abs(sigma * tau))


def gf_even_index_laguerre2d(s, t, z, zp, trunc: TruncationSpec = DEFAULT_TRUNCATION) -> EvenIndexGF:
    """Laguerre 2D polynomials with two even indices.

    Besides the direct and factorized closed forms this reports the sigma/tau
    closed form at sigma = -s^2, tau = -t^2 and, for s, t away from zero,
    the split into two even Hermite series in the variables of
    ``even_index_coords``.
    """
    _finite(s, t, z, zp)
    s, t = complex(s), complex(t)
    _require(abs(s * t) ** 2 < 1, "even-index series needs |s^2 t^2| < 1")
    lhs = _even_index_sum(-s * s, -t * t, z, zp, trunc)
    st = s * t
    herm_series = herm_closed = None
    if not _near_zero(s, t):
        x, y = even_index_coords(s, t, z, zp)
        count = trunc.max_terms_per_index + 1
        herm_series = (sum_series(even_hermite_terms(st, x, count), trunc, abs(st))
                       * sum_series(even_hermite_terms(-st, y, count), trunc, abs(st)))
        herm_closed = even_hermite_rhs(st, x) * even_hermite_rhs(-st, y)
    return EvenIndexGF(lhs, even_index_rhs(s, t, z, zp), even_index_rhs_factorized(s, t, z, zp),
                       sigma_tau_rhs(-s * s, -t * t, z, zp), herm_series, herm_closed)


def gf_even_index_sigma_tau(sigma, tau, z, zp,
                            trunc: TruncationSpec = DEFAULT_TRUNCATION) -> SigmaTauGF:
    _finite(sigma, tau, z, zp)
    sigma, tau = complex(sigma), complex(tau)
    _require(abs(sigma * tau) < 1, "sigma/tau series needs |sigma tau| < 1")
    return SigmaTauGF(_even_index_sum(sigma, tau, z, zp, trunc), sigma_tau_rhs(sigma, tau, z, zp))


def gf_even_index_genlaguerre(s, t, z, zp,
                              trunc: TruncationSpec = DEFAULT_TRUNCATION) -> EvenIndexRewriteGF:
    """Even-index series in generalized Laguerre form, two index placements."""
    _finite(s, t, z, zp)
    s, t, z, zp = (complex(v) for v in (s, t, z, zp))
    _require(abs(s * t) ** 2 < 1, "even-index series needs |s^2 t^2| < 1")
    rhs = even_index_rhs(s, t, z, zp)
    u = z * zp
    n = trunc.max_terms_per_index
    k, l = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    base = _logpow(s, 2 * k) + _logpow(t, 2 * l)
    lower = upper = None
    # (j - 1/2)! / (-1/2)! = (2j)! / (4^j j!)
    if not _near_zero(z, u):
        lower = _exp_sum(base + gammaln(2 * l + 1) - l * math.log(4.0) - gammaln(l + 1)
                         - gammaln(k + 1) + _logpow(-z * z / 2, k - l)
                         + log_gen_laguerre(2 * l, 2 * (k - l), u), trunc, abs(s * t) ** 2)
    if not _near_zero(zp, u):
        upper = _exp_sum(base + gammaln(2 * k + 1) - k * math.log(4.0) - gammaln(k + 1)
                         - gammaln(l + 1) + _logpow(-zp * zp / 2, l - k)
                         + log_gen_laguerre(2 * k, 2 * (l - k), u), trunc, abs(s * t) ** 2)
    return EvenIndexRewriteGF(lower, upper, rhs)


# -- single sums over products -------------------------------------------------

class LagsumGF(NamedTuple):
    lhs: complex
    rhs_root: complex
    rhs: Optional[complex]
    rewrite_lower: Optional[complex]
    rewrite_upper: Optional[complex]
    rewrite_closed_n: Optional[complex]
    rewrite_closed_m: Optional[complex]


class LagsumDiagonalGF(NamedTuple):
    lhs: complex
    rhs: complex
    u_lower: Optional[complex]
    u_upper: Optional[complex]
    u_closed_n: Optional[complex]
    u_closed_m: Optional[complex]


def _lagsum_series(m, n, t, z, zp, w, wp, trunc):
    count = trunc.max_terms_per_index
    first = _norm_laguerre(z, zp, m, count)[m]
    second = _norm_laguerre(w, wp, count, n)[:, n]
    scale = math.exp(0.5 * (gammaln(m + 1) + gammaln(n + 1)))
    return sum_series(scale * _power_weights(-t, count + 1) * first * second, trunc)


def _homogenized(m, n, a, b, c) -> complex:
    """c^{(m+n)/2} L_{m,n}(a/sqrt(c), b/sqrt(c)) without choosing a root."""
    return complex(kernels.laguerre2d_table(complex(a), complex(b), m, n, complex(c), False)[m, n])


def gf_lagsum(m: int, n: int, t, z, zp, w, wp,
              trunc: TruncationSpec = DEFAULT_TRUNCATION) -> LagsumGF:
    """sum_k (-t)^k/k! L_{m,k}(z,z') L_{k,n}(w,w') and its closed forms.

    ``rhs_root`` is the homogenized form, continuous at t = 0; ``rhs`` is the
    form with z' + w'/t, replaced by its limit z^m w'^n at t = 0 and ``None``
    for other t inside the exclusion radius (t^n times a value that overflows).
    """
    poly_core._check_index(m, n)
    _finite(t, z, zp, w, wp)
    t, z, zp, w, wp = (complex(v) for v in (t, z, zp, w, wp))
    lhs = _lagsum_series(m, n, t, z, zp, w, wp, trunc)
    damp = cmath.exp(-t * w * zp)
    rhs_root = damp * _homogenized(m, n, z + t * w, wp + t * zp, t)
    if t == 0:
        rhs = z ** m * wp ** n
    elif _near_zero(t):
        rhs = None
    else:
        rhs = damp * t ** n * poly_core.laguerre2d(m, n, z + t * w, zp + wp / t)
    rewrites = [None] * 4
    count = trunc.max_terms_per_index
    ks = np.arange(count + 1)
    u1, u2 = z * zp, w * wp
    if not _near_zero(z, wp, u1, u2):
        log_pref = _logpow(z, m) + _logpow(wp, n)
        rewrites[0] = _exp_sum(log_pref + gammaln(ks + 1) + _logpow(-t / (z * wp), ks)
                               + log_gen_laguerre(ks, m - ks, u1)
                               + log_gen_laguerre(ks, n - ks, u2), trunc)
    if not _near_zero(zp, w, u1, u2):
        log_pref = (_logpow(-1.0, m + n) + gammaln(m + 1) + gammaln(n + 1)
                    - _logpow(zp, m) - _logpow(w, n))
        rewrites[1] = _exp_sum(log_pref + _logpow(-t * w * zp, ks) - gammaln(ks + 1)
                               + log_gen_laguerre(m, ks - m, u1)
                               + log_gen_laguerre(n, ks - n, u2), trunc)
    a, b = z + t * w, wp + t * zp
    if not _near_zero(t, a, b):
        arg = a * b / t
        rewrites[2] = complex(damp * np.exp(gammaln(n + 1) + _logpow(-t, n) + _logpow(a, m - n)
                                            + log_gen_laguerre(n, m - n, arg)))
        rewrites[3] = complex(damp * np.exp(gammaln(m + 1) + _logpow(-t, m) + _logpow(b, n - m)
                                            + log_gen_laguerre(m, n - m, arg)))
    return LagsumGF(lhs, rhs_root, rhs, *rewrites)


def gf_lagsum_diagonal(m: int, n: int, t, z, zp,
                       trunc: TruncationSpec = DEFAULT_TRUNCATION) -> LagsumDiagonalGF:
    """The (w, w') = (z, z') case; the four u-forms are compared with lhs / (z^m z'^n)."""
    poly_core._check_index(m, n)
    _finite(t, z, zp)
    t, z, zp = complex(t), complex(z), complex(zp)
    lhs = _lagsum_series(m, n, t, z, zp, z, zp, trunc)
    u = z * zp
    rhs = cmath.exp(-t * u) * _homogenized(m, n, (1 + t) * z, (1 + t) * zp, t)
    forms = [None] * 4
    if not _near_zero(z, zp, u, t, 1 + t):
        count = trunc.max_terms_per_index
        ks = np.arange(count + 1)
        forms[0] = _exp_sum(gammaln(ks + 1) + _logpow(-t / u, ks)
                            + log_gen_laguerre(ks, m - ks, u) + log_gen_laguerre(ks, n - ks, u),
                            trunc)
        log_pref = _logpow(-1.0, m + n) + gammaln(m + 1) + gammaln(n + 1) - _logpow(u, m + n)
        forms[1] = _exp_sum(log_pref + _logpow(-t * u, ks) - gammaln(ks + 1)
                            + log_gen_laguerre(m, ks - m, u) + log_gen_laguerre(n, ks - n, u),
                            trunc)
        arg = (1 + t) ** 2 * u / t
        damp = cmath.exp(-t * u)
        forms[2] = complex(damp * np.exp(gammaln(n + 1) + _logpow(-t / u, n)
                                         + _logpow(1 + t, m - n) + log_gen_laguerre(n, m - n, arg)))
        forms[3] = complex(damp * np.exp(gammaln(m + 1) + _logpow(-t / u, m)
                                         + _logpow(1 + t, n - m) + log_gen_laguerre(m, n - m, arg)))
    return LagsumDiagonalGF(lhs, rhs, *forms)


# -- resummation and coordinate decompositions -------------------------------

class ResummedGF(NamedTuple):
    lhs: complex
    rhs: complex
    rhs_bilinear: complex


class ProductDecomposition(NamedTuple):
    lhs: complex
    rhs: complex
    rhs_bilinear: complex


def gf_bilinear_resummed(s, t, z, zp, w, wp,
                         trunc: TruncationSpec = DEFAULT_TRUNCATION) -> ResummedGF:
    """Bilinear series after summing the inner index into a Laguerre polynomial.

    lhs = exp(t w z') sum_m s^m t^m L_m(X/t) with X = -(z - t w)(w' - t z');
    the factor t^m L_m(X/t) is run through its homogenized recurrence so
    t = 0 needs no special case.
    """
    _finite(s, t, z, zp, w, wp)
    _bilinear_guard(s, t)
    s, t, z, zp, w, wp = (complex(v) for v in (s, t, z, zp, w, wp))
    big_x = -(z - t * w) * (wp - t * zp)
    count = trunc.max_terms_per_index + 1
    p = np.empty(count, dtype=np.complex128)
    p[0] = 1.0
    if count > 1:
        p[1] = t - big_x
    for k in range(1, count - 1):
        p[k + 1] = (((2 * k + 1) * t - big_x) * p[k] - k * t * t * p[k - 1]) / (k + 1)
    lead = cmath.exp(t * w * zp)
    lhs = lead * sum_series(_power_weights(s, count) * p, trunc, abs(s * t))
    st = s * t
    rhs = lead * cmath.exp(s * (z - t * w) * (wp - t * zp) / (1 - st)) / (1 - st)
    return ResummedGF(lhs, rhs, bilinear_rhs(s, t, z, zp, w, wp))


def _quarter_root(s, t) -> complex:
    s, t = complex(s), complex(t)
    if s == 0 or t == 0:
        raise GuardError("coordinate change needs s != 0 and t != 0")
    return (s / t) ** 0.25


def decompose_coords_s10(s, t, z, zp, w, wp):
    """(x, x', y, y') from (z, z', w, w') with q = (s/t)^(1/4) on the principal branch."""
    q = _quarter_root(s, t)
    z, zp, w, wp = (complex(v) for v in (z, zp, w, wp))
    r2 = math.sqrt(2.0)
    return ((q * z + w / q) / r2, (zp / q + q * wp) / r2,
            (q * z - w / q) / r2, (zp / q - q * wp) / r2)


def compose_coords_s10(s, t, x, xp, y, yp):
    """Inverse of ``decompose_coords_s10``; returns (z, z', w, w')."""
    q = _quarter_root(s, t)
    x, xp, y, yp = (complex(v) for v in (x, xp, y, yp))
    r2 = math.sqrt(2.0)
    return ((x + y) / (q * r2), q * (xp + yp) / r2, q * (x - y) / r2, (xp - yp) / (q * r2))


def gf_product_decomposition_s10(s, t, z, zp, w, wp,
                                 trunc: TruncationSpec = DEFAULT_TRUNCATION) -> ProductDecomposition:
    """Bilinear generating function as a product of two diagonal series.

    In the coordinates of ``decompose_coords_s10`` it factors into series in
    rho = t q^2 (a square root of s t) over L_{m,m}(x, x') and L_{n,n}(y, y').
    """
    _finite(s, t, z, zp, w, wp)
    _bilinear_guard(s, t)
    q = _quarter_root(s, t)
    rho = complex(t) * q * q
    x, xp, y, yp = decompose_coords_s10(s, t, z, zp, w, wp)
    n = trunc.max_terms_per_index
    first = sum_series(_power_weights(rho, n + 1) * np.diagonal(_norm_laguerre(x, xp, n, n)),
                       trunc, abs(rho))
    second = sum_series(_power_weights(-rho, n + 1) * np.diagonal(_norm_laguerre(y, yp, n, n)),
                        trunc, abs(rho))
    closed = (cmath.exp(rho * x * xp / (1 + rho)) / (1 + rho)
              * cmath.exp(-rho * y * yp / (1 - rho)) / (1 - rho))
    return ProductDecomposition(first * second, closed, bilinear_rhs(s, t, z, zp, w, wp))


# -- completeness probe ------------------------------------------------------

class CompletenessProbe(NamedTuple):
    coincident: float
    displaced: float
    concentration: float
    envelope: float


def _log_abs_bilinear(s: float, z: complex, w: complex) -> float:
    """log |kernel| at s = t with z' = conj(z), w' = conj(w)."""
    zc, wc = z.conjugate(), w.conjugate()
    expo = (s * z * wc + s * w * zc - s * s * (z * zc + w * wc)) / (1 - s * s)
    return expo.real - math.log(abs(1 - s * s))


def _safe_exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


def completeness_limit_probe(eps: float, z, w=None) -> CompletenessProbe:
    """Bilinear kernel at s = t = 1 - eps/2 with conjugate second arguments.

    ``coincident`` is the kernel at w = z, ``displaced`` at ``w`` (default
    z + 1); ``concentration`` is their ratio, which grows without bound as
    eps decreases, and ``envelope`` is eps exp(-|z|^2) times the coincident
    value, which stays of order one.
    """
    eps = float(eps)
    if not 0 < eps <= 0.5:
        raise ValueError("eps must lie in (0, 0.5]")
    z = complex(z)
    w = z + 1 if w is None else complex(w)
    s = 1 - eps / 2
    log_z = _log_abs_bilinear(s, z, z)
    log_w = _log_abs_bilinear(s, z, w)
    return CompletenessProbe(_safe_exp(log_z), _safe_exp(log_w), _safe_exp(log_z - log_w),
                             _safe_exp(log_z + math.log(eps) - abs(z) ** 2))
