"""Regenerate the frozen reference values used in test_genfun.py.

Partial sums are taken in 30-digit arithmetic from the explicit finite
sums for Laguerre 2D polynomials and mpmath's own Hermite and Laguerre
functions, so nothing here touches the package under test.

    python3 tests/oracles/genfun_oracles.py
"""

import mpmath as mp

mp.mp.dps = 30


def lag2d(m, n, z, zp):
    return mp.fsum((-1) ** j * mp.factorial(m) * mp.factorial(n)
                   / (mp.factorial(j) * mp.factorial(m - j) * mp.factorial(n - j))
                   * z ** (m - j) * zp ** (n - j) for j in range(min(m, n) + 1))


def herm(n, x):
    return mp.hermite(n, x)


def fmt(x):
    x = mp.mpc(x)
    return f"complex({mp.nstr(x.real, 17)}, {mp.nstr(x.imag, 17)})"


def main():
    c = mp.mpc
    out = {}
    t, x = c(0, 0.5), c(2)
    out["hermite_t05i_x2"] = mp.fsum(t ** n / mp.factorial(n) * herm(n, x) for n in range(81))

    t, x, y = c(0.6), c(0.8), c(-1.2)
    out["mehler_t06"] = mp.fsum(t ** n / (2 ** n * mp.factorial(n)) * herm(n, x) * herm(n, y)
                                for n in range(121))

    t, x = c(0.4), c(1.3)
    out["even_t04"] = mp.fsum((-1) ** k / mp.factorial(k) * (t / 2) ** (2 * k) * herm(2 * k, x)
                              for k in range(80))
    out["odd_t04"] = mp.fsum((-1) ** k / mp.factorial(k) * (t / 2) ** (2 * k + 1)
                             * herm(2 * k + 1, x) for k in range(80))
    out["cosh_t04"] = mp.fsum(t ** (2 * k) / mp.factorial(2 * k) * herm(2 * k, x) for k in range(60))
    out["sinh_t04"] = mp.fsum(t ** (2 * k + 1) / mp.factorial(2 * k + 1) * herm(2 * k + 1, x)
                              for k in range(60))

    out["factherm_6"] = herm(6, c(0.9)) * herm(6, c(-0.3))

    s, t, z, zp = c(0.5), c(0, -0.3), c(1, 1), c(0.2)
    out["simple_05"] = mp.fsum(s ** m * t ** n / (mp.factorial(m) * mp.factorial(n)) * lag2d(m, n, z, zp)
                               for m in range(50) for n in range(50))

    s, t = c(0.4), c(0.5)
    z, zp, w, wp = c(1, 0.5), c(0.3), c(-0.2), c(0, 0.8)
    out["bilinear_04_05"] = mp.fsum(
        s ** m * t ** n / (mp.factorial(m) * mp.factorial(n)) * lag2d(m, n, z, zp) * lag2d(m, n, wp, w)
        for m in range(81) for n in range(81))

    s, t, x, y, u, v = c(0.5), c(-0.4), c(1), c(0.2), c(-0.7), c(0.9)
    left = mp.fsum(s ** m / (2 ** m * mp.factorial(m)) * herm(m, x) * herm(m, u) for m in range(121))
    right = mp.fsum(t ** n / (2 ** n * mp.factorial(n)) * herm(n, y) * herm(n, v) for n in range(121))
    out["hermite2d_05"] = left * right

    s, t, z, zp, u, v = c(0.4), c(0.35), c(0, 0.9), c(0.4), c(-0.6), c(1.1)
    out["mixed_04"] = mp.fsum(
        s ** m * t ** n / (mp.sqrt(2) ** (m + n) * mp.factorial(m) * mp.factorial(n))
        * lag2d(m, n, z, zp) * herm(m, u) * herm(n, v) for m in range(60) for n in range(60))

    s, t, z, zp = c(0.7), c(0, 0.5), c(1.2), c(-0.4)
    out["even_index_07"] = mp.fsum(
        (-1) ** (k + l) * s ** (2 * k) * t ** (2 * l)
        / (mp.factorial(k) * mp.factorial(l) * 2 ** (k + l)) * lag2d(2 * k, 2 * l, z, zp)
        for k in range(40) for l in range(40))

    t, z, zp, w, wp = c(0.3), c(1), c(0, 0.5), c(-0.4), c(0.7)
    out["lagsum_2_1"] = mp.fsum((-t) ** k / mp.factorial(k) * lag2d(2, k, z, zp) * lag2d(k, 1, w, wp)
                                for k in range(101))

    for key, val in out.items():
        print(f'    "{key}": {fmt(val)},')


if __name__ == "__main__":
    main()
