"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""

import time
from collections import defaultdict

from laguerre2d import exact_id as ex
from laguerre2d import harness
from laguerre2d.harness import SuiteConfig, execute, render

SEED = 42
DRAWS = 200

GENFUN_SERIES = ("hermite_gf", "mehler", "even_odd_hermite", "factherm", "simple_laguerre2d",
                 "single_index", "bilinear_laguerre2d", "bilinear_genlaguerre", "usual_laguerre",
                 "hermite2d_product", "hermite2d_even_product", "mixed", "even_index",
                 "even_index_sigma_tau", "even_index_genlaguerre")
GENFUN_FACTORIZED = ("mehler_factorized", "bilinear_factorized", "even_index_factorized")
OP_IDENTITIES = ("op_identity_1d_monomial", "op_identity_1d_hermite", "op_identity_1d_gaussian",
                 "op_identity_1d_constant", "op_identity_1d_swapped", "op_identity_2d_monomial",
                 "op_identity_2d_laguerre", "op_identity_2d_gaussian", "op_identity_2d_sigma_tau",
                 "op_identity_2d_swapped", "sigma_tau_gaussian")
SEMIGROUP = ("width_addition_1d", "width_addition_2d", "semigroup_1d", "semigroup_2d")
POLY_CORE = ("hermite_routes", "hermite_cross_family", "laguerre2d_routes", "gen_laguerre_embedding",
             "laguerre2d_symmetry", "laguerre2d_scaling", "parity", "hermite2d", "laguerre2d_function")


def _verdict(capsys, number: int, title: str, checks: dict, detail: str = "") -> None:
    failed = [name for name, ok in checks.items() if not ok]
    status = "PASS" if not failed else "FAIL"
    line = f"criterion {number} [{title}]: {status}"
    if detail:
        line += f" ({detail})"
    if failed:
        line += " failed: " + ", ".join(failed)
    with capsys.disabled():
        print("\n" + line)
    assert not failed, line


def _run(suites, draws=DRAWS):
    start = time.perf_counter()
    reports = execute(SuiteConfig(suites=tuple(suites), seed=SEED, draws=draws))
    return reports, time.perf_counter() - start


def _by_suite(reports):
    out = defaultdict(list)
    for r in reports:
        out[r.suite].append(r)
    return out


def _max_err(rows):
    return max((r.rel_err for r in rows), default=0.0)


def _param(r, name):
    return dict(r.params)[name]


def _parameter_sets(rows):
    """Group rows by their parameters without the sample point."""
    sets = defaultdict(int)
    for r in rows:
        sets[tuple(p for p in r.params if p[0] != "at")] += 1
    return sets


def test_criterion_1_exact_identities(capsys):
    start = time.perf_counter()
    checks = {
        "monomial_inversion_2d m+n<=16": all(ex.check_monomial_inversion_2d(m, k - m)
                                             for k in range(17) for m in range(k + 1)),
        "hermite_inversion n<=40": all(ex.check_hermite_inversion(n) for n in range(41)),
        "reordering k,l<=12": all(ex.check_reordering(k, l) for k in range(13) for l in range(13)),
        "laguerre_operator_identity m,n<=8": all(ex.check_laguerre_operator_identity(m, n)
                                                 for m in range(9) for n in range(9)),
        "specialized_jacobi0 n<=30": all(ex.check_specialized_jacobi0(n) for n in range(31)),
        "sum_identity m,n<=12": all(lhs == rhs for lhs, rhs in
                                    (ex.sum_identity(m, n) for m in range(13) for n in range(13))),
    }
    elapsed = time.perf_counter() - start
    checks["runtime < 30 s"] = elapsed < 30
    _verdict(capsys, 1, "exact identities", checks, f"{elapsed:.1f} s")


def test_criterion_2_generating_functions(capsys):
    reports, elapsed = _run(GENFUN_SERIES + GENFUN_FACTORIZED)
    suites = _by_suite(reports)
    checks = {}
    for sid in GENFUN_SERIES:
        rows = suites[sid]
        checks[f"{sid} <= 1e-9"] = bool(rows) and all(r.passed and r.rel_err <= 1e-9 for r in rows)
    for sid in GENFUN_FACTORIZED:
        rows = suites[sid]
        checks[f"{sid} <= 1e-11"] = len(rows) >= DRAWS and _max_err(rows) <= 1e-11
    checks["mehler draws"] = len(suites["mehler"]) == DRAWS
    checks["mehler |t| <= 0.8"] = all(abs(_param(r, "t")) <= 0.8 for r in suites["mehler"])
    checks["bilinear |st| <= 0.6"] = all(abs(_param(r, "s") * _param(r, "t")) <= 0.6
                                         for sid in ("bilinear_laguerre2d", "even_index", "even_index_genlaguerre")
                                         for r in suites[sid])
    checks["hermite2d |s|,|t| <= 0.8"] = all(max(abs(_param(r, "s")), abs(_param(r, "t"))) <= 0.8
                                             for r in suites["hermite2d_product"])
    checks["arguments |.| <= 2"] = all(abs(_param(r, k)) <= 2 for r in suites["bilinear_laguerre2d"]
                                       for k in ("z", "zp", "w", "wp"))
    checks["runtime < 2 min"] = elapsed < 120
    _verdict(capsys, 2, "generating functions", checks, f"{len(reports)} rows, {elapsed:.1f} s")


def test_criterion_3_single_sums(capsys):
    reports, elapsed = _run(("lagsum", "bilinear_resummed"))
    suites = _by_suite(reports)
    per_pair = defaultdict(set)
    for r in suites["lagsum"]:
        per_pair[(_param(r, "m"), _param(r, "n"))].add(_param(r, "t"))
    resummed = {_param(r, "s") for r in suites["bilinear_resummed"]}
    checks = {
        "all pairs m,n <= 6": set(per_pair) == {(m, n) for m in range(7) for n in range(7)},
        ">= 50 draws per pair": min(len(v) for v in per_pair.values()) >= 50,
        "single sums <= 1e-9": all(r.passed for r in suites["lagsum"]),
        "resummed >= 50 draws": len(resummed) >= 50,
        "resummed <= 1e-10": _max_err(suites["bilinear_resummed"]) <= 1e-10,
    }
    _verdict(capsys, 3, "single-sum formulas", checks, f"{elapsed:.1f} s")


def test_criterion_4_decomposition(capsys):
    reports, elapsed = _run(("product_decomposition", "coordinate_round_trip"))
    suites = _by_suite(reports)
    draws = {_param(r, "s") for r in suites["product_decomposition"]}
    checks = {
        ">= 100 draws": len(draws) >= 100,
        "product of single sums <= 1e-10": _max_err(suites["product_decomposition"]) <= 1e-10,
        "round trip <= 1e-12": bool(suites["coordinate_round_trip"])
        and _max_err(suites["coordinate_round_trip"]) <= 1e-12,
    }
    _verdict(capsys, 4, "coordinate decomposition", checks, f"{elapsed:.1f} s")


def test_criterion_5_disentanglement_and_operators(capsys):
    suites_run = ("disentangle_unimodular", "disentangle_specializations") + OP_IDENTITIES + SEMIGROUP
    reports, elapsed = _run(suites_run)
    suites = _by_suite(reports)
    checks = {
        "det = 1 on >= 500 draws": len(suites["disentangle_unimodular"]) >= 500
        and _max_err(suites["disentangle_unimodular"]) <= 1e-12,
        "specializations exact": bool(suites["disentangle_specializations"])
        and all(r.passed and r.abs_err == 0 for r in suites["disentangle_specializations"]),
    }
    for sid in OP_IDENTITIES:
        sets = _parameter_sets(suites[sid])
        checks[f"{sid} >= 20 sets x 9 points, <= 1e-6"] = (
            len(sets) >= 20 and min(sets.values()) >= 9 and _max_err(suites[sid]) <= 1e-6)
    for sid in SEMIGROUP:
        checks[f"{sid} <= 1e-8"] = bool(suites[sid]) and _max_err(suites[sid]) <= 1e-8
    checks["runtime < 3 min"] = elapsed < 180
    _verdict(capsys, 5, "disentanglement and operator identities", checks, f"{elapsed:.1f} s")


def test_criterion_6_orthonormality(capsys):
    reports, elapsed = _run(("orthonormality",))
    diag = [r for r in reports if (_param(r, "k"), _param(r, "l")) == (_param(r, "m"), _param(r, "n"))]
    off = [r for r in reports if r not in diag]
    checks = {
        "all index pairs <= 4": len(reports) == 25 * 25,
        "diagonal within 1e-6 of 1": all(abs(r.lhs - 1) <= 1e-6 for r in diag),
        "off-diagonal within 1e-6 of 0": all(abs(r.lhs) <= 1e-6 for r in off),
    }
    _verdict(capsys, 6, "orthonormality", checks, f"{elapsed:.1f} s")


def test_criterion_7_poly_core_invariants(capsys):
    reports, elapsed = _run(POLY_CORE)
    suites = _by_suite(reports)
    checks = {f"{sid} <= 1e-10": bool(suites[sid]) and _max_err(suites[sid]) <= 1e-10 for sid in POLY_CORE}
    _verdict(capsys, 7, "poly_core routes and invariants", checks, f"{elapsed:.1f} s")


def test_criterion_8_determinism(capsys, tmp_path):
    bodies, statuses, counts, worst = [], [], [], 0.0
    start = time.perf_counter()
    for name in ("first", "second"):
        path = tmp_path / f"{name}.csv"
        status, reports = harness.run(SuiteConfig(seed=SEED, fmt="csv", out=str(path)))
        bodies.append(path.read_bytes())
        statuses.append(status)
        counts.append(len(reports))
        worst = max(worst, harness.overall(reports).max_rel_err)
        text = render(reports, "text")
    elapsed = time.perf_counter() - start
    checks = {
        "byte-identical bodies": bodies[0] == bodies[1],
        "exit status 0": statuses == [0, 0],
        ">= 6000 rows": min(counts) >= 6000,
        "max rel_err <= 1e-6": worst <= 1e-6,
        "no timing in body": "elapsed" not in text,
    }
    _verdict(capsys, 8, "determinism", checks, f"{counts[0]} rows, {elapsed:.1f} s")
