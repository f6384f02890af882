"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--nmax 200]
"""

import argparse
import timeit

import numpy as np

from laguerre2d import _pykernels

try:
    from laguerre2d import _ckernels
except ImportError:
    _ckernels = None


def cases(nmax: int, points: int):
    rng = np.random.default_rng(0)
    zs = rng.normal(size=points) + 1j * rng.normal(size=points)
    xs = rng.uniform(-3, 3, points)
    half = nmax // 4
    return {
        f"hermite_table n={nmax}": lambda k: k.hermite_table(0.7 + 0.2j, nmax),
        f"hermite_points n={nmax} x{points}": lambda k: k.hermite_points(nmax, xs),
        f"laguerre2d_table {half}x{half}": lambda k: k.laguerre2d_table(0.4 + 0.3j, 0.4 - 0.3j, half, half),
        f"laguerre2d_points ({half},{half}) x{points}":
            lambda k: k.laguerre2d_points(half, half, zs, zs.conj()),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--nmax", type=int, default=200)
    parser.add_argument("--points", type=int, default=2000)
    args = parser.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'kernel':40s}" + "".join(f"{name:>14s}" for name, _ in backends) + ("   speedup" if _ckernels else ""))
    for label, fn in cases(args.nmax, args.points).items():
        times = []
        for _, module in backends:
            timer = timeit.Timer(lambda: fn(module))
            loops, _ = timer.autorange()
            times.append(min(timer.repeat(args.repeat, loops)) / loops)
        row = f"{label:40s}" + "".join(f"{t * 1e6:12.1f}us" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:7.1f}x"
        print(row)
    if _ckernels is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
