"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_backends.py [--repeat N]

Both backends are loaded in the same process; the numba kernels are warmed
up before timing so compilation is excluded. Prints one line per workload
with the best-of-N wall time for each backend and the speedup.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from multiml._backend import BACKENDS, get_kernels
from multiml._dd import dd_log
from multiml.gamma import gamma_minimum
from multiml.multinomial import _logfact, _logfact_dd


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def workloads():
    x0 = gamma_minimum().x0
    xs = np.linspace(0.01, 150.0, 200_000)
    mus = np.array([0.35, 0.8, 1.3])
    z = np.array([0.9, -0.6, 0.4])
    lnz = np.log(np.abs(z))
    pairs = np.array([dd_log(float(v), 0.0) for v in np.abs(z)])
    plain, dd = _logfact(40), _logfact_dd(40)
    return {
        "lgamma_array 2e5": lambda k: k.lgamma_array(xs),
        "classic_series x=4": lambda k: k.classic_series(0.6, 1.1, 4.0, 1e-14, 10000, x0, 0.0, True, False),
        "classic_series x=-4 dd": lambda k: k.classic_series(0.6, 1.1, -4.0, 1e-14, 10000, x0, 0.0, True, True),
        "partial_sum n=3 k<=40": lambda k: k.partial_sum(
            0, 40, lnz, np.zeros(3), z < 0, mus, 0.9, plain[0], plain[1], False
        ),
        "partial_sum n=3 k<=40 dd": lambda k: k.partial_sum(
            0, 40, pairs[:, 0].copy(), pairs[:, 1].copy(), z < 0, mus, 0.9, dd[0], dd[1], True
        ),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    kernels = {name: get_kernels(name) for name in BACKENDS}
    if len(kernels) < 2:
        print("numba unavailable; timing the numpy backend only")
    print(f"{'workload':28s}" + "".join(f"{name:>12s}" for name in kernels) + "     speedup")
    for label, work in workloads().items():
        t = {name: best_of(lambda: work(k), args.repeat) for name, k in kernels.items()}
        row = f"{label:28s}" + "".join(f"{t[name] * 1e3:10.3f}ms" for name in kernels)
        if len(t) == 2:
            row += f"  {t['numpy'] / t['numba']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
