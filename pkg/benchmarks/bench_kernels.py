"""Compare the compiled and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cubeineq import kernels


def _best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    rng = np.random.default_rng(0)
    a = rng.random(20_000)
    b = rng.random(20_000)
    d = (a - b) ** 2
    e = 4.0 * a * b
    yield "cospow_moment 20k points, s=1.5", lambda k: k.cospow_moment(d, e, 1.5, 0, 1e-13, 0.0)
    yield "cospow_moment 20k points, s=5, m=2", lambda k: k.cospow_moment(d, e, 5.0, 2, 1e-13, 0.0)
    yield (
        "grid minimum 2101 x 901",
        lambda k: k.dq_phi_tilde_grid_min(1.0, 1.0 / 700.0, 2101, 0.0, 1.0 / 300.0, 901),
    )


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backs = kernels.backends()
    print(f"default backend: {kernels.BACKEND}; available: {', '.join(backs)}")
    header = f"{'case':40s}" + "".join(f"{name:>12s}" for name in backs) + f"{'speedup':>10s}"
    print(header)
    for label, fn in cases():
        times = {}
        results = {}
        for name, mod in backs.items():
            times[name], results[name] = _best_of(lambda: fn(mod), args.repeat)
        row = f"{label:40s}" + "".join(f"{times[n]:11.4f}s" for n in backs)
        if "compiled" in times:
            row += f"{times['python'] / times['compiled']:9.1f}x"
            ref, got = results["python"], results["compiled"]
            diff = np.max(np.abs(np.asarray(ref[0]) - np.asarray(got[0])))
            row += f"  max |diff| {diff:.1e}"
        print(row)


if __name__ == "__main__":
    main()
