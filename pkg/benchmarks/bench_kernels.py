"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 20]
"""

import argparse
import timeit

import numpy as np

from grasspack import _kernels_py as py
from grasspack import kernels

CASES = [(3, 1, 20), (4, 2, 18), (8, 4, 70), (16, 4, 100)]


def bench(impl, Y, G, repeat):
    calls = {
        "chordal_sq_matrix": lambda: impl.chordal_sq_matrix(Y),
        "softmin_chordal": lambda: impl.softmin_chordal(Y, 100.0),
        "project_tangent": lambda: impl.project_tangent(Y, G),
        "orthonormalize_rows": lambda: impl.orthonormalize_rows(Y + 0.01 * G),
    }
    out = {}
    for name, fn in calls.items():
        n = max(1, int(0.2 / max(timeit.timeit(fn, number=1), 1e-7)))
        out[name] = min(timeit.repeat(fn, number=n, repeat=repeat)) / n
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.compiled_impl is None:
        print("compiled kernels not built; only the numpy fallback is available")
    rng = np.random.default_rng(0)
    print(f"{'case':<14}{'kernel':<22}{'numpy us':>12}{'cython us':>12}{'speedup':>10}")
    for m, n, N in CASES:
        Y = py.orthonormalize_rows(rng.standard_normal((N, n, m)))
        G = rng.standard_normal(Y.shape)
        base = bench(py, Y, G, args.repeat)
        comp = bench(kernels.compiled_impl, Y, G, args.repeat) if kernels.compiled_impl else {}
        for name, t in base.items():
            c = comp.get(name)
            tail = f"{c * 1e6:>12.1f}{t / c:>9.1f}x" if c else f"{'-':>12}{'-':>10}"
            print(f"G({m},{n}) N={N:<4}{name:<22}{t * 1e6:>12.1f}{tail}")


if __name__ == "__main__":
    main()
