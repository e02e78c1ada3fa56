"""Time each hot kernel in its numba and pure-numpy versions.

    python benchmarks/bench_kernels.py [--repeat 5]

Both versions live side by side in phasekit._kernels, so one process can
time both regardless of PHASEKIT_USE_NUMBA.  JIT compilation is triggered
once before timing and reported separately.
"""

import argparse
import time

import numpy as np

from phasekit import _kernels as K
from phasekit.fracdft import _lmax
from phasekit.mub import generate_mub_family


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((96, 96)) + 1j * rng.standard_normal((96, 96))
    bases, _ = generate_mub_family(31)
    stack = np.ascontiguousarray(np.array([b.columns for b in bases]))
    target = 1 / np.sqrt(31)
    return [
        ("gauss_sum w=200001", "gauss_sum", (3, 5, 200001)),
        ("periodized_hermite d=64 nmax=255", "periodized_hermite", (64, 255, _lmax(64, 255))),
        ("gauss_jordan_inverse 96x96", "gauss_jordan_inverse", (a, 1e-13)),
        ("lu_det 96x96", "lu_det", (a,)),
        ("cross_overlap_scan d=31 (32 bases)", "cross_overlap_scan", (stack, target)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if not K.HAVE_NUMBA:
        print("numba not importable; only the numpy versions exist")
    print(f"default backend: {K.BACKEND}")
    print(f"{'kernel':38s} {'compile':>9s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for label, name, argv in cases():
        jit = getattr(K, name + "_jit")
        ref = getattr(K, name + "_numpy")
        t0 = time.perf_counter()
        jit(*argv)
        compile_s = time.perf_counter() - t0
        t_jit = best_of(lambda: jit(*argv), args.repeat)
        t_np = best_of(lambda: ref(*argv), args.repeat)
        print(f"{label:38s} {compile_s:8.3f}s {t_jit * 1e3:8.2f}ms {t_np * 1e3:8.2f}ms {t_np / t_jit:7.1f}x")


if __name__ == "__main__":
    main()
