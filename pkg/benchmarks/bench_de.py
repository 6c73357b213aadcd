"""Compiled vs pure-Python DE kernels.

Usage: python benchmarks/bench_de.py [--repeat N]

Times the single-position fixed point (GLDPC), a full coupled run and a
windowed run at GF(256), n=255, t=4 with each backend and checks that the
two produce the same state.
"""
import argparse
import time

import numpy as np

from hdair.de import ComponentCodeSpec, DeConfig
from hdair.de import _kernels_py
from hdair.de import evolution

try:
    from hdair.de import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

SPEC = ComponentCodeSpec(256, 255, 4)
CASES = {
    "gldpc p=0.025": lambda: evolution.de_gldpc(SPEC, 0.025)[0],
    "sc L=50 w=2 p=0.029": lambda: evolution.de_scgldpc(SPEC, 0.029, DeConfig(W="full")).x,
    "window W=7 x4 p=0.019": lambda: evolution.de_window(SPEC, 0.019, DeConfig(W=7, max_iters=4)).x,
    "threshold W=7": lambda: np.array([evolution.threshold(SPEC, DeConfig(W=7, max_iters=4)).p_star]),
}


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, np.atleast_1d(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _kernels_py)] + ([("cython", _kernels_c)] if _kernels_c else [])
    evolution._prepared(SPEC, "miscorrection_aware")  # warm the table cache
    print(f"{'case':26s}" + "".join(f"{name:>12s}" for name, _ in backends) + "     speedup  max|diff|")
    for label, fn in CASES.items():
        times, outs = [], []
        for _, mod in backends:
            evolution.kernels = mod
            t, out = timed(fn, args.repeat)
            times.append(t)
            outs.append(out)
        row = f"{label:26s}" + "".join(f"{t * 1e3:10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:9.2f}x  {np.max(np.abs(outs[0] - outs[1])):.1e}"
        print(row)
    if _kernels_c is None:
        print("compiled extension not available; only the fallback was timed")


if __name__ == "__main__":
    main()
