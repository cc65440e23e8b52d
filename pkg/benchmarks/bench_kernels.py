"""Time the grid winding scan: compiled extension against the numpy fallback.

    python3 benchmarks/bench_kernels.py --resolution 1e-3 --repeat 3
"""

from __future__ import annotations

import argparse
import importlib
import math
import time

import numpy as np

from coxgrow import _kernels_py
from coxgrow.polyarith import parse_poly


def _time(fn, args, repeat):
    best = math.inf
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, tuple(result)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--poly", default="3t^5+2t^3+t^2+4t-1")
    ap.add_argument("--radius", type=float, default=0.8)
    ap.add_argument("--resolution", type=float, default=1e-3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    p = parse_poly(args.poly)
    re = np.array([float(c) for c in p.coeffs])
    h = args.resolution
    n = int(math.ceil(2 * args.radius / h)) + 2
    start = -args.radius - 0.309 * h
    call = (re, np.zeros_like(re), start, start, h, n, n, args.radius)
    print(f"polynomial {args.poly}, radius {args.radius}, grid {n} x {n} = {n * n:,} points")

    t_np, r_np = _time(_kernels_py.grid_winding, call, args.repeat)
    print(f"numpy     {t_np:8.3f}s  (winding, root cells, ambiguous, cells) = {r_np}")
    try:
        compiled = importlib.import_module("coxgrow._kernels")
    except ImportError:
        print("compiled  not built (python3 setup.py build_ext --inplace)")
        return
    t_c, r_c = _time(compiled.grid_winding, call, args.repeat)
    print(f"compiled  {t_c:8.3f}s  (winding, root cells, ambiguous, cells) = {r_c}")
    print(f"speed-up  {t_np / t_c:8.1f}x, results {'identical' if r_np == r_c else 'DIFFER'}")


if __name__ == "__main__":
    main()
