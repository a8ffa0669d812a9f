"""Compare the numba and numpy GF(p) row-reduction backends.

    python3 benchmarks/bench_kernels.py [--p 1000003] [--reps 20]

Both backends run on the same random matrices; results are checked for
equality before timings are reported.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from sigflow.exactalg import kernels


def _time(fn, a: np.ndarray, p: int, reps: int) -> tuple[float, np.ndarray, np.ndarray]:
    best = float("inf")
    out = piv = None
    for _ in range(reps):
        work = a.copy()
        t0 = time.perf_counter()
        piv = fn(work, p)
        best = min(best, time.perf_counter() - t0)
        out = work
    return best, out, piv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--p", type=int, default=1_000_003)
    ap.add_argument("--reps", type=int, default=20)
    ap.add_argument("--sizes", default="4x8,16x32,64x128,256x512")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; only the numpy backend is available")
    rng = np.random.default_rng(args.seed)
    # warm-up compiles the numba kernel outside the timed region
    kernels.rref_mod_p_numba(np.ones((2, 2), dtype=np.int64), args.p)
    print(f"{'shape':>10} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for size in args.sizes.split(","):
        r, c = (int(x) for x in size.split("x"))
        a = rng.integers(0, args.p, size=(r, c), dtype=np.int64)
        tn, rn, pn = _time(kernels.rref_mod_p_numba, a, args.p, args.reps)
        tp, rp, pp = _time(kernels.rref_mod_p_numpy, a, args.p, args.reps)
        if not (np.array_equal(rn, rp) and np.array_equal(pn, pp)):
            raise SystemExit(f"backends disagree on {size}")
        print(f"{size:>10} {tn * 1e3:10.3f} {tp * 1e3:10.3f} {tp / tn:8.1f}x")


if __name__ == "__main__":
    main()
