"""Row reduction over GF(p) on int64 arrays.

Two interchangeable backends: a numba-compiled loop and a vectorized numpy
fallback.  The numba path is used when numba imports and the environment
variable ``SIGFLOW_NUMBA`` is not set to ``0``/``false``/``off``.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def _env_wants_numba() -> bool:
    return os.environ.get("SIGFLOW_NUMBA", "1").strip().lower() not in ("0", "false", "off", "no")


@njit(cache=True)
def _powmod(a, e, p):
    result = 1
    a = a % p
    while e > 0:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result


@njit(cache=True)
def rref_mod_p_numba(a, p):
    """In-place RREF of ``a`` (int64, entries in [0, p)); returns pivots."""
    rows, cols = a.shape
    piv = np.empty(min(rows, cols), np.int64)
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        sel = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            for j in range(cols):
                t = a[r, j]
                a[r, j] = a[sel, j]
                a[sel, j] = t
        inv = _powmod(a[r, c], p - 2, p)
        for j in range(c, cols):
            a[r, j] = a[r, j] * inv % p
        for i in range(rows):
            if i != r:
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        a[i, j] = (a[i, j] - f * a[r, j] % p + p) % p
        piv[r] = c
        r += 1
    return piv[:r]


def rref_mod_p_numpy(a: np.ndarray, p: int) -> np.ndarray:
    """Vectorized fallback with the same contract as the numba kernel."""
    rows, cols = a.shape
    piv = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        sel = r + int(nz[0])
        if sel != r:
            a[[r, sel]] = a[[sel, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        f = a[:, c].copy()
        f[r] = 0
        if f.any():
            a[:, c:] = (a[:, c:] - np.outer(f, a[r, c:]) % p) % p
        piv.append(c)
        r += 1
    return np.asarray(piv, dtype=np.int64)


_backend = "numba" if (HAVE_NUMBA and _env_wants_numba()) else "numpy"


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(name)
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


def rref_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    if _backend == "numba":
        return rref_mod_p_numba(a, p)
    return rref_mod_p_numpy(a, p)
