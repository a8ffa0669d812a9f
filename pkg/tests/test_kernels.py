import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sigflow.exactalg import GF, Matrix, kernels


@pytest.fixture
def numpy_backend():
    old = kernels.backend()
    kernels.set_backend("numpy")
    yield
    kernels.set_backend(old)


shapes = st.tuples(st.integers(1, 8), st.integers(1, 10))


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
@given(shapes, st.sampled_from([2, 3, 5, 7, 65521, 2147483647]), st.integers(0, 2**32 - 1))
def test_backends_agree(shape, p, seed):
    a = np.random.default_rng(seed).integers(0, p, size=shape, dtype=np.int64)
    a1, a2 = a.copy(), a.copy()
    p1 = kernels.rref_mod_p_numba(a1, p)
    p2 = kernels.rref_mod_p_numpy(a2, p)
    assert np.array_equal(a1, a2) and np.array_equal(p1, p2)


def test_large_prime_no_overflow(numpy_backend):
    p = 2147483647
    M = Matrix.from_rows(GF(p), [[p - 1, p - 2], [p - 3, p - 1]])
    R, rk, _ = M.rref()
    assert rk == 2 and R == Matrix.identity(GF(p), 2)


def test_matrix_rref_same_on_both_backends():
    M = Matrix.from_rows(GF(7), [[3, 1, 4, 1], [5, 2, 6, 5], [1, 6, 3, 2]])
    got = M.rref()
    old = kernels.backend()
    try:
        for name in ("numpy",) + (("numba",) if kernels.HAVE_NUMBA else ()):
            kernels.set_backend(name)
            assert M.rref() == got
    finally:
        kernels.set_backend(old)


@pytest.mark.parametrize("value,expected", [("0", "numpy"), ("off", "numpy"), ("1", None)])
def test_env_flag_selects_backend(value, expected):
    env = dict(os.environ, SIGFLOW_NUMBA=value)
    out = subprocess.run(
        [sys.executable, "-c", "from sigflow.exactalg import kernels; print(kernels.backend())"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout.strip()
    assert out == (expected or ("numba" if kernels.HAVE_NUMBA else "numpy"))
