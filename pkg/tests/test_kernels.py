"""Compiled and fallback sieve kernels must agree exactly."""

import os
import subprocess
import sys

import numpy as np
import pytest

from oracles import big_omega
from ultralevels import _kernels_py as py_kernels
from ultralevels._backend import NAME

try:
    from ultralevels import _kernels as cy_kernels
except ImportError:  # extension not built in this environment
    cy_kernels = None

BACKENDS = [py_kernels] + ([cy_kernels] if cy_kernels is not None else [])


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_tables_match_oracle(k):
    n = 3000
    spf = np.asarray(k.spf_table(n))
    for m in range(2, n + 1):
        p = int(spf[m])
        assert m % p == 0 and all(m % q for q in range(2, p))
    om = np.asarray(k.omega_table(n))
    assert om[1:].tolist() == [big_omega(m) for m in range(1, n + 1)]


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@pytest.mark.parametrize("lo, hi", [(1, 2), (1, 1000), (999_000, 1_001_000), (2**32 - 40, 2**32 + 40)])
def test_segment_matches_oracle(k, lo, hi):
    base = py_kernels._base_primes(hi)
    got = np.asarray(k.omega_segment(lo, hi, base)).tolist()
    assert got == [big_omega(m) for m in range(lo, hi)]


@pytest.mark.skipif(cy_kernels is None, reason="compiled kernels not built")
def test_backends_agree_on_large_segment():
    lo, hi = 10**9, 10**9 + 200_000
    base = py_kernels._base_primes(hi)
    a = np.asarray(py_kernels.omega_segment(lo, hi, base))
    b = np.asarray(cy_kernels.omega_segment(lo, hi, base))
    assert np.array_equal(a, b)


def test_backend_selection_respects_env():
    code = "from ultralevels import BACKEND; print(BACKEND)"
    env = dict(os.environ, ULTRALEVELS_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert NAME in ("python", "cython")
